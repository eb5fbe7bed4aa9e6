#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace planscript {

enum class TaskKind { Gqa, Nlvr2, Vqav2, Mme, Video };

std::string_view task_kind_name(TaskKind kind);
std::optional<TaskKind> parse_task_kind(std::string_view name);

struct ArgSpec {
    enum class Kind { Var, Str, Num, Bool };
    Kind kind;
    bool required = true;
};

struct ModuleSignature {
    enum class Output { Boxes, Image, Text, Number, Boolean, Any };
    std::string name;
    std::map<std::string, ArgSpec> args;
    Output output = Output::Any;
};

class ModuleRegistry {
public:
    static ModuleRegistry for_task(TaskKind kind);

    bool contains(std::string_view name) const;
    const ModuleSignature* find(std::string_view name) const;
    std::vector<std::string> module_names() const;

private:
    std::map<std::string, ModuleSignature, std::less<>> modules_;
};

}  // namespace planscript
