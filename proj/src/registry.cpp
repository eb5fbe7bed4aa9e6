#include "planscript/registry.hpp"

namespace planscript {

std::string_view task_kind_name(TaskKind kind) {
    switch (kind) {
        case TaskKind::Gqa: return "gqa";
        case TaskKind::Nlvr2: return "nlvr2";
        case TaskKind::Vqav2: return "vqav2";
        case TaskKind::Mme: return "mme";
        case TaskKind::Video: return "video";
    }
    return "?";
}

std::optional<TaskKind> parse_task_kind(std::string_view name) {
    if (name == "gqa") return TaskKind::Gqa;
    if (name == "nlvr2") return TaskKind::Nlvr2;
    if (name == "vqav2") return TaskKind::Vqav2;
    if (name == "mme") return TaskKind::Mme;
    if (name == "video") return TaskKind::Video;
    return std::nullopt;
}

namespace {

using Output = ModuleSignature::Output;
using AK = ArgSpec::Kind;

ModuleSignature sig(std::string name, Output out,
                    std::initializer_list<std::pair<const char*, ArgSpec>> args) {
    ModuleSignature s;
    s.name = std::move(name);
    s.output = out;
    for (const auto& [k, v] : args) s.args.emplace(k, v);
    return s;
}

}  // namespace

ModuleRegistry ModuleRegistry::for_task(TaskKind kind) {
    ModuleRegistry reg;
    auto add = [&reg](ModuleSignature s) { reg.modules_.emplace(s.name, std::move(s)); };

    auto vqa = sig("VQA", Output::Text, {{"image", {AK::Var, true}}, {"question", {AK::Str, true}}});
    auto eval = sig("EVAL", Output::Any, {{"expr", {AK::Str, true}}});
    auto result = sig("RESULT", Output::Text, {{"var", {AK::Var, true}}});

    if (kind == TaskKind::Nlvr2) {
        add(vqa);
        add(eval);
        add(result);
        return reg;
    }
    if (kind == TaskKind::Video) {
        add(vqa);
        add(eval);
        add(result);
        add(sig("SELECT", Output::Text,
                {{"context", {AK::Var, true}}, {"question", {AK::Str, true}}, {"choices", {AK::Str, true}}}));
        add(sig("GET", Output::Any, {{"array", {AK::Var, true}}, {"index", {AK::Num, true}}}));
        return reg;
    }

    // gqa / vqav2 / mme share the full image module set
    add(sig("LOC", Output::Boxes,
            {{"image", {AK::Var, true}}, {"object", {AK::Str, true}}, {"plural", {AK::Bool, false}}}));
    add(vqa);
    add(sig("CROP", Output::Image, {{"image", {AK::Var, true}}, {"box", {AK::Var, true}}}));
    add(sig("CROP_RIGHTOF", Output::Image, {{"image", {AK::Var, true}}, {"box", {AK::Var, true}}}));
    add(sig("CROP_LEFTOF", Output::Image, {{"image", {AK::Var, true}}, {"box", {AK::Var, true}}}));
    add(sig("CROP_ABOVE", Output::Image, {{"image", {AK::Var, true}}, {"box", {AK::Var, true}}}));
    add(sig("CROP_BELOW", Output::Image, {{"image", {AK::Var, true}}, {"box", {AK::Var, true}}}));
    add(sig("COUNT", Output::Number, {{"box", {AK::Var, true}}}));
    add(sig("GET", Output::Any, {{"array", {AK::Var, true}}, {"index", {AK::Num, true}}}));
    add(eval);
    add(result);
    return reg;
}

bool ModuleRegistry::contains(std::string_view name) const {
    return modules_.find(name) != modules_.end();
}

const ModuleSignature* ModuleRegistry::find(std::string_view name) const {
    auto it = modules_.find(name);
    return it == modules_.end() ? nullptr : &it->second;
}

std::vector<std::string> ModuleRegistry::module_names() const {
    std::vector<std::string> names;
    names.reserve(modules_.size());
    for (const auto& [k, _] : modules_) names.push_back(k);
    return names;
}

}  // namespace planscript
