#pragma once

#include <optional>
#include <string>
#include <vector>

#include "planscript/gateway.hpp"
#include "planscript/registry.hpp"
#include "planscript/script.hpp"
#include "planscript/value.hpp"

#include "json.hpp"

namespace planscript {

struct RuntimeStepError : std::runtime_error {
    int line_index;
    RuntimeStepError(int line, const std::string& cause)
        : std::runtime_error("step " + std::to_string(line) + ": " + cause), line_index(line) {}
};

struct TraceEvent {
    int line_index = 0;
    std::string module_name;
    std::string output_var;
    nlohmann::json inputs;   // resolved display forms
    std::string output;      // display form
    nlohmann::json backend;  // ensemble votes etc., null when no backend ran
    double wall_ms = 0.0;

    nlohmann::json to_json() const;
};

enum class ExecStatus { Ok, RuntimeFallbackUsed, Error };

std::string_view exec_status_name(ExecStatus s);

struct ExecutionResult {
    std::string final_answer;
    std::vector<TraceEvent> trace;
    ExecStatus status = ExecStatus::Ok;
    nlohmann::json failure_detail;  // set when a step failed

    nlohmann::json to_json() const;
};

struct ExecOptions {
    std::string question;            // needed for the runtime fallback script
    TaskKind task = TaskKind::Gqa;
    bool collect_trace = true;
    bool allow_runtime_fallback = true;
};

// Step handlers, exposed for direct testing.
BoxArray exec_loc(Gateway& gateway, const ImageRef& image, const std::string& object, bool plural);
ImageRef exec_crop(const ImageRef& image, const Box& box);
ImageRef exec_crop(const ImageRef& image, const BoxArray& boxes);  // first box
std::int64_t exec_count(const BoxArray& boxes);
Value exec_get(const Value& array, std::int64_t index);

// Runs the script top to bottom against the seed environment. On a step
// failure the fallback script is substituted once and re-executed; a second
// failure yields status Error with answer "unknown". FixtureMiss is never
// swallowed.
ExecutionResult execute(const Script& script, const Env& seed, Gateway& gateway,
                        const ExecOptions& options);

// IMAGE seeding for one- and two-image tasks. NLVR2 binds LEFT, RIGHT and
// IMAGE = horizontal concatenation at equal heights.
Env seed_env(const std::vector<ImageRef>& images, TaskKind task);
ImageRef concat_images(const ImageRef& left, const ImageRef& right);

}  // namespace planscript
