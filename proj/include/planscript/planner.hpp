#pragma once

#include <map>
#include <string>
#include <vector>

#include "planscript/gateway.hpp"
#include "planscript/registry.hpp"

namespace planscript {

struct UnknownTaskKind : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyCompletion : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TaskExample {
    std::string question;
    std::string script_text;
};

struct TaskSet {
    std::string cot_header;
    std::vector<TaskExample> examples;
};

// K-shot (question, script) example sets, one directory per task kind with
// header.txt and examples.jsonl. Loading verifies that every stored script
// validates CleanPass against its own question.
class TaskRepository {
public:
    static TaskRepository load(const std::string& dir, bool self_check = true);

    bool has(TaskKind kind) const;
    const TaskSet& set_for(TaskKind kind) const;  // throws UnknownTaskKind

    static TaskRepository from_sets(std::map<TaskKind, TaskSet> sets, bool self_check = true);

private:
    std::map<TaskKind, TaskSet> sets_;
};

struct PlanRequest {
    std::string question;
    TaskKind task = TaskKind::Gqa;
};

// Header, then each example as "Question: ...\nProgram:\n<script>", then the
// query with an open "Program:" for the model to complete.
std::string build_prompt(const PlanRequest& request, const TaskRepository& repo);

// Strips narration around the completion: keeps the first contiguous run of
// instruction-shaped (or comment) lines.
std::string extract_script_text(const std::string& completion);

std::string generate_script(const PlanRequest& request, const TaskRepository& repo,
                            Gateway& gateway);

}  // namespace planscript
