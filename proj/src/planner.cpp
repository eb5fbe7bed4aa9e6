#include "planscript/planner.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "planscript/script.hpp"
#include "planscript/ssparser.hpp"

#include "json.hpp"

namespace planscript {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

bool instruction_shaped(const std::string& line) {
    try {
        parse_step(line, 0);
        return true;
    } catch (const MalformedLineError&) {
        return false;
    }
}

std::string trim_copy(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

TaskRepository TaskRepository::load(const std::string& dir, bool self_check) {
    std::map<TaskKind, TaskSet> sets;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_directory()) continue;
        auto kind = parse_task_kind(entry.path().filename().string());
        if (!kind) continue;
        TaskSet set;
        set.cot_header = trim_copy(read_file(entry.path() / "header.txt"));
        std::ifstream in(entry.path() / "examples.jsonl");
        if (!in) throw std::runtime_error("missing examples.jsonl in " + entry.path().string());
        std::string line;
        while (std::getline(in, line)) {
            if (trim_copy(line).empty()) continue;
            nlohmann::json j = nlohmann::json::parse(line);
            set.examples.push_back(
                {j.at("question").get<std::string>(), j.at("script").get<std::string>()});
        }
        sets.emplace(*kind, std::move(set));
    }
    if (sets.empty()) throw std::runtime_error("no task sets found under " + dir);
    return from_sets(std::move(sets), self_check);
}

TaskRepository TaskRepository::from_sets(std::map<TaskKind, TaskSet> sets, bool self_check) {
    if (self_check) {
        for (const auto& [kind, set] : sets) {
            ModuleRegistry registry = ModuleRegistry::for_task(kind);
            for (const auto& example : set.examples) {
                RepairOutcome outcome =
                    validate_and_repair_text(example.script_text, example.question, registry, kind);
                if (outcome.verdict != Verdict::CleanPass) {
                    std::string why = outcome.repairs.empty() ? std::string("?")
                                                              : outcome.repairs.front().rule_id;
                    throw std::runtime_error(
                        "task repository example for '" + example.question + "' (" +
                        std::string(task_kind_name(kind)) + ") is not clean: " + why);
                }
            }
        }
    }
    TaskRepository repo;
    repo.sets_ = std::move(sets);
    return repo;
}

bool TaskRepository::has(TaskKind kind) const {
    return sets_.count(kind) != 0;
}

const TaskSet& TaskRepository::set_for(TaskKind kind) const {
    auto it = sets_.find(kind);
    if (it == sets_.end())
        throw UnknownTaskKind("no task set for kind " + std::string(task_kind_name(kind)));
    return it->second;
}

std::string build_prompt(const PlanRequest& request, const TaskRepository& repo) {
    const TaskSet& set = repo.set_for(request.task);
    std::string prompt = set.cot_header;
    prompt += "\n\n";
    for (const auto& example : set.examples) {
        prompt += "Question: " + example.question + "\nProgram:\n";
        prompt += example.script_text;
        if (prompt.back() != '\n') prompt += '\n';
        prompt += '\n';
    }
    prompt += "Question: " + request.question + "\nProgram:\n";
    return prompt;
}

std::string extract_script_text(const std::string& completion) {
    std::vector<std::string> lines;
    std::stringstream stream(completion);
    std::string line;
    while (std::getline(stream, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }

    std::string script;
    bool in_block = false;
    for (const auto& l : lines) {
        std::string body = trim_copy(l);
        bool comment = !body.empty() && body[0] == '#';
        bool shaped = !body.empty() && !comment && instruction_shaped(l);
        if (!in_block) {
            if (shaped) {
                in_block = true;
                script += body + "\n";
            }
            continue;
        }
        if (body.empty()) break;        // blank line after the block ends it
        if (!shaped && !comment) break; // trailing narration
        if (shaped) script += body + "\n";
    }
    return script;
}

std::string generate_script(const PlanRequest& request, const TaskRepository& repo,
                            Gateway& gateway) {
    std::string prompt = build_prompt(request, repo);
    std::string completion = gateway.complete(prompt);
    std::string script = extract_script_text(completion);
    if (trim_copy(script).empty())
        throw EmptyCompletion("completion contains no instruction-shaped lines");
    return script;
}

}  // namespace planscript
