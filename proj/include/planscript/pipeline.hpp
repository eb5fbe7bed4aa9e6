#pragma once

#include <optional>
#include <string>
#include <vector>

#include "planscript/config.hpp"
#include "planscript/executor.hpp"
#include "planscript/planner.hpp"
#include "planscript/ssparser.hpp"
#include "planscript/verifier.hpp"

namespace planscript {

inline constexpr int kSchemaVersion = 1;

struct PipelineOptions {
    TaskKind task = TaskKind::Gqa;
    bool use_ssparser = true;
    bool use_verifier = true;
    bool parallel_verify = false;  // caption branch concurrent with plan+execute
    bool collect_trace = true;
};

struct StageTimings {
    double plan_ms = 0.0;
    double validate_ms = 0.0;
    double execute_ms = 0.0;
    double verify_ms = 0.0;
    double total_ms = 0.0;

    nlohmann::json to_json() const;
};

struct PipelineResult {
    std::string question;
    TaskKind task = TaskKind::Gqa;
    std::string raw_script;
    bool plan_failed = false;  // empty/unavailable completion, fallback planned
    RepairOutcome repair;
    ExecutionResult exec;
    std::optional<CaptionVerdict> verdict;
    std::string answer;
    StageTimings timings;

    nlohmann::json trace_json() const;
};

// plan -> parse -> validate/repair -> execute -> verify. The caption branch
// never sees the executor answer, so parallel mode can overlap it with
// planning and execution.
PipelineResult run_pipeline(const std::string& question, const std::vector<ImageRef>& images,
                            const PipelineOptions& options, Gateway& gateway,
                            const TaskRepository& repo, const std::string& verifier_prompt);

// Same pipeline, skipping the planner: validates and runs the given script.
PipelineResult run_script_pipeline(const std::string& script_text, const std::string& question,
                                   const std::vector<ImageRef>& images,
                                   const PipelineOptions& options, Gateway& gateway,
                                   const std::string& verifier_prompt);

// ---------------------------------------------------------------------------
// Benchmark replay

struct BenchmarkSample {
    std::string id;
    TaskKind task = TaskKind::Gqa;
    std::vector<std::string> images;
    std::string question;
    std::string ground_truth;
    std::vector<std::string> choices;
};

std::vector<BenchmarkSample> load_samples(const std::string& path);

struct BenchOptions {
    PipelineOptions pipeline;
    bool strict = true;  // FixtureMiss aborts; lenient skips and counts
    int workers = 1;
};

struct SampleReport {
    std::string id;
    std::string answer;
    std::string expected;
    bool correct = false;
    bool skipped = false;
    std::string skip_reason;
    std::string verdict;  // ss-parser verdict
    std::string status;   // executor status
    int repair_count = 0;
    StageTimings timings;
};

struct RunReport {
    std::vector<SampleReport> samples;
    int total = 0;
    int correct = 0;
    int skipped = 0;
    std::optional<double> accuracy;  // unset when no samples
    StageTimings timing_means;

    nlohmann::json to_json(bool include_timings = true) const;
    std::string summary_text() const;
};

RunReport run_bench(const std::vector<BenchmarkSample>& samples, const ImageManifest& manifest,
                    const BenchOptions& options, Gateway& gateway, const TaskRepository& repo,
                    const std::string& verifier_prompt);

}  // namespace planscript
