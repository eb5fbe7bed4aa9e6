#include "planscript/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

namespace planscript {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

bool verifier_applicable(TaskKind task) {
    // caption verification targets single-image QA
    return task == TaskKind::Gqa || task == TaskKind::Vqav2 || task == TaskKind::Mme;
}

PipelineResult run_stages(std::optional<std::string> preset_script, const std::string& question,
                          const std::vector<ImageRef>& images, const PipelineOptions& options,
                          Gateway& gateway, const TaskRepository* repo,
                          const std::string& verifier_prompt) {
    const auto total_start = Clock::now();
    PipelineResult result;
    result.question = question;
    result.task = options.task;

    const bool verify = options.use_verifier && verifier_applicable(options.task) &&
                        !images.empty();
    std::future<CaptionAnalysis> analysis_future;
    if (verify && options.parallel_verify) {
        ImageRef image = images.front();
        analysis_future = std::async(std::launch::async, [&gateway, image, question,
                                                          verifier_prompt] {
            return analyze_caption(image, question, gateway, verifier_prompt);
        });
    }

    // plan
    {
        const auto start = Clock::now();
        if (preset_script) {
            result.raw_script = *preset_script;
        } else {
            try {
                result.raw_script = generate_script({question, options.task}, *repo, gateway);
            } catch (const FixtureMiss&) {
                throw;
            } catch (const EmptyCompletion&) {
                result.plan_failed = true;
            } catch (const BackendUnavailable&) {
                result.plan_failed = true;
            }
            if (result.plan_failed)
                result.raw_script = render_script(make_fallback(question, options.task));
        }
        result.timings.plan_ms = ms_since(start);
    }

    // validate / repair
    ModuleRegistry registry = ModuleRegistry::for_task(options.task);
    {
        const auto start = Clock::now();
        if (options.use_ssparser) {
            result.repair = validate_and_repair_text(result.raw_script, question, registry,
                                                     options.task);
        } else {
            try {
                result.repair.script = parse_script(result.raw_script);
                result.repair.verdict = Verdict::CleanPass;
            } catch (const MalformedLineError& e) {
                result.repair.verdict = Verdict::CleanPass;
                result.repair.script = Script{};
                result.exec.status = ExecStatus::Error;
                result.exec.final_answer = "unknown";
                result.exec.failure_detail = {{"line", e.line_index}, {"cause", e.what()}};
            }
        }
        result.timings.validate_ms = ms_since(start);
    }

    // execute
    if (result.exec.status != ExecStatus::Error) {
        const auto start = Clock::now();
        ExecOptions exec_options;
        exec_options.question = question;
        exec_options.task = options.task;
        exec_options.collect_trace = options.collect_trace;
        Env seed = seed_env(images, options.task);
        result.exec = execute(result.repair.script, seed, gateway, exec_options);
        result.timings.execute_ms = ms_since(start);
    }
    result.answer = result.exec.final_answer;

    // verify
    if (verify) {
        const auto start = Clock::now();
        CaptionAnalysis analysis;
        if (options.parallel_verify)
            analysis = analysis_future.get();
        else
            analysis = analyze_caption(images.front(), question, gateway, verifier_prompt);
        result.verdict = finalize_verdict(analysis, result.exec.final_answer);
        result.answer = result.verdict->final_answer;
        result.timings.verify_ms = ms_since(start);
    } else if (analysis_future.valid()) {
        analysis_future.wait();
    }

    result.timings.total_ms = ms_since(total_start);
    return result;
}

}  // namespace

nlohmann::json StageTimings::to_json() const {
    return {{"plan_ms", plan_ms},
            {"validate_ms", validate_ms},
            {"execute_ms", execute_ms},
            {"verify_ms", verify_ms},
            {"total_ms", total_ms}};
}

nlohmann::json PipelineResult::trace_json() const {
    return {{"schema_version", kSchemaVersion},
            {"question", question},
            {"task", std::string(task_kind_name(task))},
            {"raw_script", raw_script},
            {"plan_failed", plan_failed},
            {"repair", repair.to_json()},
            {"repaired_script", render_script(repair.script)},
            {"execution", exec.to_json()},
            {"verifier", verdict ? verdict->to_json() : nlohmann::json()},
            {"answer", answer},
            {"timings_ms", timings.to_json()}};
}

PipelineResult run_pipeline(const std::string& question, const std::vector<ImageRef>& images,
                            const PipelineOptions& options, Gateway& gateway,
                            const TaskRepository& repo, const std::string& verifier_prompt) {
    return run_stages(std::nullopt, question, images, options, gateway, &repo, verifier_prompt);
}

PipelineResult run_script_pipeline(const std::string& script_text, const std::string& question,
                                   const std::vector<ImageRef>& images,
                                   const PipelineOptions& options, Gateway& gateway,
                                   const std::string& verifier_prompt) {
    return run_stages(script_text, question, images, options, gateway, nullptr, verifier_prompt);
}

std::vector<BenchmarkSample> load_samples(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open samples file " + path);
    std::vector<BenchmarkSample> samples;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded())
            throw ConfigError(path + ":" + std::to_string(line_no) + ": invalid JSON");
        BenchmarkSample sample;
        sample.id = j.at("id").get<std::string>();
        auto task = parse_task_kind(j.at("task").get<std::string>());
        if (!task) throw ConfigError(sample.id + ": unknown task kind");
        sample.task = *task;
        for (const auto& img : j.at("images")) sample.images.push_back(img.get<std::string>());
        sample.question = j.at("question").get<std::string>();
        sample.ground_truth = j.at("answer").get<std::string>();
        if (sample.ground_truth.empty())
            throw ConfigError(sample.id + ": ground truth answer is empty");
        for (const auto& c : j.value("choices", nlohmann::json::array()))
            sample.choices.push_back(c.get<std::string>());
        samples.push_back(std::move(sample));
    }
    return samples;
}

nlohmann::json RunReport::to_json(bool include_timings) const {
    nlohmann::json sample_json = nlohmann::json::array();
    for (const auto& s : samples) {
        nlohmann::json entry = {{"id", s.id},           {"answer", s.answer},
                                {"expected", s.expected}, {"correct", s.correct},
                                {"skipped", s.skipped},   {"verdict", s.verdict},
                                {"status", s.status},     {"repairs", s.repair_count}};
        if (s.skipped) entry["skip_reason"] = s.skip_reason;
        if (include_timings) entry["timings_ms"] = s.timings.to_json();
        sample_json.push_back(std::move(entry));
    }
    nlohmann::json report = {{"schema_version", kSchemaVersion},
                             {"samples", std::move(sample_json)},
                             {"total", total},
                             {"correct", correct},
                             {"skipped", skipped},
                             {"accuracy", accuracy ? nlohmann::json(*accuracy) : nlohmann::json()}};
    if (include_timings) report["timing_means_ms"] = timing_means.to_json();
    return report;
}

std::string RunReport::summary_text() const {
    std::ostringstream out;
    out << "samples: " << total << "  correct: " << correct << "  skipped: " << skipped << "\n";
    if (accuracy)
        out << "accuracy: " << *accuracy << "\n";
    else
        out << "accuracy: n/a\n";
    out << "mean stage times (ms): plan " << timing_means.plan_ms << ", validate "
        << timing_means.validate_ms << ", execute " << timing_means.execute_ms << ", verify "
        << timing_means.verify_ms << "\n";
    return out.str();
}

RunReport run_bench(const std::vector<BenchmarkSample>& samples, const ImageManifest& manifest,
                    const BenchOptions& options, Gateway& gateway, const TaskRepository& repo,
                    const std::string& verifier_prompt) {
    RunReport report;
    report.total = static_cast<int>(samples.size());
    report.samples.resize(samples.size());

    std::atomic<size_t> next{0};
    std::exception_ptr abort_error;
    std::mutex abort_mutex;

    auto worker = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= samples.size()) return;
            {
                std::lock_guard<std::mutex> lock(abort_mutex);
                if (abort_error) return;
            }
            const BenchmarkSample& sample = samples[i];
            SampleReport& out = report.samples[i];
            out.id = sample.id;
            out.expected = sample.ground_truth;
            try {
                std::vector<ImageRef> images;
                for (const auto& ref : sample.images) images.push_back(manifest.resolve(ref));
                PipelineOptions pipeline_options = options.pipeline;
                pipeline_options.task = sample.task;
                PipelineResult result = run_pipeline(sample.question, images, pipeline_options,
                                                     gateway, repo, verifier_prompt);
                out.answer = result.answer;
                out.correct =
                    normalize_answer(result.answer) == normalize_answer(sample.ground_truth);
                out.verdict = std::string(verdict_name(result.repair.verdict));
                out.status = std::string(exec_status_name(result.exec.status));
                out.repair_count = static_cast<int>(result.repair.repairs.size());
                out.timings = result.timings;
            } catch (const FixtureMiss& e) {
                if (options.strict) {
                    std::lock_guard<std::mutex> lock(abort_mutex);
                    if (!abort_error) abort_error = std::current_exception();
                    return;
                }
                out.skipped = true;
                out.skip_reason = e.what();
            } catch (const std::exception& e) {
                out.skipped = true;
                out.skip_reason = e.what();
            }
        }
    };

    const int workers = std::max(1, options.workers);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (abort_error) std::rethrow_exception(abort_error);

    int measured = 0;
    for (const auto& s : report.samples) {
        if (s.skipped) {
            ++report.skipped;
            continue;
        }
        if (s.correct) ++report.correct;
        report.timing_means.plan_ms += s.timings.plan_ms;
        report.timing_means.validate_ms += s.timings.validate_ms;
        report.timing_means.execute_ms += s.timings.execute_ms;
        report.timing_means.verify_ms += s.timings.verify_ms;
        report.timing_means.total_ms += s.timings.total_ms;
        ++measured;
    }
    if (measured > 0) {
        report.timing_means.plan_ms /= measured;
        report.timing_means.validate_ms /= measured;
        report.timing_means.execute_ms /= measured;
        report.timing_means.verify_ms /= measured;
        report.timing_means.total_ms /= measured;
    }
    if (report.total > 0)
        report.accuracy = static_cast<double>(report.correct) / report.total;
    return report;
}

}  // namespace planscript
