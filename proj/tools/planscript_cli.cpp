#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "planscript/pipeline.hpp"
#include "planscript/report.hpp"

using namespace planscript;

namespace {

struct CommonOptions {
    std::string config_path;
    std::string task = "gqa";
    std::string backend_mode = "fixture";
    std::string fixtures_dir;
    bool no_ssparser = false;
    bool no_verifier = false;
    bool no_ensemble = false;
    bool parallel = false;
    bool strict = false;
    std::string trace_path;
};

void add_common(CLI::App* cmd, CommonOptions& options) {
    cmd->add_option("--config", options.config_path,
                    "engine config file (falls back to $PLANSCRIPT_CONFIG)");
    cmd->add_option("--task", options.task, "task kind")
        ->check(CLI::IsMember({"gqa", "nlvr2", "vqav2", "mme", "video"}));
    cmd->add_option("--backend", options.backend_mode, "backend mode")
        ->check(CLI::IsMember({"fixture", "http", "record"}));
    cmd->add_option("--fixtures", options.fixtures_dir, "fixtures directory override");
    cmd->add_flag("--no-ssparser", options.no_ssparser, "skip script validation and repair");
    cmd->add_flag("--no-verifier", options.no_verifier, "skip the caption verifier");
    cmd->add_flag("--no-ensemble", options.no_ensemble, "use only the primary backend per role");
    cmd->add_flag("--parallel", options.parallel,
                  "run the caption branch concurrently with plan+execute");
    cmd->add_flag("--strict", options.strict, "abort on fixture misses instead of skipping");
    cmd->add_option("--trace", options.trace_path, "write the execution trace JSON here");
}

EngineConfig resolve_config(const CommonOptions& options) {
    std::string path = options.config_path;
    if (path.empty()) {
        if (const char* env = std::getenv("PLANSCRIPT_CONFIG")) path = env;
    }
    if (path.empty())
        throw ConfigError("no config given: pass --config or set PLANSCRIPT_CONFIG");
    EngineConfig config = EngineConfig::load(path);
    if (!options.fixtures_dir.empty()) config.fixtures_dir = options.fixtures_dir;
    return config;
}

Gateway make_gateway(const EngineConfig& config, const CommonOptions& options) {
    BackendMode mode = *parse_backend_mode(options.backend_mode);
    Gateway gateway = build_gateway(config, mode, /*strict=*/true);
    gateway.set_ensemble_enabled(!options.no_ensemble);
    return gateway;
}

PipelineOptions pipeline_options(const CommonOptions& options) {
    PipelineOptions p;
    p.task = *parse_task_kind(options.task);
    p.use_ssparser = !options.no_ssparser;
    p.use_verifier = !options.no_verifier;
    p.parallel_verify = options.parallel;
    return p;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

int cmd_run(const CommonOptions& options, const std::vector<std::string>& image_refs,
            const std::string& question) {
    EngineConfig config = resolve_config(options);
    Gateway gateway = make_gateway(config, options);
    TaskRepository repo = TaskRepository::load(config.tasks_dir);
    ImageManifest manifest = ImageManifest::load(
        (std::filesystem::path(config.fixtures_dir) / config.images_manifest).string());

    std::vector<ImageRef> images;
    for (const auto& ref : image_refs) images.push_back(manifest.resolve(ref));

    PipelineResult result = run_pipeline(question, images, pipeline_options(options), gateway,
                                         repo, config.verifier_prompt());
    if (!options.trace_path.empty())
        write_file(options.trace_path, result.trace_json().dump(2) + "\n");
    std::cout << result.answer << "\n";
    return result.exec.status == ExecStatus::Error ? 1 : 0;
}

int cmd_validate(const std::string& script_path, const std::string& question,
                 const std::string& task) {
    TaskKind kind = *parse_task_kind(task);
    ModuleRegistry registry = ModuleRegistry::for_task(kind);
    RepairOutcome outcome =
        validate_and_repair_text(read_file(script_path), question, registry, kind);
    nlohmann::json report = outcome.to_json();
    report["schema_version"] = kSchemaVersion;
    report["script"] = render_script(outcome.script);
    std::cout << report.dump(2) << "\n";
    switch (outcome.verdict) {
        case Verdict::CleanPass: return 0;
        case Verdict::Repaired: return 1;
        case Verdict::Fallback: return 2;
    }
    return 3;
}

int cmd_bench(const CommonOptions& options, const std::string& samples_path,
              const std::string& report_path, int workers) {
    EngineConfig config = resolve_config(options);
    Gateway gateway = make_gateway(config, options);
    TaskRepository repo = TaskRepository::load(config.tasks_dir);
    ImageManifest manifest = ImageManifest::load(
        (std::filesystem::path(config.fixtures_dir) / config.images_manifest).string());

    BenchOptions bench;
    bench.pipeline = pipeline_options(options);
    bench.strict = options.strict;
    bench.workers = workers;

    RunReport report = run_bench(load_samples(samples_path), manifest, bench, gateway, repo,
                                 config.verifier_prompt());
    if (!report_path.empty()) write_file(report_path, report.to_json().dump(2) + "\n");
    std::cout << report.summary_text();
    return 0;
}

int cmd_report(const std::string& trace_path, bool html, const std::string& out_path) {
    nlohmann::json trace = nlohmann::json::parse(read_file(trace_path));
    std::string rendered = html ? render_trace_html(trace) : render_trace_text(trace);
    if (out_path.empty())
        std::cout << rendered;
    else
        write_file(out_path, rendered);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"planning-script engine for visual reasoning"};
    app.require_subcommand(1);

    CommonOptions options;

    auto* run = app.add_subcommand("run", "answer one question end to end");
    std::string question;
    std::vector<std::string> image_refs;
    run->add_option("--question", question, "the question or statement")->required();
    run->add_option("--image", image_refs, "image id from the manifest, or id@WxH")->required();
    add_common(run, options);

    auto* validate = app.add_subcommand("validate", "validate and repair a script file");
    std::string script_path;
    std::string validate_question;
    std::string validate_task = "gqa";
    validate->add_option("--script", script_path, "script file")->required();
    validate->add_option("--question", validate_question, "the question the script answers")
        ->required();
    validate->add_option("--task", validate_task, "task kind")
        ->check(CLI::IsMember({"gqa", "nlvr2", "vqav2", "mme", "video"}));

    auto* bench = app.add_subcommand("bench", "replay a benchmark sample file");
    std::string samples_path;
    std::string report_path;
    int workers = 1;
    bench->add_option("--samples", samples_path, "samples JSONL file")->required();
    bench->add_option("--report", report_path, "write the run report JSON here");
    bench->add_option("--workers", workers, "bounded sample parallelism")
        ->check(CLI::PositiveNumber);
    add_common(bench, options);

    auto* report = app.add_subcommand("report", "render a trace file");
    std::string trace_path;
    std::string out_path;
    bool html = false;
    report->add_option("--trace", trace_path, "trace JSON file")->required();
    report->add_flag("--html", html, "render HTML instead of text");
    report->add_option("--out", out_path, "output file (stdout when absent)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(options, image_refs, question);
        if (validate->parsed()) return cmd_validate(script_path, validate_question, validate_task);
        if (bench->parsed()) return cmd_bench(options, samples_path, report_path, workers);
        if (report->parsed()) return cmd_report(trace_path, html, out_path);
    } catch (const FixtureMiss& e) {
        std::cerr << "fixture miss: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
