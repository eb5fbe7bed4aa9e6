#include "planscript/config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "planscript/http_backend.hpp"
#include "planscript/verifier.hpp"

namespace planscript {

namespace {

std::string join_path(const std::string& base, const std::string& leaf) {
    if (leaf.empty()) return leaf;
    std::filesystem::path p(leaf);
    if (p.is_absolute() || base.empty()) return leaf;
    return (std::filesystem::path(base) / p).string();
}

}  // namespace

EngineConfig EngineConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ConfigError("config file " + path + " is not valid JSON");
    return from_json(j, std::filesystem::path(path).parent_path().string());
}

EngineConfig EngineConfig::from_json(const nlohmann::json& j, const std::string& base_dir) {
    EngineConfig config;
    config.tasks_dir = join_path(base_dir, j.value("tasks_dir", ""));
    config.verifier_prompt_path = join_path(base_dir, j.value("verifier_prompt", ""));
    config.fixtures_dir = join_path(base_dir, j.value("fixtures_dir", ""));
    config.images_manifest = j.value("images_manifest", std::string("images.jsonl"));
    config.timeout_ms = j.value("timeout_ms", 30000);
    if (j.contains("ensemble")) {
        const auto& e = j.at("ensemble");
        config.ensemble.iou_threshold = e.value("iou_threshold", 0.5);
        config.ensemble.min_votes = e.value("min_votes", 2);
    }
    for (const auto& b : j.value("backends", nlohmann::json::array())) {
        BackendSpec spec;
        auto role = parse_role(b.at("role").get<std::string>());
        if (!role) throw ConfigError("unknown backend role " + b.at("role").dump());
        spec.role = *role;
        std::string impl = b.at("impl").get<std::string>();
        if (impl == "fixture") spec.impl = BackendSpec::Impl::Fixture;
        else if (impl == "http") spec.impl = BackendSpec::Impl::Http;
        else throw ConfigError("unknown backend impl '" + impl + "'");
        spec.name = b.at("name").get<std::string>();
        spec.priority = b.value("priority", 0);
        spec.fixtures = b.value("fixtures", "");
        spec.endpoint = b.value("endpoint", "");
        spec.params = b.value("params", nlohmann::json::object());
        if (spec.impl == BackendSpec::Impl::Fixture && spec.fixtures.empty())
            throw ConfigError("fixture backend '" + spec.name + "' needs a fixtures path");
        if (spec.impl == BackendSpec::Impl::Http && spec.endpoint.empty())
            throw ConfigError("http backend '" + spec.name + "' needs an endpoint");
        config.backends.push_back(std::move(spec));
    }
    return config;
}

std::string EngineConfig::verifier_prompt() const {
    if (verifier_prompt_path.empty()) return default_verifier_prompt();
    std::ifstream in(verifier_prompt_path);
    if (!in) throw ConfigError("cannot open verifier prompt " + verifier_prompt_path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::optional<BackendMode> parse_backend_mode(std::string_view name) {
    if (name == "fixture") return BackendMode::Fixture;
    if (name == "http") return BackendMode::Http;
    if (name == "record") return BackendMode::Record;
    return std::nullopt;
}

Gateway build_gateway(const EngineConfig& config, BackendMode mode, bool strict) {
    Gateway gateway;
    gateway.set_ensemble(config.ensemble);
    for (const auto& spec : config.backends) {
        if (mode == BackendMode::Fixture) {
            if (spec.impl != BackendSpec::Impl::Fixture) continue;
            auto store = std::make_shared<FixtureStore>(
                FixtureStore::load(join_path(config.fixtures_dir, spec.fixtures)));
            gateway.add_backend(std::make_shared<FixtureBackend>(spec.name, spec.role,
                                                                 spec.priority, store, strict));
            continue;
        }
        if (spec.impl != BackendSpec::Impl::Http) continue;
        auto http = std::make_shared<HttpBackend>(spec.name, spec.role, spec.priority,
                                                  spec.endpoint, config.timeout_ms);
        if (!spec.params.empty()) http->set_params(spec.params);
        if (mode == BackendMode::Http) {
            gateway.add_backend(std::move(http));
            continue;
        }
        // record mode: live responses appended to <fixtures_dir>/<name>.jsonl
        std::filesystem::create_directories(config.fixtures_dir);
        std::string path = join_path(config.fixtures_dir, spec.name + ".jsonl");
        auto store = std::make_shared<FixtureStore>(FixtureStore::open_writable(path));
        gateway.add_backend(std::make_shared<RecordingBackend>(std::move(http), std::move(store)));
    }
    return gateway;
}

ImageManifest ImageManifest::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open image manifest " + path);
    ImageManifest manifest;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line);
        manifest.add(ImageRef{j.at("id").get<std::string>(), j.at("width").get<int>(),
                              j.at("height").get<int>()});
    }
    return manifest;
}

void ImageManifest::add(ImageRef image) {
    images_[image.id] = std::move(image);
}

ImageRef ImageManifest::resolve(const std::string& ref) const {
    auto it = images_.find(ref);
    if (it != images_.end()) return it->second;
    size_t at = ref.rfind('@');
    size_t x = ref.find('x', at == std::string::npos ? 0 : at);
    if (at != std::string::npos && x != std::string::npos && x > at + 1) {
        try {
            ImageRef img;
            img.id = ref.substr(0, at);
            img.width = std::stoi(ref.substr(at + 1, x - at - 1));
            img.height = std::stoi(ref.substr(x + 1));
            if (img.width > 0 && img.height > 0 && !img.id.empty()) return img;
        } catch (const std::exception&) {
            // fall through to the error below
        }
    }
    throw ConfigError("unknown image '" + ref + "' (not in manifest, not id@WxH)");
}

}  // namespace planscript
