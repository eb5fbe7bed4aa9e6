#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "planscript/gateway.hpp"

#include "json.hpp"

namespace planscript {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BackendSpec {
    enum class Impl { Fixture, Http };
    BackendRole role = BackendRole::Vqa;
    Impl impl = Impl::Fixture;
    std::string name;
    int priority = 0;
    std::string fixtures;  // JSONL path, relative to fixtures_dir (fixture impl)
    std::string endpoint;  // http impl
    nlohmann::json params;  // extra request fields (sampling settings etc.)
};

struct EngineConfig {
    std::string tasks_dir;
    std::string verifier_prompt_path;  // empty -> built-in prompt
    std::string fixtures_dir;
    std::string images_manifest = "images.jsonl";  // relative to fixtures_dir
    EnsembleConfig ensemble;
    int timeout_ms = 30000;
    std::vector<BackendSpec> backends;

    static EngineConfig load(const std::string& path);
    static EngineConfig from_json(const nlohmann::json& j, const std::string& base_dir);

    std::string verifier_prompt() const;
};

enum class BackendMode { Fixture, Http, Record };

std::optional<BackendMode> parse_backend_mode(std::string_view name);

// Instantiates the configured backends for the chosen mode. Fixture mode
// loads each backend's JSONL store (strict: misses raise FixtureMiss);
// record mode wraps the HTTP backends and appends responses under
// fixtures_dir.
Gateway build_gateway(const EngineConfig& config, BackendMode mode, bool strict = true);

// id -> dimensions lookup for fixture images ({"id","width","height"} JSONL).
class ImageManifest {
public:
    static ImageManifest load(const std::string& path);
    static ImageManifest empty() { return ImageManifest(); }

    // Accepts a manifest id or an inline "id@WxH" literal.
    ImageRef resolve(const std::string& ref) const;
    void add(ImageRef image);
    size_t size() const { return images_.size(); }

private:
    std::map<std::string, ImageRef> images_;
};

}  // namespace planscript
