#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "planscript/value.hpp"

#include "json.hpp"

namespace planscript {

struct BackendUnavailable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FixtureMiss : std::runtime_error {
    std::string key;
    explicit FixtureMiss(std::string canonical_key)
        : std::runtime_error("no recorded fixture for key " + canonical_key),
          key(std::move(canonical_key)) {}
};

enum class BackendRole { Detector, Vqa, Caption, Llm };

std::string_view role_name(BackendRole role);
std::optional<BackendRole> parse_role(std::string_view name);

// Canonical request key: (role, image id, normalized query, flags).
// Query normalization is trim + lowercase + whitespace collapse.
struct RequestKey {
    BackendRole role = BackendRole::Vqa;
    std::string image;
    std::string query;
    std::string flags;

    std::string canonical() const;
    nlohmann::json to_json() const;
    static RequestKey from_json(const nlohmann::json& j);
};

std::string normalize_query(std::string_view query);

// Exact-match key -> response store backed by a JSONL file
// ({"key":{...},"response":{...}} per line). Reads are lock-free once
// loaded; appends are serialized.
class FixtureStore {
public:
    FixtureStore() = default;

    static FixtureStore load(const std::string& path);
    // Loads the file when present, creates it otherwise; appends allowed.
    static FixtureStore open_writable(const std::string& path);
    static FixtureStore in_memory();

    std::optional<nlohmann::json> lookup(const RequestKey& key) const;
    // Replay-only stores reject writes.
    void append(const RequestKey& key, nlohmann::json response);

    void set_writable(bool writable) { writable_ = writable; }
    bool writable() const { return writable_; }
    size_t size() const { return entries_.size(); }
    const std::string& path() const { return path_; }

private:
    std::unordered_map<std::string, nlohmann::json> entries_;
    std::string path_;
    bool writable_ = false;
    std::unique_ptr<std::mutex> write_mutex_ = std::make_unique<std::mutex>();
};

struct Detection {
    Box box;
    std::string label;
    std::string source_backend;
};

// One configured backend slot for a single role.
class Backend {
public:
    Backend(std::string name, BackendRole role, int priority)
        : name_(std::move(name)), role_(role), priority_(priority) {}
    virtual ~Backend() = default;

    const std::string& name() const { return name_; }
    BackendRole role() const { return role_; }
    int priority() const { return priority_; }

    virtual BoxArray detect(const ImageRef& image, const std::string& object);
    virtual std::string answer(const ImageRef& image, const std::string& question);
    virtual std::string caption(const ImageRef& image);
    virtual std::string complete(const std::string& prompt);

private:
    std::string name_;
    BackendRole role_;
    int priority_;
};

// Replays recorded responses; misses throw FixtureMiss in strict mode and
// BackendUnavailable otherwise.
class FixtureBackend : public Backend {
public:
    FixtureBackend(std::string name, BackendRole role, int priority,
                   std::shared_ptr<FixtureStore> store, bool strict = true);

    BoxArray detect(const ImageRef& image, const std::string& object) override;
    std::string answer(const ImageRef& image, const std::string& question) override;
    std::string caption(const ImageRef& image) override;
    std::string complete(const std::string& prompt) override;

private:
    nlohmann::json fetch(const RequestKey& key);
    std::shared_ptr<FixtureStore> store_;
    bool strict_;
};

// Wraps a live backend and appends every response to the store.
class RecordingBackend : public Backend {
public:
    RecordingBackend(std::shared_ptr<Backend> live, std::shared_ptr<FixtureStore> store);

    BoxArray detect(const ImageRef& image, const std::string& object) override;
    std::string answer(const ImageRef& image, const std::string& question) override;
    std::string caption(const ImageRef& image) override;
    std::string complete(const std::string& prompt) override;

private:
    std::shared_ptr<Backend> live_;
    std::shared_ptr<FixtureStore> store_;
};

nlohmann::json detections_to_json(const BoxArray& boxes, const std::string& label);
BoxArray detections_from_json(const nlohmann::json& j);

// ---------------------------------------------------------------------------
// Ensemble fusion

struct EnsembleConfig {
    double iou_threshold = 0.5;
    int min_votes = 2;
};

struct DetectCluster {
    Box representative;
    double score_sum = 0.0;
    int votes = 0;  // distinct backends
    std::vector<Detection> members;
};

double box_iou(const Box& a, const Box& b);

// Greedy IoU clustering over the union of member detections. Clusters with
// fewer distinct-backend votes than cfg.min_votes are dropped; survivors are
// sorted by summed score, representative = highest-scoring member.
std::vector<DetectCluster> ensemble_detect(const std::vector<std::vector<Detection>>& per_backend,
                                           const EnsembleConfig& cfg);

struct VqaVote {
    std::string backend;
    int priority = 0;
    std::string raw;
    std::string normalized;
};

std::string normalize_answer(std::string_view answer);

// Majority vote over normalized answers, ties broken by best priority.
std::string ensemble_vqa(std::vector<VqaVote> votes);

// ---------------------------------------------------------------------------
// Gateway facade

struct LocResult {
    BoxArray boxes;
    nlohmann::json votes;  // per-backend detail for traces
};

struct VqaResult {
    std::string answer;
    nlohmann::json votes;
};

// Owns the configured backends and applies ensemble fusion when more than
// one backend serves a role. Safe for concurrent use.
class Gateway {
public:
    Gateway() = default;

    void add_backend(std::shared_ptr<Backend> backend);
    void set_ensemble(EnsembleConfig cfg) { ensemble_cfg_ = cfg; }
    void set_ensemble_enabled(bool enabled) { ensemble_enabled_ = enabled; }
    const EnsembleConfig& ensemble_config() const { return ensemble_cfg_; }

    size_t backend_count(BackendRole role) const;

    // LOC semantics: plural=false returns the fused detections; plural=true
    // collapses >=1 detection into one whole-image box scored by the best
    // detection, or an empty array when nothing was found.
    LocResult locate(const ImageRef& image, const std::string& object, bool plural);
    VqaResult vqa(const ImageRef& image, const std::string& question);
    std::string caption(const ImageRef& image);
    std::string complete(const std::string& prompt);

private:
    std::vector<std::shared_ptr<Backend>> for_role(BackendRole role) const;
    Backend& primary(BackendRole role) const;

    std::vector<std::shared_ptr<Backend>> backends_;
    EnsembleConfig ensemble_cfg_;
    bool ensemble_enabled_ = true;
};

}  // namespace planscript
