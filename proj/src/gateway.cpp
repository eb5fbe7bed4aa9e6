#include "planscript/gateway.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>

#include "planscript/evalexpr.hpp"

namespace planscript {

std::string_view role_name(BackendRole role) {
    switch (role) {
        case BackendRole::Detector: return "detector";
        case BackendRole::Vqa: return "vqa";
        case BackendRole::Caption: return "caption";
        case BackendRole::Llm: return "llm";
    }
    return "?";
}

std::optional<BackendRole> parse_role(std::string_view name) {
    if (name == "detector") return BackendRole::Detector;
    if (name == "vqa") return BackendRole::Vqa;
    if (name == "caption") return BackendRole::Caption;
    if (name == "llm") return BackendRole::Llm;
    return std::nullopt;
}

std::string normalize_query(std::string_view query) {
    std::string out;
    out.reserve(query.size());
    bool pending_space = false;
    for (char c : query) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out += ' ';
            pending_space = false;
        }
        out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

std::string RequestKey::canonical() const {
    std::string out(role_name(role));
    out += '\x1f';
    out += image;
    out += '\x1f';
    out += normalize_query(query);
    out += '\x1f';
    out += flags;
    return out;
}

nlohmann::json RequestKey::to_json() const {
    return {{"role", std::string(role_name(role))},
            {"image", image},
            {"query", normalize_query(query)},
            {"flags", flags}};
}

RequestKey RequestKey::from_json(const nlohmann::json& j) {
    RequestKey key;
    auto role = parse_role(j.at("role").get<std::string>());
    if (!role) throw std::runtime_error("unknown backend role in fixture key");
    key.role = *role;
    key.image = j.value("image", "");
    key.query = j.value("query", "");
    key.flags = j.value("flags", "");
    return key;
}

FixtureStore FixtureStore::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open fixture file " + path);
    FixtureStore store;
    store.path_ = path;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json entry = nlohmann::json::parse(line, nullptr, false);
        if (entry.is_discarded())
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": invalid JSON");
        RequestKey key = RequestKey::from_json(entry.at("key"));
        store.entries_[key.canonical()] = entry.at("response");
    }
    return store;
}

FixtureStore FixtureStore::open_writable(const std::string& path) {
    FixtureStore store;
    if (std::ifstream probe(path); probe.good()) {
        store = load(path);
    } else {
        std::ofstream touch(path, std::ios::app);
        if (!touch) throw std::runtime_error("cannot create fixture file " + path);
        store.path_ = path;
    }
    store.writable_ = true;
    return store;
}

FixtureStore FixtureStore::in_memory() {
    FixtureStore store;
    store.writable_ = true;
    return store;
}

std::optional<nlohmann::json> FixtureStore::lookup(const RequestKey& key) const {
    auto it = entries_.find(key.canonical());
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void FixtureStore::append(const RequestKey& key, nlohmann::json response) {
    if (!writable_) throw std::runtime_error("fixture store is replay-only");
    std::lock_guard<std::mutex> lock(*write_mutex_);
    auto it = entries_.find(key.canonical());
    if (it != entries_.end()) {
        // re-recording the same key must be deterministic
        if (it->second != response)
            throw std::runtime_error("conflicting responses recorded for key " + key.canonical());
        return;
    }
    if (!path_.empty()) {
        std::ofstream out(path_, std::ios::app);
        if (!out) throw std::runtime_error("cannot append to fixture file " + path_);
        nlohmann::json entry = {{"key", key.to_json()}, {"response", response}};
        out << entry.dump() << '\n';
    }
    entries_[key.canonical()] = std::move(response);
}

// ---------------------------------------------------------------------------

BoxArray Backend::detect(const ImageRef&, const std::string&) {
    throw BackendUnavailable(name() + " does not serve detection requests");
}
std::string Backend::answer(const ImageRef&, const std::string&) {
    throw BackendUnavailable(name() + " does not serve VQA requests");
}
std::string Backend::caption(const ImageRef&) {
    throw BackendUnavailable(name() + " does not serve caption requests");
}
std::string Backend::complete(const std::string&) {
    throw BackendUnavailable(name() + " does not serve completion requests");
}

FixtureBackend::FixtureBackend(std::string name, BackendRole role, int priority,
                               std::shared_ptr<FixtureStore> store, bool strict)
    : Backend(std::move(name), role, priority), store_(std::move(store)), strict_(strict) {}

nlohmann::json FixtureBackend::fetch(const RequestKey& key) {
    auto hit = store_->lookup(key);
    if (!hit) {
        if (strict_) throw FixtureMiss(key.canonical());
        throw BackendUnavailable(name() + ": no fixture for " + key.canonical());
    }
    return *hit;
}

BoxArray FixtureBackend::detect(const ImageRef& image, const std::string& object) {
    nlohmann::json response = fetch({BackendRole::Detector, image.id, object, ""});
    return detections_from_json(response);
}

std::string FixtureBackend::answer(const ImageRef& image, const std::string& question) {
    return fetch({BackendRole::Vqa, image.id, question, ""}).at("text").get<std::string>();
}

std::string FixtureBackend::caption(const ImageRef& image) {
    return fetch({BackendRole::Caption, image.id, "", ""}).at("text").get<std::string>();
}

std::string FixtureBackend::complete(const std::string& prompt) {
    return fetch({BackendRole::Llm, "", prompt, ""}).at("text").get<std::string>();
}

RecordingBackend::RecordingBackend(std::shared_ptr<Backend> live,
                                   std::shared_ptr<FixtureStore> store)
    : Backend(live->name(), live->role(), live->priority()),
      live_(std::move(live)),
      store_(std::move(store)) {}

BoxArray RecordingBackend::detect(const ImageRef& image, const std::string& object) {
    BoxArray boxes = live_->detect(image, object);
    store_->append({BackendRole::Detector, image.id, object, ""},
                   detections_to_json(boxes, object));
    return boxes;
}

std::string RecordingBackend::answer(const ImageRef& image, const std::string& question) {
    std::string text = live_->answer(image, question);
    store_->append({BackendRole::Vqa, image.id, question, ""}, {{"text", text}});
    return text;
}

std::string RecordingBackend::caption(const ImageRef& image) {
    std::string text = live_->caption(image);
    store_->append({BackendRole::Caption, image.id, "", ""}, {{"text", text}});
    return text;
}

std::string RecordingBackend::complete(const std::string& prompt) {
    std::string text = live_->complete(prompt);
    store_->append({BackendRole::Llm, "", prompt, ""}, {{"text", text}});
    return text;
}

nlohmann::json detections_to_json(const BoxArray& boxes, const std::string& label) {
    nlohmann::json dets = nlohmann::json::array();
    for (const Box& b : boxes)
        dets.push_back({{"box", {b.x1, b.y1, b.x2, b.y2}}, {"score", b.score}, {"label", label}});
    return {{"detections", std::move(dets)}};
}

BoxArray detections_from_json(const nlohmann::json& j) {
    BoxArray boxes;
    for (const auto& det : j.at("detections")) {
        const auto& b = det.at("box");
        boxes.push_back(Box::make(b.at(0).get<int>(), b.at(1).get<int>(), b.at(2).get<int>(),
                                  b.at(3).get<int>(), det.at("score").get<double>()));
    }
    std::stable_sort(boxes.begin(), boxes.end(),
                     [](const Box& a, const Box& b) { return a.score > b.score; });
    return boxes;
}

// ---------------------------------------------------------------------------

double box_iou(const Box& a, const Box& b) {
    const int ix1 = std::max(a.x1, b.x1);
    const int iy1 = std::max(a.y1, b.y1);
    const int ix2 = std::min(a.x2, b.x2);
    const int iy2 = std::min(a.y2, b.y2);
    const double inter = static_cast<double>(std::max(0, ix2 - ix1)) * std::max(0, iy2 - iy1);
    if (inter <= 0.0) return 0.0;
    const double area_a = static_cast<double>(a.width()) * a.height();
    const double area_b = static_cast<double>(b.width()) * b.height();
    return inter / (area_a + area_b - inter);
}

std::vector<DetectCluster> ensemble_detect(const std::vector<std::vector<Detection>>& per_backend,
                                           const EnsembleConfig& cfg) {
    std::vector<Detection> all;
    for (const auto& dets : per_backend) all.insert(all.end(), dets.begin(), dets.end());

    // Deterministic and independent of backend order: sort by score, then
    // coordinates, then source name.
    std::sort(all.begin(), all.end(), [](const Detection& a, const Detection& b) {
        if (a.box.score != b.box.score) return a.box.score > b.box.score;
        auto ka = std::tie(a.box.x1, a.box.y1, a.box.x2, a.box.y2, a.source_backend);
        auto kb = std::tie(b.box.x1, b.box.y1, b.box.x2, b.box.y2, b.source_backend);
        return ka < kb;
    });

    std::vector<bool> used(all.size(), false);
    std::vector<DetectCluster> clusters;
    for (size_t i = 0; i < all.size(); ++i) {
        if (used[i]) continue;
        DetectCluster cluster;
        cluster.members.push_back(all[i]);
        used[i] = true;
        for (size_t j = i + 1; j < all.size(); ++j) {
            if (used[j]) continue;
            if (box_iou(all[i].box, all[j].box) >= cfg.iou_threshold) {
                cluster.members.push_back(all[j]);
                used[j] = true;
            }
        }
        std::vector<std::string> sources;
        for (const auto& m : cluster.members) {
            cluster.score_sum += m.box.score;
            sources.push_back(m.source_backend);
        }
        std::sort(sources.begin(), sources.end());
        sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
        cluster.votes = static_cast<int>(sources.size());
        cluster.representative = cluster.members.front().box;  // highest score first
        clusters.push_back(std::move(cluster));
    }

    clusters.erase(std::remove_if(clusters.begin(), clusters.end(),
                                  [&](const DetectCluster& c) { return c.votes < cfg.min_votes; }),
                   clusters.end());
    std::stable_sort(clusters.begin(), clusters.end(),
                     [](const DetectCluster& a, const DetectCluster& b) {
                         return a.score_sum > b.score_sum;
                     });
    return clusters;
}

std::string normalize_answer(std::string_view answer) {
    // trim + lowercase + whitespace collapse, then yes/no and digit-string
    // coercion so "Yes" and "true"-like spellings of counts fold together
    return coerce(normalize_query(answer)).display();
}

std::string ensemble_vqa(std::vector<VqaVote> votes) {
    if (votes.empty()) throw BackendUnavailable("no VQA backends produced an answer");
    for (auto& v : votes)
        if (v.normalized.empty()) v.normalized = normalize_answer(v.raw);

    std::map<std::string, int> counts;
    std::map<std::string, int> best_priority;
    for (const auto& v : votes) {
        counts[v.normalized]++;
        auto it = best_priority.find(v.normalized);
        if (it == best_priority.end() || v.priority < it->second)
            best_priority[v.normalized] = v.priority;
    }
    std::string winner;
    int winner_count = -1;
    int winner_priority = 0;
    for (const auto& [answer, count] : counts) {
        const int prio = best_priority[answer];
        if (count > winner_count || (count == winner_count && prio < winner_priority)) {
            winner = answer;
            winner_count = count;
            winner_priority = prio;
        }
    }
    return winner;
}

// ---------------------------------------------------------------------------

void Gateway::add_backend(std::shared_ptr<Backend> backend) {
    for (const auto& b : backends_)
        if (b->role() == backend->role() && b->priority() == backend->priority())
            throw std::runtime_error("duplicate priority " + std::to_string(backend->priority()) +
                                     " for role " + std::string(role_name(backend->role())));
    backends_.push_back(std::move(backend));
    std::stable_sort(backends_.begin(), backends_.end(),
                     [](const auto& a, const auto& b) { return a->priority() < b->priority(); });
}

std::vector<std::shared_ptr<Backend>> Gateway::for_role(BackendRole role) const {
    std::vector<std::shared_ptr<Backend>> out;
    for (const auto& b : backends_)
        if (b->role() == role) out.push_back(b);
    return out;
}

Backend& Gateway::primary(BackendRole role) const {
    for (const auto& b : backends_)
        if (b->role() == role) return *b;
    throw BackendUnavailable("no backend configured for role " + std::string(role_name(role)));
}

size_t Gateway::backend_count(BackendRole role) const {
    return for_role(role).size();
}

LocResult Gateway::locate(const ImageRef& image, const std::string& object, bool plural) {
    auto detectors = for_role(BackendRole::Detector);
    if (detectors.empty()) throw BackendUnavailable("no detector backend configured");
    if (!ensemble_enabled_ && detectors.size() > 1) detectors.resize(1);

    LocResult result;
    BoxArray fused;
    nlohmann::json votes = nlohmann::json::array();
    if (detectors.size() == 1) {
        fused = detectors[0]->detect(image, object);
        votes.push_back({{"backend", detectors[0]->name()},
                         {"detections", detections_to_json(fused, object)["detections"]}});
    } else {
        std::vector<std::vector<Detection>> per_backend;
        size_t available = 0;
        for (const auto& det : detectors) {
            try {
                BoxArray boxes = det->detect(image, object);
                ++available;
                std::vector<Detection> dets;
                for (const Box& b : boxes) dets.push_back({b, object, det->name()});
                votes.push_back({{"backend", det->name()},
                                 {"detections", detections_to_json(boxes, object)["detections"]}});
                per_backend.push_back(std::move(dets));
            } catch (const BackendUnavailable&) {
                votes.push_back({{"backend", det->name()}, {"error", "unavailable"}});
            }
        }
        if (available == 0) throw BackendUnavailable("all detector backends failed");
        auto clusters = ensemble_detect(per_backend, ensemble_cfg_);
        nlohmann::json cluster_json = nlohmann::json::array();
        for (const auto& c : clusters) {
            fused.push_back(Box::make(c.representative.x1, c.representative.y1,
                                      c.representative.x2, c.representative.y2,
                                      std::min(1.0, c.score_sum)));
            cluster_json.push_back({{"box", {c.representative.x1, c.representative.y1,
                                             c.representative.x2, c.representative.y2}},
                                    {"score_sum", c.score_sum},
                                    {"votes", c.votes}});
        }
        votes.push_back({{"clusters", std::move(cluster_json)}});
    }

    if (plural) {
        BoxArray collapsed;
        if (!fused.empty()) {
            double best = 0.0;
            for (const Box& b : fused) best = std::max(best, b.score);
            collapsed.push_back(Box::make(0, 0, image.width, image.height, best));
        }
        result.boxes = std::move(collapsed);
    } else {
        result.boxes = std::move(fused);
    }
    result.votes = std::move(votes);
    return result;
}

VqaResult Gateway::vqa(const ImageRef& image, const std::string& question) {
    auto answerers = for_role(BackendRole::Vqa);
    if (answerers.empty()) throw BackendUnavailable("no VQA backend configured");
    if (!ensemble_enabled_ && answerers.size() > 1) answerers.resize(1);

    VqaResult result;
    nlohmann::json votes = nlohmann::json::array();
    if (answerers.size() == 1) {
        result.answer = normalize_answer(answerers[0]->answer(image, question));
        votes.push_back({{"backend", answerers[0]->name()}, {"answer", result.answer}});
    } else {
        std::vector<VqaVote> cast;
        for (const auto& b : answerers) {
            try {
                std::string raw = b->answer(image, question);
                cast.push_back({b->name(), b->priority(), raw, normalize_answer(raw)});
                votes.push_back({{"backend", b->name()}, {"answer", cast.back().normalized}});
            } catch (const BackendUnavailable&) {
                votes.push_back({{"backend", b->name()}, {"error", "unavailable"}});
            }
        }
        result.answer = ensemble_vqa(std::move(cast));
    }
    result.votes = std::move(votes);
    return result;
}

std::string Gateway::caption(const ImageRef& image) {
    return primary(BackendRole::Caption).caption(image);
}

std::string Gateway::complete(const std::string& prompt) {
    return primary(BackendRole::Llm).complete(prompt);
}

}  // namespace planscript
