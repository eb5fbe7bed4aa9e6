#include "planscript/http_backend.hpp"

#include <stdexcept>

#include "httplib.h"

namespace planscript {

std::atomic<std::uint64_t>& network_request_count() {
    static std::atomic<std::uint64_t> count{0};
    return count;
}

namespace {

// Accepts http://host[:port][/path]; anything else is a config error.
void split_endpoint(const std::string& endpoint, std::string& host, int& port, std::string& path) {
    const std::string prefix = "http://";
    if (endpoint.rfind(prefix, 0) != 0)
        throw std::runtime_error("endpoint must start with http://: " + endpoint);
    std::string rest = endpoint.substr(prefix.size());
    size_t slash = rest.find('/');
    path = slash == std::string::npos ? "/" : rest.substr(slash);
    std::string authority = slash == std::string::npos ? rest : rest.substr(0, slash);
    size_t colon = authority.find(':');
    if (colon == std::string::npos) {
        host = authority;
        port = 80;
    } else {
        host = authority.substr(0, colon);
        port = std::stoi(authority.substr(colon + 1));
    }
    if (host.empty()) throw std::runtime_error("endpoint has no host: " + endpoint);
}

}  // namespace

HttpBackend::HttpBackend(std::string name, BackendRole role, int priority, std::string endpoint,
                         int timeout_ms)
    : Backend(std::move(name), role, priority),
      endpoint_(std::move(endpoint)),
      timeout_ms_(timeout_ms) {
    split_endpoint(endpoint_, host_, port_, path_);
}

nlohmann::json HttpBackend::post(const RequestKey& key, const ImageRef* image) {
    network_request_count().fetch_add(1, std::memory_order_relaxed);

    nlohmann::json body = {{"role", std::string(role_name(key.role))},
                           {"image", key.image},
                           {"query", key.query},
                           {"flags", key.flags}};
    if (image) {
        body["width"] = image->width;
        body["height"] = image->height;
    }
    if (!params_.empty()) body["params"] = params_;

    httplib::Client client(host_, port_);
    client.set_connection_timeout(timeout_ms_ / 1000, (timeout_ms_ % 1000) * 1000);
    client.set_read_timeout(timeout_ms_ / 1000, (timeout_ms_ % 1000) * 1000);

    auto res = client.Post(path_, body.dump(), "application/json");
    if (!res)
        throw BackendUnavailable(name() + ": no response from " + endpoint_);
    if (res->status != 200)
        throw BackendUnavailable(name() + ": HTTP " + std::to_string(res->status) + " from " +
                                 endpoint_);
    nlohmann::json parsed = nlohmann::json::parse(res->body, nullptr, false);
    if (parsed.is_discarded())
        throw BackendUnavailable(name() + ": invalid JSON from " + endpoint_);
    return parsed;
}

BoxArray HttpBackend::detect(const ImageRef& image, const std::string& object) {
    return detections_from_json(post({BackendRole::Detector, image.id, object, ""}, &image));
}

std::string HttpBackend::answer(const ImageRef& image, const std::string& question) {
    return post({BackendRole::Vqa, image.id, question, ""}, &image).at("text").get<std::string>();
}

std::string HttpBackend::caption(const ImageRef& image) {
    return post({BackendRole::Caption, image.id, "", ""}, &image).at("text").get<std::string>();
}

std::string HttpBackend::complete(const std::string& prompt) {
    return post({BackendRole::Llm, "", prompt, ""}, nullptr).at("text").get<std::string>();
}

}  // namespace planscript
