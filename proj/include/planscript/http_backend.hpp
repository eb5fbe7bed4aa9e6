#pragma once

#include <atomic>
#include <string>

#include "planscript/gateway.hpp"

namespace planscript {

// Counts every outgoing HTTP request; hermetic tests assert it stays zero.
std::atomic<std::uint64_t>& network_request_count();

// POSTs JSON {role, image, query, flags, width, height} to a single
// endpoint and reads {text} or {detections:[...]} back.
class HttpBackend : public Backend {
public:
    HttpBackend(std::string name, BackendRole role, int priority, std::string endpoint,
                int timeout_ms = 30000);

    BoxArray detect(const ImageRef& image, const std::string& object) override;
    std::string answer(const ImageRef& image, const std::string& question) override;
    std::string caption(const ImageRef& image) override;
    std::string complete(const std::string& prompt) override;

    const std::string& endpoint() const { return endpoint_; }
    // extra fields merged into every request body (sampling settings etc.)
    void set_params(nlohmann::json params) { params_ = std::move(params); }

private:
    nlohmann::json post(const RequestKey& key, const ImageRef* image);

    std::string endpoint_;
    nlohmann::json params_;
    std::string host_;
    std::string path_;
    int port_ = 80;
    int timeout_ms_;
};

}  // namespace planscript
