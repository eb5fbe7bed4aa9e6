#pragma once

#include <string>

#include "json.hpp"

namespace planscript {

struct ReportError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Renderers for the pipeline trace JSON (PipelineResult::trace_json).
std::string render_trace_text(const nlohmann::json& trace);
std::string render_trace_html(const nlohmann::json& trace);

}  // namespace planscript
