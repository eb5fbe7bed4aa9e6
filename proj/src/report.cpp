#include "planscript/report.hpp"

#include <sstream>

namespace planscript {

namespace {

void require_fields(const nlohmann::json& trace) {
    for (const char* field : {"question", "repair", "execution", "answer"})
        if (!trace.contains(field))
            throw ReportError(std::string("trace is missing the '") + field + "' field");
}

std::string escape_html(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string inputs_line(const nlohmann::json& inputs) {
    std::string out;
    if (!inputs.is_object()) return out;
    for (auto it = inputs.begin(); it != inputs.end(); ++it) {
        if (!out.empty()) out += ", ";
        out += it.key() + "=" +
               (it.value().is_string() ? it.value().get<std::string>() : it.value().dump());
    }
    return out;
}

}  // namespace

std::string render_trace_text(const nlohmann::json& trace) {
    require_fields(trace);
    std::ostringstream out;
    out << "question: " << trace.at("question").get<std::string>() << "\n";

    const auto& repair = trace.at("repair");
    out << "parser verdict: " << repair.at("verdict").get<std::string>() << "\n";
    for (const auto& r : repair.at("repairs")) {
        out << "  repair [" << r.at("rule").get<std::string>() << "] line "
            << r.at("line").get<int>() << "\n";
        out << "    - " << r.value("before", "") << "\n";
        out << "    + " << r.value("after", "") << "\n";
    }

    const auto& execution = trace.at("execution");
    out << "status: " << execution.at("status").get<std::string>() << "\n";
    for (const auto& event : execution.at("events")) {
        out << "  [" << event.at("line").get<int>() << "] "
            << event.at("output_var").get<std::string>() << " = "
            << event.at("module").get<std::string>() << "(" << inputs_line(event.at("inputs"))
            << ") -> " << event.at("output").get<std::string>() << "\n";
        const auto& backend = event.at("backend");
        if (backend.is_array()) {
            for (const auto& vote : backend) {
                if (vote.contains("backend"))
                    out << "      vote " << vote.at("backend").get<std::string>() << ": "
                        << (vote.contains("answer") ? vote.at("answer").dump()
                                                    : vote.value("detections", nlohmann::json()).dump())
                        << "\n";
            }
        }
    }

    if (trace.contains("verifier") && !trace.at("verifier").is_null()) {
        const auto& v = trace.at("verifier");
        out << "verifier: has_clues=" << (v.at("has_clues").get<bool>() ? "yes" : "no")
            << " confidence=" << v.at("confidence").get<std::string>()
            << (v.at("overwritten").get<bool>() ? " (answer overwritten)" : "") << "\n";
    }
    out << "answer: " << trace.at("answer").get<std::string>() << "\n";
    return out.str();
}

std::string render_trace_html(const nlohmann::json& trace) {
    require_fields(trace);
    std::ostringstream out;
    out << "<!doctype html>\n<html><head><meta charset=\"utf-8\"><title>execution trace</title>\n"
        << "<style>body{font-family:monospace} .repair{color:#a40} .del{color:#a00} "
        << ".add{color:#070} details{margin-left:2em}</style></head><body>\n";
    out << "<h2>" << escape_html(trace.at("question").get<std::string>()) << "</h2>\n";

    const auto& repair = trace.at("repair");
    out << "<p>parser verdict: <b>" << escape_html(repair.at("verdict").get<std::string>())
        << "</b></p>\n";
    if (!repair.at("repairs").empty()) {
        out << "<ul>\n";
        for (const auto& r : repair.at("repairs")) {
            out << "<li class=\"repair\">" << escape_html(r.at("rule").get<std::string>())
                << " (line " << r.at("line").get<int>() << ")<br>"
                << "<span class=\"del\">- " << escape_html(r.value("before", "")) << "</span><br>"
                << "<span class=\"add\">+ " << escape_html(r.value("after", ""))
                << "</span></li>\n";
        }
        out << "</ul>\n";
    }

    out << "<ol start=\"0\">\n";
    for (const auto& event : trace.at("execution").at("events")) {
        out << "<li>" << escape_html(event.at("output_var").get<std::string>()) << " = "
            << escape_html(event.at("module").get<std::string>()) << "("
            << escape_html(inputs_line(event.at("inputs"))) << ") &rarr; <b>"
            << escape_html(event.at("output").get<std::string>()) << "</b>";
        const auto& backend = event.at("backend");
        if (backend.is_array() && !backend.empty()) {
            out << "\n<details><summary>ensemble votes</summary><pre>"
                << escape_html(backend.dump(2)) << "</pre></details>";
        }
        out << "</li>\n";
    }
    out << "</ol>\n";

    if (trace.contains("verifier") && !trace.at("verifier").is_null()) {
        const auto& v = trace.at("verifier");
        out << "<p>verifier: has_clues=" << (v.at("has_clues").get<bool>() ? "yes" : "no")
            << ", confidence=" << escape_html(v.at("confidence").get<std::string>())
            << (v.at("overwritten").get<bool>() ? ", <b>answer overwritten</b>" : "") << "</p>\n";
        out << "<details><summary>caption</summary><pre>"
            << escape_html(v.at("caption").get<std::string>()) << "</pre></details>\n";
    }
    out << "<h3>answer: " << escape_html(trace.at("answer").get<std::string>()) << "</h3>\n";
    out << "</body></html>\n";
    return out.str();
}

}  // namespace planscript
