#include "planscript/verifier.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "planscript/evalexpr.hpp"
#include "planscript/gateway.hpp"
#include "planscript/lexicon.hpp"

namespace planscript {

std::string_view confidence_name(Confidence c) {
    return c == Confidence::High ? "high" : "normal";
}

nlohmann::json CaptionVerdict::to_json() const {
    return {{"caption", caption},
            {"has_clues", has_clues},
            {"caption_answer", has_clues ? nlohmann::json(caption_answer) : nlohmann::json()},
            {"final_answer", final_answer},
            {"confidence", std::string(confidence_name(confidence))},
            {"overwritten", overwritten}};
}

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::stringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

std::vector<std::string> word_tokens(const std::string& text) {
    std::vector<std::string> words;
    std::string cur;
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else if (!cur.empty()) {
            words.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) words.push_back(cur);
    return words;
}

std::string trim_copy(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// "3. The answer is no" -> "no"; quoted tokens win when present.
std::string extract_final_token(const std::string& line) {
    for (char quote : {'\'', '"'}) {
        size_t open = line.find(quote);
        if (open == std::string::npos) continue;
        size_t close = line.find(quote, open + 1);
        if (close != std::string::npos && close > open + 1)
            return normalize_answer(line.substr(open + 1, close - open - 1));
    }
    std::string body = trim_copy(line);
    while (!body.empty() && (std::ispunct(static_cast<unsigned char>(body.back()))))
        body.pop_back();
    // strip one enumeration marker ("3." / "3)") only when a space follows,
    // so bare numeric answers survive
    size_t digits = 0;
    while (digits < body.size() && std::isdigit(static_cast<unsigned char>(body[digits])))
        ++digits;
    if (digits > 0 && digits + 1 < body.size() &&
        (body[digits] == '.' || body[digits] == ')') && body[digits + 1] == ' ')
        body = trim_copy(body.substr(digits + 2));
    static const char* kPrefixes[] = {"the answer is", "answer:", "final answer:", "answer is"};
    std::string low = to_lower(body);
    for (const char* prefix : kPrefixes) {
        if (low.rfind(prefix, 0) == 0) {
            body = trim_copy(body.substr(std::string(prefix).size()));
            break;
        }
    }
    return normalize_answer(body);
}

}  // namespace

std::tuple<bool, std::string, std::string> parse_llm_verdict(const std::string& raw) {
    bool has_clues = false;
    bool found_clue_token = false;
    for (const std::string& word : word_tokens(raw)) {
        if (word == "yes" || word == "no") {
            has_clues = (word == "yes");
            found_clue_token = true;
            break;
        }
    }
    std::string answer;
    auto lines = split_lines(raw);
    for (auto it = lines.rbegin(); it != lines.rend(); ++it) {
        if (trim_copy(*it).empty()) continue;
        answer = extract_final_token(*it);
        break;
    }
    if (!found_clue_token || !has_clues || answer.empty()) return {false, "", answer};
    return {true, answer, answer};
}

std::string default_verifier_prompt() {
    return "You are checking the answer to a visual question using only an image caption.\n"
           "Caption: {CAPTION}\n"
           "Question: {QUESTION}\n"
           "Answer these three items, each on its own line:\n"
           "1. Does the caption explicitly mention clues to the answer? (yes or no)\n"
           "2. Based only on the caption, what would the answer be?\n"
           "3. State that answer succinctly in one word.\n";
}

CaptionAnalysis analyze_caption(const ImageRef& image, const std::string& question,
                                Gateway& gateway, const std::string& prompt_template) {
    CaptionAnalysis analysis;
    try {
        analysis.caption = gateway.caption(image);
        std::string prompt = prompt_template;
        auto replace_all = [&prompt](const std::string& from, const std::string& to) {
            size_t pos = 0;
            while ((pos = prompt.find(from, pos)) != std::string::npos) {
                prompt.replace(pos, from.size(), to);
                pos += to.size();
            }
        };
        replace_all("{CAPTION}", analysis.caption);
        replace_all("{QUESTION}", question);
        std::string reply = gateway.complete(prompt);
        auto [has_clues, caption_answer, _] = parse_llm_verdict(reply);
        analysis.has_clues = has_clues;
        analysis.caption_answer = caption_answer;
    } catch (const FixtureMiss&) {
        throw;
    } catch (const std::exception&) {
        analysis = CaptionAnalysis{};
        analysis.degraded = true;
    }
    return analysis;
}

CaptionVerdict finalize_verdict(const CaptionAnalysis& analysis,
                                const std::string& executor_answer) {
    CaptionVerdict verdict;
    verdict.caption = analysis.caption;
    verdict.final_answer = executor_answer;
    if (analysis.degraded || !analysis.has_clues || analysis.caption_answer.empty())
        return verdict;

    verdict.has_clues = true;
    verdict.caption_answer = analysis.caption_answer;
    if (normalize_answer(analysis.caption_answer) == normalize_answer(executor_answer)) {
        verdict.confidence = Confidence::High;
    } else {
        verdict.final_answer = analysis.caption_answer;
        verdict.overwritten = true;
    }
    return verdict;
}

CaptionVerdict verify_with_caption(const ImageRef& image, const std::string& question,
                                   const std::string& executor_answer, Gateway& gateway,
                                   const std::string& prompt_template) {
    return finalize_verdict(analyze_caption(image, question, gateway, prompt_template),
                            executor_answer);
}

SelectFusion select_fuse(const AnswerDistribution& vqa_branch,
                         const AnswerDistribution& caption_branch) {
    if (vqa_branch.probs.size() != caption_branch.probs.size())
        throw std::invalid_argument("distribution lengths differ: " +
                                    std::to_string(vqa_branch.probs.size()) + " vs " +
                                    std::to_string(caption_branch.probs.size()));
    if (vqa_branch.probs.empty()) throw std::invalid_argument("empty answer distribution");

    auto argmax = [](const std::vector<double>& probs) {
        size_t best = 0;
        for (size_t i = 1; i < probs.size(); ++i)
            if (probs[i] > probs[best]) best = i;
        return best;
    };
    const size_t vqa_best = argmax(vqa_branch.probs);
    const size_t cap_best = argmax(caption_branch.probs);

    SelectFusion fusion;
    fusion.overwritten = caption_branch.probs[cap_best] > vqa_branch.probs[vqa_best];
    fusion.chosen_index = fusion.overwritten ? cap_best : vqa_best;
    return fusion;
}

AnswerDistribution distribution_from_scores(const std::vector<double>& scores) {
    AnswerDistribution dist;
    double total = 0.0;
    for (double s : scores) total += std::max(0.0, s);
    if (total <= 0.0) {
        dist.probs.assign(scores.size(), scores.empty() ? 0.0 : 1.0 / scores.size());
        return dist;
    }
    dist.probs.reserve(scores.size());
    for (double s : scores) dist.probs.push_back(std::max(0.0, s) / total);
    return dist;
}

}  // namespace planscript
