#pragma once

#include <string>
#include <vector>

#include "planscript/gateway.hpp"

#include "json.hpp"

namespace planscript {

enum class Confidence { Normal, High };

std::string_view confidence_name(Confidence c);

// Caption half of the verdict: everything here is computed without the
// executor answer so it can run concurrently with plan + execute.
struct CaptionAnalysis {
    std::string caption;
    bool has_clues = false;
    std::string caption_answer;
    bool degraded = false;  // backend failure; verdict passes through
};

struct CaptionVerdict {
    std::string caption;
    bool has_clues = false;
    std::string caption_answer;  // empty when no clues
    std::string final_answer;
    Confidence confidence = Confidence::Normal;
    bool overwritten = false;

    nlohmann::json to_json() const;
};

// Tolerant parse of the verdict dialogue reply: the first yes/no token
// answers the clue question, the last nonempty line carries the succinct
// answer. Unparseable replies conservatively report no clues.
std::tuple<bool, std::string, std::string> parse_llm_verdict(const std::string& raw);

// Caption the image and ask the LLM for clue presence + caption-derived
// answer in a single call. Backend failures degrade to a pass-through
// analysis instead of raising.
CaptionAnalysis analyze_caption(const ImageRef& image, const std::string& question,
                                Gateway& gateway, const std::string& prompt_template);

// Pure join step: adopts the caption answer when clues exist and it
// disagrees with the executor answer; agreement upgrades confidence.
CaptionVerdict finalize_verdict(const CaptionAnalysis& analysis,
                                const std::string& executor_answer);

CaptionVerdict verify_with_caption(const ImageRef& image, const std::string& question,
                                   const std::string& executor_answer, Gateway& gateway,
                                   const std::string& prompt_template);

std::string default_verifier_prompt();

// ---------------------------------------------------------------------------
// Video multi-choice fusion

struct AnswerDistribution {
    std::vector<double> probs;
};

struct SelectFusion {
    size_t chosen_index = 0;
    bool overwritten = false;
};

// Caption branch overwrites the VQA branch iff its max probability is
// strictly larger; ties within a branch resolve to the lowest index.
SelectFusion select_fuse(const AnswerDistribution& vqa_branch,
                         const AnswerDistribution& caption_branch);

// Normalizes raw per-choice scores (e.g. LLM-issued 0-100 ratings) into a
// distribution; all-zero input becomes uniform.
AnswerDistribution distribution_from_scores(const std::vector<double>& scores);

}  // namespace planscript
