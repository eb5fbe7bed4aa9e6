#pragma once

#include <string>
#include <vector>

#include "planscript/lexicon.hpp"
#include "planscript/registry.hpp"
#include "planscript/script.hpp"
#include "planscript/value.hpp"

#include "json.hpp"

namespace planscript {

// Stable rule identifiers, asserted by the corrupted-script corpus.
namespace rules {
inline constexpr const char* kFormatMalformed = "format.malformed";
inline constexpr const char* kModuleUnknown = "module.unknown";
inline constexpr const char* kArgMissing = "arg.missing";
inline constexpr const char* kArgUnknown = "arg.unknown";
inline constexpr const char* kArgType = "arg.type";
inline constexpr const char* kVarUnbound = "var.unbound";
inline constexpr const char* kVarReassigned = "var.reassigned";
inline constexpr const char* kEvalSyntaxError = "eval.syntax_error";
inline constexpr const char* kEvalYesToTrue = "eval.yes_to_true";
inline constexpr const char* kEvalNoToFalse = "eval.no_to_false";
inline constexpr const char* kLocNonNounFallback = "loc.non_noun_fallback";
inline constexpr const char* kLocObjectNotInQuestion = "loc.object_not_in_question";
inline constexpr const char* kLocPluralFlag = "loc.plural_flag";
inline constexpr const char* kLocQuantifierRewrite = "loc.quantifier_rewrite";
inline constexpr const char* kLocRewriteUnsupported = "loc.rewrite_unsupported";
inline constexpr const char* kStepDryRunError = "step.dry_run_error";
}  // namespace rules

enum class Verdict { CleanPass, Repaired, Fallback };

std::string_view verdict_name(Verdict v);

struct RepairRecord {
    int line_index = 0;
    std::string rule_id;
    std::string before;
    std::string after;
};

struct RepairOutcome {
    Verdict verdict = Verdict::CleanPass;
    Script script;
    std::vector<RepairRecord> repairs;

    bool fallback_used() const { return verdict == Verdict::Fallback; }
    nlohmann::json to_json() const;
};

struct RepairContext {
    int num_box_arrays = 0;
    int num_image_arrays = 0;
};

struct RewriteUnsupported : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Direct VQA + RESULT replacement script. For NLVR2 the statement is
// rephrased as a yes/no question over the concatenated image.
Script make_fallback(const std::string& question, TaskKind kind);

// Rewrites the LOC chain at loc_index into the array-indexed form:
// the LOC output becomes BOX_ARRAY_k, every downstream CROP consuming it
// turns into GET + CROP over IMAGE_ARRAY_m elements, and the consuming
// VQA lines are renamed accordingly. Throws RewriteUnsupported when the
// chain does not have the LOC -> CROP -> VQA shape.
void rewrite_quantifier_block(std::vector<Instruction>& lines, size_t loc_index,
                              RepairContext& ctx);

// Abstract dry-run of the whole script: applies the soft repairs
// (yes/no rewrite, plural flag, quantifier rewrite) and resolves every
// hard error to the fallback script. Never throws.
RepairOutcome validate_and_repair(const Script& script, const std::string& question,
                                  const ModuleRegistry& registry, TaskKind kind,
                                  const Lexicon& lexicon = default_lexicon());

// Same, but starting from raw script text: a parse failure counts as the
// wrong-script-format error class and yields the fallback.
RepairOutcome validate_and_repair_text(const std::string& text, const std::string& question,
                                       const ModuleRegistry& registry, TaskKind kind,
                                       const Lexicon& lexicon = default_lexicon());

std::vector<std::string> question_tokens(const std::string& question);

}  // namespace planscript
