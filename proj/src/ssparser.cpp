#include "planscript/ssparser.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "planscript/evalexpr.hpp"

namespace planscript {

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::CleanPass: return "CleanPass";
        case Verdict::Repaired: return "Repaired";
        case Verdict::Fallback: return "Fallback";
    }
    return "?";
}

nlohmann::json RepairOutcome::to_json() const {
    nlohmann::json reps = nlohmann::json::array();
    for (const auto& r : repairs)
        reps.push_back({{"line", r.line_index},
                        {"rule", r.rule_id},
                        {"before", r.before},
                        {"after", r.after}});
    return {{"verdict", std::string(verdict_name(verdict))},
            {"repairs", std::move(reps)},
            {"fallback_used", fallback_used()}};
}

std::vector<std::string> question_tokens(const std::string& question) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char ch : question) {
        if (std::isalnum(static_cast<unsigned char>(ch))) {
            cur += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        } else if (!cur.empty()) {
            tokens.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(cur);
    return tokens;
}

namespace {

// Questions holding both quote kinds cannot appear inside one string
// literal; drop the single quotes in that rare case.
std::string quotable_question(const std::string& s) {
    if (s.find('\'') == std::string::npos || s.find('"') == std::string::npos) return s;
    std::string out;
    out.reserve(s.size());
    for (char c : s)
        if (c != '\'') out += c;
    return out;
}

std::string last_word_of(const std::string& phrase) {
    auto tokens = question_tokens(phrase);
    return tokens.empty() ? std::string() : tokens.back();
}

bool contains_token(const std::vector<std::string>& tokens, const std::string& word) {
    return std::find(tokens.begin(), tokens.end(), word) != tokens.end();
}

bool mentions_placeholder(const std::string& templ, const std::string& var) {
    return templ.find("{" + var + "}") != std::string::npos;
}

Value placeholder_boxes() {
    return Value(BoxArray{Box{0, 0, 100, 100, 1.0}});
}

Value placeholder_image(const std::string& out_var) {
    return Value(ImageRef{"dry:" + out_var, 100, 100});
}

struct FallbackSignal {
    RepairRecord record;
};

class Walker {
public:
    Walker(const Script& script, const std::string& question, const ModuleRegistry& registry,
           TaskKind kind, const Lexicon& lexicon)
        : lines_(script.instructions),
          question_(question),
          tokens_(question_tokens(question)),
          registry_(registry),
          kind_(kind),
          lexicon_(lexicon) {
        dry_.bind("IMAGE", placeholder_image("IMAGE"));
        if (kind == TaskKind::Nlvr2) {
            dry_.bind("LEFT", placeholder_image("LEFT"));
            dry_.bind("RIGHT", placeholder_image("RIGHT"));
        }
    }

    RepairOutcome run(const Script& input) {
        try {
            for (size_t i = 0; i < lines_.size();) {
                size_t next = process(i);
                i = next;
            }
        } catch (const FallbackSignal& f) {
            RepairOutcome out;
            out.verdict = Verdict::Fallback;
            out.repairs = std::move(repairs_);
            out.repairs.push_back(f.record);
            out.script = make_fallback(question_, kind_);
            return out;
        }
        RepairOutcome out;
        out.repairs = std::move(repairs_);
        if (out.repairs.empty()) {
            out.verdict = Verdict::CleanPass;
            out.script = input;
        } else {
            out.verdict = Verdict::Repaired;
            out.script.instructions = lines_;
            out.script.source_text = render_script(out.script);
        }
        return out;
    }

private:
    [[noreturn]] void fail(size_t i, const char* rule, const std::string& detail) {
        RepairRecord rec;
        rec.line_index = static_cast<int>(i);
        rec.rule_id = rule;
        rec.before = i < lines_.size() ? lines_[i].render() : std::string();
        rec.after = detail;
        throw FallbackSignal{std::move(rec)};
    }

    void record(size_t i, const char* rule, std::string before, std::string after) {
        repairs_.push_back({static_cast<int>(i), rule, std::move(before), std::move(after)});
    }

    void bind_output(size_t i, const std::string& name, Value v) {
        if (dry_.contains(name))
            fail(i, rules::kVarReassigned, "variable " + name + " assigned twice");
        dry_.bind(name, std::move(v));
    }

    void check_signature(size_t i, const Instruction& instr, const ModuleSignature& sig) {
        for (const auto& [key, spec] : sig.args) {
            if (spec.required && !instr.find_arg(key))
                fail(i, rules::kArgMissing, instr.module_name + " requires argument '" + key + "'");
        }
        for (const auto& [key, value] : instr.args) {
            auto it = sig.args.find(key);
            if (it == sig.args.end())
                fail(i, rules::kArgUnknown, instr.module_name + " has no argument '" + key + "'");
            bool ok = false;
            switch (it->second.kind) {
                case ArgSpec::Kind::Var: ok = value.kind == ArgValue::Kind::VarRef; break;
                case ArgSpec::Kind::Str: ok = value.kind == ArgValue::Kind::StringLiteral; break;
                case ArgSpec::Kind::Num: ok = value.kind == ArgValue::Kind::NumberLiteral; break;
                case ArgSpec::Kind::Bool: ok = value.kind == ArgValue::Kind::BoolLiteral; break;
            }
            if (!ok)
                fail(i, rules::kArgType,
                     "argument '" + key + "' of " + instr.module_name + " has the wrong kind");
        }
    }

    const Value& require_bound(size_t i, const std::string& var) {
        if (!dry_.contains(var))
            fail(i, rules::kVarUnbound, "variable " + var + " is not defined at this point");
        return dry_.get(var);
    }

    // Returns the index of the next line to process.
    size_t process(size_t i) {
        Instruction& instr = lines_[i];
        const ModuleSignature* sig = registry_.find(instr.module_name);
        if (!sig)
            fail(i, rules::kModuleUnknown, "module " + instr.module_name + " does not exist");
        check_signature(i, instr, *sig);

        const std::string& mod = instr.module_name;
        if (mod == "EVAL") return process_eval(i);
        if (mod == "LOC") return process_loc(i);
        if (mod == "VQA" || mod == "SELECT") {
            if (mod == "VQA") require_bound(i, instr.find_arg("image")->text);
            else require_bound(i, instr.find_arg("context")->text);
            bind_output(i, instr.output_var, Value("0"));
            return i + 1;
        }
        if (mod == "CROP" || mod.rfind("CROP_", 0) == 0) {
            require_bound(i, instr.find_arg("image")->text);
            const Value& box = require_bound(i, instr.find_arg("box")->text);
            if (box.kind() != Value::Kind::Box && box.kind() != Value::Kind::Boxes)
                fail(i, rules::kStepDryRunError, "CROP box argument is not a box");
            bind_output(i, instr.output_var, placeholder_image(instr.output_var));
            return i + 1;
        }
        if (mod == "COUNT") {
            const Value& box = require_bound(i, instr.find_arg("box")->text);
            if (box.kind() != Value::Kind::Boxes)
                fail(i, rules::kStepDryRunError, "COUNT argument is not a box array");
            bind_output(i, instr.output_var, Value(std::int64_t{1}));
            return i + 1;
        }
        if (mod == "GET") {
            const Value& arr = require_bound(i, instr.find_arg("array")->text);
            if (instr.find_arg("index")->number < 0)
                fail(i, rules::kStepDryRunError, "GET index is negative");
            if (arr.kind() == Value::Kind::Boxes)
                bind_output(i, instr.output_var, Value(Box{0, 0, 100, 100, 1.0}));
            else if (arr.kind() == Value::Kind::Images)
                bind_output(i, instr.output_var, placeholder_image(instr.output_var));
            else
                fail(i, rules::kStepDryRunError, "GET argument is not an array");
            return i + 1;
        }
        if (mod == "RESULT") {
            require_bound(i, instr.find_arg("var")->text);
            bind_output(i, instr.output_var, Value("0"));
            return i + 1;
        }
        fail(i, rules::kModuleUnknown, "module " + mod + " has no dry-run handler");
    }

    size_t process_eval(size_t i) {
        Instruction& instr = lines_[i];
        std::string before_line = instr.render();
        const ArgValue* expr = instr.find_arg("expr");
        std::string templ = expr->text;
        std::string rewritten = rewrite_yes_no(templ);
        if (rewritten != templ) {
            bool has_yes = rewrite_yes_no_changed(templ, "yes");
            bool has_no = rewrite_yes_no_changed(templ, "no");
            for (auto& [key, value] : instr.args)
                if (key == "expr") value = ArgValue::str(rewritten);
            std::string after_line = instr.render();
            if (has_yes) record(i, rules::kEvalYesToTrue, before_line, after_line);
            if (has_no) record(i, rules::kEvalNoToFalse, before_line, after_line);
        }

        std::string substituted;
        try {
            substituted = substitute(rewritten, dry_);
        } catch (const UnboundVariableError& e) {
            fail(i, rules::kVarUnbound, "EVAL references undefined variable " + e.name);
        }
        try {
            parse_expr(substituted);
        } catch (const ExprSyntaxError& e) {
            fail(i, rules::kEvalSyntaxError, std::string("EVAL expression invalid: ") + e.what());
        }
        bind_output(i, instr.output_var, Value(true));
        return i + 1;
    }

    static bool rewrite_yes_no_changed(const std::string& templ, const std::string& word) {
        // detect whether the yes (or no) pattern specifically fired
        std::string low = to_lower(templ);
        size_t pos = 0;
        while ((pos = low.find('\'', pos)) != std::string::npos) {
            size_t close = low.find('\'', pos + 1);
            if (close == std::string::npos) break;
            if (low.substr(pos + 1, close - pos - 1) == word) {
                size_t q = pos;
                while (q > 0 && (low[q - 1] == ' ' || low[q - 1] == '\t')) --q;
                if (q >= 2 && low[q - 1] == '=' && (low[q - 2] == '=' || low[q - 2] == '!'))
                    return true;
            }
            pos = close + 1;
        }
        return false;
    }

    size_t process_loc(size_t i) {
        Instruction& instr = lines_[i];
        const std::string object = instr.find_arg("object")->text;
        const std::string last = last_word_of(object);

        if (last.empty() || lexicon_.word_class(last) != WordClass::Noun)
            fail(i, rules::kLocNonNounFallback,
                 "LOC object '" + object + "' does not end in a noun");
        require_bound(i, instr.find_arg("image")->text);

        const std::string plural_form = pluralize(last);
        if (!contains_token(tokens_, last) && !contains_token(tokens_, plural_form))
            fail(i, rules::kLocObjectNotInQuestion,
                 "LOC object '" + last + "' does not appear in the question");

        // Lines produced by an earlier rewrite pass are taken as-is.
        if (instr.output_var.rfind("BOX_ARRAY_", 0) == 0) {
            bind_output(i, instr.output_var, placeholder_boxes());
            return i + 1;
        }

        static const char* kQuantifiers[] = {"all", "every", "both", "each"};
        bool quantified = std::any_of(std::begin(kQuantifiers), std::end(kQuantifiers),
                                      [&](const char* q) { return contains_token(tokens_, q); });
        if (quantified) {
            if (dry_.contains(instr.output_var))
                fail(i, rules::kVarReassigned,
                     "variable " + instr.output_var + " assigned twice");
            std::string before_line = instr.render();
            try {
                rewrite_quantifier_block(lines_, i, ctx_);
            } catch (const RewriteUnsupported& e) {
                fail(i, rules::kLocRewriteUnsupported, e.what());
            }
            record(i, rules::kLocQuantifierRewrite, before_line, lines_[i].render());
            return i;  // reprocess the renamed LOC line
        }

        const auto* lex = dynamic_cast<const BundledLexicon*>(&lexicon_);
        static const BundledLexicon fallback_lex;
        bool object_is_plural = is_plural_noun(last, lex ? *lex : fallback_lex);
        bool question_has_plural = contains_token(tokens_, plural_form) && plural_form != last;
        if (!instr.find_arg("plural") && (object_is_plural || question_has_plural)) {
            std::string before_line = instr.render();
            instr.args.emplace_back("plural", ArgValue::boolean_lit(true));
            record(i, rules::kLocPluralFlag, before_line, instr.render());
        }
        bind_output(i, instr.output_var, placeholder_boxes());
        return i + 1;
    }

    std::vector<Instruction> lines_;
    std::string question_;
    std::vector<std::string> tokens_;
    const ModuleRegistry& registry_;
    TaskKind kind_;
    const Lexicon& lexicon_;
    Env dry_;
    RepairContext ctx_;
    std::vector<RepairRecord> repairs_;
};

}  // namespace

Script make_fallback(const std::string& question, TaskKind kind) {
    std::string q = quotable_question(question);
    if (kind == TaskKind::Nlvr2) {
        while (!q.empty() && (q.back() == '.' || q.back() == '?' || q.back() == '!' ||
                              std::isspace(static_cast<unsigned char>(q.back()))))
            q.pop_back();
        if (!q.empty()) q[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(q[0])));
        q = "Is it true that " + q + "?";
    }
    Script script;
    Instruction vqa;
    vqa.line_index = 0;
    vqa.output_var = "ANSWER0";
    vqa.module_name = "VQA";
    vqa.args.emplace_back("image", ArgValue::var("IMAGE"));
    vqa.args.emplace_back("question", ArgValue::str(q));
    Instruction result;
    result.line_index = 1;
    result.output_var = "FINAL_ANSWER";
    result.module_name = "RESULT";
    result.args.emplace_back("var", ArgValue::var("ANSWER0"));
    script.instructions.push_back(std::move(vqa));
    script.instructions.push_back(std::move(result));
    script.source_text = render_script(script);
    return script;
}

void rewrite_quantifier_block(std::vector<Instruction>& lines, size_t loc_index,
                              RepairContext& ctx) {
    const Instruction& loc = lines[loc_index];
    const std::string old_out = loc.output_var;

    auto consumes_var = [](const Instruction& instr, const std::string& var) {
        for (const auto& [key, value] : instr.args) {
            if (value.kind == ArgValue::Kind::VarRef && value.text == var) return true;
            if (value.kind == ArgValue::Kind::StringLiteral && mentions_placeholder(value.text, var))
                return true;
        }
        return false;
    };

    // Every consumer of the LOC output must be a CROP taking it as `box`.
    std::vector<size_t> crop_indices;
    for (size_t j = loc_index + 1; j < lines.size(); ++j) {
        if (!consumes_var(lines[j], old_out)) continue;
        const Instruction& cand = lines[j];
        const ArgValue* box = cand.find_arg("box");
        if (cand.module_name != "CROP" || !box || box->kind != ArgValue::Kind::VarRef ||
            box->text != old_out)
            throw RewriteUnsupported("output of " + old_out +
                                     " is consumed outside a CROP box argument");
        crop_indices.push_back(j);
    }
    if (crop_indices.empty())
        throw RewriteUnsupported("no CROP consumes the LOC output " + old_out);

    // Each crop output must feed VQA image arguments only.
    for (size_t j : crop_indices) {
        const std::string& crop_out = lines[j].output_var;
        size_t vqa_consumers = 0;
        for (size_t k = j + 1; k < lines.size(); ++k) {
            if (!consumes_var(lines[k], crop_out)) continue;
            const Instruction& cand = lines[k];
            const ArgValue* image = cand.find_arg("image");
            if (cand.module_name != "VQA" || !image || image->kind != ArgValue::Kind::VarRef ||
                image->text != crop_out)
                throw RewriteUnsupported("crop output " + crop_out +
                                         " is consumed outside a VQA image argument");
            ++vqa_consumers;
        }
        if (vqa_consumers == 0)
            throw RewriteUnsupported("crop output " + crop_out + " feeds no VQA call");
    }

    const int k = ctx.num_box_arrays;
    const int m = ctx.num_image_arrays;
    const std::string box_array = "BOX_ARRAY_" + std::to_string(k);

    std::map<std::string, std::string> rename;  // old crop outputs -> array elements
    rename[old_out] = box_array;

    std::vector<Instruction> rewritten;
    rewritten.reserve(lines.size() + crop_indices.size());
    for (size_t j = 0; j < lines.size(); ++j) {
        if (j == loc_index) {
            Instruction array_loc = lines[j];
            array_loc.output_var = box_array;
            std::erase_if(array_loc.args, [](const auto& kv) { return kv.first == "plural"; });
            rewritten.push_back(std::move(array_loc));
            continue;
        }
        auto it = std::find(crop_indices.begin(), crop_indices.end(), j);
        if (it != crop_indices.end()) {
            const size_t element = static_cast<size_t>(it - crop_indices.begin());
            const std::string elem_box = box_array + "_" + std::to_string(element);
            const std::string elem_image =
                "IMAGE_ARRAY_" + std::to_string(m) + "_" + std::to_string(element);
            rename[lines[j].output_var] = elem_image;

            Instruction get;
            get.output_var = elem_box;
            get.module_name = "GET";
            get.args.emplace_back("array", ArgValue::var(box_array));
            get.args.emplace_back("index", ArgValue::num(static_cast<std::int64_t>(element)));
            rewritten.push_back(std::move(get));

            Instruction crop = lines[j];
            crop.output_var = elem_image;
            for (auto& [key, value] : crop.args)
                if (key == "box") value = ArgValue::var(elem_box);
            rewritten.push_back(std::move(crop));
            continue;
        }
        Instruction copy = lines[j];
        if (j > loc_index) {
            // only downstream lines see the renamed variables
            for (auto& [key, value] : copy.args) {
                if (value.kind != ArgValue::Kind::VarRef) continue;
                auto r = rename.find(value.text);
                if (r != rename.end()) value = ArgValue::var(r->second);
            }
        }
        rewritten.push_back(std::move(copy));
    }

    for (size_t j = 0; j < rewritten.size(); ++j) rewritten[j].line_index = static_cast<int>(j);
    lines = std::move(rewritten);
    ++ctx.num_box_arrays;
    ++ctx.num_image_arrays;
}

RepairOutcome validate_and_repair(const Script& script, const std::string& question,
                                  const ModuleRegistry& registry, TaskKind kind,
                                  const Lexicon& lexicon) {
    Walker walker(script, question, registry, kind, lexicon);
    return walker.run(script);
}

RepairOutcome validate_and_repair_text(const std::string& text, const std::string& question,
                                       const ModuleRegistry& registry, TaskKind kind,
                                       const Lexicon& lexicon) {
    Script script;
    try {
        script = parse_script(text);
    } catch (const MalformedLineError& e) {
        RepairOutcome out;
        out.verdict = Verdict::Fallback;
        out.script = make_fallback(question, kind);
        out.repairs.push_back({e.line_index, rules::kFormatMalformed, text, e.what()});
        return out;
    }
    return validate_and_repair(script, question, registry, kind, lexicon);
}

}  // namespace planscript
