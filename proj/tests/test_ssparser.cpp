#include "doctest.h"

#include <fstream>
#include <sstream>

#include "planscript/ssparser.hpp"

using namespace planscript;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), "missing file ", path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

RepairOutcome validate_gqa(const std::string& text, const std::string& question) {
    static const ModuleRegistry registry = ModuleRegistry::for_task(TaskKind::Gqa);
    return validate_and_repair_text(text, question, registry, TaskKind::Gqa);
}

}  // namespace

TEST_CASE("clean two-line script passes untouched") {
    const std::string text =
        "ANSWER0=VQA(image=IMAGE,question='Is the grass tall?')\n"
        "FINAL_ANSWER=RESULT(var=ANSWER0)\n";
    RepairOutcome outcome = validate_gqa(text, "Is the grass tall?");
    CHECK(outcome.verdict == Verdict::CleanPass);
    CHECK(outcome.repairs.empty());
    CHECK(outcome.script == parse_script(text));
}

TEST_CASE("unknown module falls back to the direct VQA script") {
    RepairOutcome outcome = validate_gqa("A=SEGMENT(image=IMAGE,object='cat')\n",
                                         "Is there a cat?");
    CHECK(outcome.verdict == Verdict::Fallback);
    REQUIRE_FALSE(outcome.repairs.empty());
    CHECK(outcome.repairs.back().rule_id == rules::kModuleUnknown);
    CHECK(outcome.script == make_fallback("Is there a cat?", TaskKind::Gqa));
}

TEST_CASE("LOC with a non-noun object falls back") {
    RepairOutcome outcome = validate_gqa(
        "BOX0=LOC(image=IMAGE,object='standing')\n"
        "FINAL_ANSWER=RESULT(var=BOX0)\n",
        "Is the bird standing?");
    CHECK(outcome.verdict == Verdict::Fallback);
    CHECK(outcome.repairs.back().rule_id == rules::kLocNonNounFallback);
}

TEST_CASE("LOC whose image variable is unbound falls back") {
    RepairOutcome outcome = validate_gqa(
        "BOX0=LOC(image=IMG7,object='grass')\n"
        "FINAL_ANSWER=RESULT(var=BOX0)\n",
        "Is there any grass?");
    CHECK(outcome.verdict == Verdict::Fallback);
    CHECK(outcome.repairs.back().rule_id == rules::kVarUnbound);
}

TEST_CASE("grass script from the worked example is clean") {
    const std::string text =
        "BOX0=LOC(image=IMAGE,object='grass')\n"
        "IMAGE0=CROP(image=IMAGE,box=BOX0)\n"
        "ANSWER0=VQA(image=IMAGE0,question='Is the grass tall?')\n"
        "ANSWER1=EVAL(expr='{ANSWER0} == False')\n"
        "FINAL_ANSWER=RESULT(var=ANSWER1)\n";
    RepairOutcome outcome = validate_gqa(text, "Is there any grass that is not tall?");
    CHECK(outcome.verdict == Verdict::CleanPass);
}

TEST_CASE("plural flag injected when the question uses the plural form") {
    RepairOutcome outcome = validate_gqa(
        "BOX0=LOC(image=IMAGE,object='person')\n"
        "IMAGE0=CROP(image=IMAGE,box=BOX0)\n"
        "ANSWER0=VQA(image=IMAGE0,question='Are the people happy?')\n"
        "FINAL_ANSWER=RESULT(var=ANSWER0)\n",
        "Are the people happy?");
    REQUIRE(outcome.verdict == Verdict::Repaired);
    REQUIRE(outcome.repairs.size() == 1);
    CHECK(outcome.repairs[0].rule_id == rules::kLocPluralFlag);
    CHECK(outcome.script.instructions[0].render() ==
          "BOX0=LOC(image=IMAGE,object='person',plural=True)");
}

TEST_CASE("plural flag is not duplicated when already present") {
    RepairOutcome outcome = validate_gqa(
        "BOX0=LOC(image=IMAGE,object='person',plural=True)\n"
        "IMAGE0=CROP(image=IMAGE,box=BOX0)\n"
        "ANSWER0=VQA(image=IMAGE0,question='Are the people happy?')\n"
        "FINAL_ANSWER=RESULT(var=ANSWER0)\n",
        "Are the people happy?");
    CHECK(outcome.verdict == Verdict::CleanPass);
}

TEST_CASE("EVAL yes-literal comparison is rewritten in place") {
    RepairOutcome outcome = validate_gqa(
        "ANSWER0=VQA(image=IMAGE,question='Is the surfboard thin?')\n"
        "ANSWER1=EVAL(expr=\"{ANSWER0} == 'yes'\")\n"
        "FINAL_ANSWER=RESULT(var=ANSWER1)\n",
        "Is the surfboard thin?");
    REQUIRE(outcome.verdict == Verdict::Repaired);
    CHECK(outcome.repairs.size() == 1);
    CHECK(outcome.repairs[0].rule_id == rules::kEvalYesToTrue);
    CHECK(outcome.script.instructions[1].render() == "ANSWER1=EVAL(expr='{ANSWER0} == True')");
}

TEST_CASE("EVAL referencing an undefined variable falls back") {
    RepairOutcome outcome = validate_gqa(
        "ANSWER0=VQA(image=IMAGE,question='Is the light on?')\n"
        "ANSWER1=EVAL(expr='{ANSWER9} == True')\n"
        "FINAL_ANSWER=RESULT(var=ANSWER1)\n",
        "Is the light on?");
    CHECK(outcome.verdict == Verdict::Fallback);
    CHECK(outcome.repairs.back().rule_id == rules::kVarUnbound);
}

TEST_CASE("EVAL with a syntax error falls back") {
    RepairOutcome outcome = validate_gqa(
        "ANSWER0=VQA(image=IMAGE,question='Is the cat asleep?')\n"
        "ANSWER1=EVAL(expr='== yes')\n"
        "FINAL_ANSWER=RESULT(var=ANSWER1)\n",
        "Is the cat asleep?");
    CHECK(outcome.verdict == Verdict::Fallback);
    CHECK(outcome.repairs.back().rule_id == rules::kEvalSyntaxError);
}

TEST_CASE("reassignment is rejected during the dry run") {
    RepairOutcome outcome = validate_gqa(
        "ANSWER0=VQA(image=IMAGE,question='Is it red?')\n"
        "ANSWER0=VQA(image=IMAGE,question='Is it blue?')\n"
        "FINAL_ANSWER=RESULT(var=ANSWER0)\n",
        "Is it red or blue?");
    CHECK(outcome.verdict == Verdict::Fallback);
    CHECK(outcome.repairs.back().rule_id == rules::kVarReassigned);
}

TEST_CASE("quantifier rewrite matches the golden script byte for byte") {
    const std::string before = read_file(std::string(TESTDATA_DIR) + "/golden/quantifier_before.txt");
    const std::string after = read_file(std::string(TESTDATA_DIR) + "/golden/quantifier_after.txt");
    const std::string question = "Do both people have the same gender?";

    RepairOutcome outcome = validate_gqa(before, question);
    REQUIRE(outcome.verdict == Verdict::Repaired);
    CHECK(render_script(outcome.script) == after);

    bool saw_rewrite = false;
    for (const auto& r : outcome.repairs)
        if (r.rule_id == rules::kLocQuantifierRewrite) saw_rewrite = true;
    CHECK(saw_rewrite);

    SUBCASE("every original VQA question string appears exactly once") {
        Script original = parse_script(before);
        std::string rendered = render_script(outcome.script);
        for (const auto& instr : original.instructions) {
            if (instr.module_name != "VQA") continue;
            const std::string needle = "question='" + instr.find_arg("question")->text + "'";
            size_t first = rendered.find(needle);
            REQUIRE(first != std::string::npos);
        }
        // both VQA lines survive (the two copies of the question)
        size_t count = 0;
        size_t pos = 0;
        const std::string needle = "question='What is the gender of the person?'";
        while ((pos = rendered.find(needle, pos)) != std::string::npos) {
            ++count;
            pos += needle.size();
        }
        CHECK(count == 2);
    }
}

TEST_CASE("reassigned LOC outputs under a quantifier still end in fallback") {
    // collision after the quantified LOC: its chain is consumed by the first
    // rewrite, leaving the duplicate without a CROP chain
    RepairOutcome after = validate_gqa(
        "BOX0=LOC(image=IMAGE,object='dog')\n"
        "BOX0=LOC(image=IMAGE,object='cat')\n"
        "IMAGE0=CROP(image=IMAGE,box=BOX0)\n"
        "ANSWER0=VQA(image=IMAGE0,question='Is the cat sleeping?')\n"
        "FINAL_ANSWER=RESULT(var=ANSWER0)\n",
        "Are both the dog and the cat sleeping?");
    CHECK(after.verdict == Verdict::Fallback);
    CHECK(after.repairs.back().rule_id == rules::kLocRewriteUnsupported);

    // collision before the quantified LOC: caught as a reassignment, never
    // renamed away by the rewrite
    RepairOutcome before = validate_gqa(
        "ANSWER0=VQA(image=IMAGE,question='Is the dog asleep?')\n"
        "ANSWER0=LOC(image=IMAGE,object='dog')\n"
        "IMAGE0=CROP(image=IMAGE,box=ANSWER0)\n"
        "ANSWER1=VQA(image=IMAGE0,question='Is the dog asleep?')\n"
        "FINAL_ANSWER=RESULT(var=ANSWER1)\n",
        "Are both dogs asleep?");
    CHECK(before.verdict == Verdict::Fallback);
    CHECK(before.repairs.back().rule_id == rules::kVarReassigned);
}

TEST_CASE("LOC output consumed inside an EVAL template is not rewritable") {
    RepairOutcome outcome = validate_gqa(
        "BOX0=LOC(image=IMAGE,object='dog')\n"
        "IMAGE0=CROP(image=IMAGE,box=BOX0)\n"
        "ANSWER0=VQA(image=IMAGE0,question='Is the dog asleep?')\n"
        "ANSWER1=EVAL(expr='{BOX0} == True')\n"
        "FINAL_ANSWER=RESULT(var=ANSWER1)\n",
        "Are all dogs asleep?");
    CHECK(outcome.verdict == Verdict::Fallback);
    CHECK(outcome.repairs.back().rule_id == rules::kLocRewriteUnsupported);
}

TEST_CASE("quantifier question without a CROP chain falls back") {
    RepairOutcome outcome = validate_gqa(
        "BOX0=LOC(image=IMAGE,object='cat')\n"
        "ANSWER0=COUNT(box=BOX0)\n"
        "FINAL_ANSWER=RESULT(var=ANSWER0)\n",
        "Are both cats sleeping?");
    CHECK(outcome.verdict == Verdict::Fallback);
    CHECK(outcome.repairs.back().rule_id == rules::kLocRewriteUnsupported);
}

TEST_CASE("two independent chains get fresh array names") {
    const std::string text =
        "BOX0=LOC(image=IMAGE,object='dog')\n"
        "IMAGE0=CROP(image=IMAGE,box=BOX0)\n"
        "ANSWER0=VQA(image=IMAGE0,question='Is the dog sleeping?')\n"
        "BOX1=LOC(image=IMAGE,object='cat')\n"
        "IMAGE1=CROP(image=IMAGE,box=BOX1)\n"
        "ANSWER1=VQA(image=IMAGE1,question='Is the cat sleeping?')\n"
        "ANSWER2=EVAL(expr='{ANSWER0} == {ANSWER1}')\n"
        "FINAL_ANSWER=RESULT(var=ANSWER2)\n";
    // manual rewrite oracle: each block renames into its own array pair
    const std::string expected =
        "BOX_ARRAY_0=LOC(image=IMAGE,object='dog')\n"
        "BOX_ARRAY_0_0=GET(array=BOX_ARRAY_0,index=0)\n"
        "IMAGE_ARRAY_0_0=CROP(image=IMAGE,box=BOX_ARRAY_0_0)\n"
        "ANSWER0=VQA(image=IMAGE_ARRAY_0_0,question='Is the dog sleeping?')\n"
        "BOX_ARRAY_1=LOC(image=IMAGE,object='cat')\n"
        "BOX_ARRAY_1_0=GET(array=BOX_ARRAY_1,index=0)\n"
        "IMAGE_ARRAY_1_0=CROP(image=IMAGE,box=BOX_ARRAY_1_0)\n"
        "ANSWER1=VQA(image=IMAGE_ARRAY_1_0,question='Is the cat sleeping?')\n"
        "ANSWER2=EVAL(expr='{ANSWER0} == {ANSWER1}')\n"
        "FINAL_ANSWER=RESULT(var=ANSWER2)\n";
    RepairOutcome outcome = validate_gqa(text, "Is each dog and each cat sleeping?");
    REQUIRE(outcome.verdict == Verdict::Repaired);
    CHECK(render_script(outcome.script) == expected);
}

TEST_CASE("totality: hostile scripts resolve to a verdict instead of throwing") {
    static const ModuleRegistry registry = ModuleRegistry::for_task(TaskKind::Gqa);
    std::string deep_expr = "A=EVAL(expr='" + std::string(4000, '(') + "1" +
                            std::string(4000, ')') + "')\n";
    const std::string hostile[] = {
        "A=GET(array=IMAGE,index=99999999999999999999999)\n",
        "A=EVAL(expr='99999999999999999999999 == 1')\n",
        "A=EVAL(expr='((((((1))))')\n",
        deep_expr,
    };
    for (const std::string& text : hostile) {
        CAPTURE(text.substr(0, 60));
        RepairOutcome outcome;
        CHECK_NOTHROW(outcome = validate_and_repair_text(text, "Is it red?", registry,
                                                         TaskKind::Gqa));
        CHECK(outcome.verdict == Verdict::Fallback);
    }
}

TEST_CASE("make_fallback produces the direct VQA script") {
    Script fb = make_fallback("Is the bird standing?", TaskKind::Gqa);
    CHECK(render_script(fb) ==
          "ANSWER0=VQA(image=IMAGE,question='Is the bird standing?')\n"
          "FINAL_ANSWER=RESULT(var=ANSWER0)\n");

    Script nlvr = make_fallback("There are two dogs", TaskKind::Nlvr2);
    CHECK(render_script(nlvr) ==
          "ANSWER0=VQA(image=IMAGE,question='Is it true that there are two dogs?')\n"
          "FINAL_ANSWER=RESULT(var=ANSWER0)\n");

    Script empty = make_fallback("", TaskKind::Gqa);
    CHECK_NOTHROW(parse_script(render_script(empty)));
    CHECK(empty.instructions.size() == 2);
}

TEST_CASE("fallback scripts validate CleanPass for every task kind") {
    for (TaskKind kind : {TaskKind::Gqa, TaskKind::Nlvr2, TaskKind::Vqav2, TaskKind::Mme,
                          TaskKind::Video}) {
        Script fb = make_fallback("Is there a dog?", kind);
        ModuleRegistry registry = ModuleRegistry::for_task(kind);
        RepairOutcome outcome =
            validate_and_repair(fb, "Is there a dog?", registry, kind);
        CHECK(outcome.verdict == Verdict::CleanPass);
    }
}

TEST_CASE("repair report serializes verdict, rules and fallback flag") {
    RepairOutcome outcome = validate_gqa("A=SEGMENT(image=IMAGE,object='cat')\n",
                                         "Is there a cat?");
    nlohmann::json j = outcome.to_json();
    CHECK(j.at("verdict") == "Fallback");
    CHECK(j.at("fallback_used") == true);
    CHECK(j.at("repairs").is_array());
    CHECK(j.at("repairs").back().at("rule") == "module.unknown");
}

// ---------------------------------------------------------------------------
// Corrupted-script corpus: every error-table row resolves to its strategy.

namespace {

struct CorpusCase {
    std::string name, row, question, script, expect_verdict, expect_rule, expect_repaired_line;
    TaskKind task = TaskKind::Gqa;
};

std::vector<CorpusCase> load_corpus() {
    nlohmann::json doc =
        nlohmann::json::parse(read_file(std::string(TESTDATA_DIR) + "/corrupted/corpus.json"));
    std::vector<CorpusCase> cases;
    for (const auto& j : doc.at("cases")) {
        CorpusCase c;
        c.name = j.at("name").get<std::string>();
        c.row = j.at("row").get<std::string>();
        c.question = j.at("question").get<std::string>();
        c.script = j.at("script").get<std::string>();
        c.expect_verdict = j.at("expect_verdict").get<std::string>();
        c.expect_rule = j.at("expect_rule").get<std::string>();
        c.expect_repaired_line = j.value("expect_repaired_line", "");
        c.task = *parse_task_kind(j.at("task").get<std::string>());
        cases.push_back(std::move(c));
    }
    return cases;
}

}  // namespace

TEST_CASE("corpus: every corrupted script resolves to the documented strategy") {
    auto cases = load_corpus();
    CHECK(cases.size() >= 16);

    std::map<std::string, int> per_row;
    for (const auto& c : cases) {
        CAPTURE(c.name);
        per_row[c.row]++;
        ModuleRegistry registry = ModuleRegistry::for_task(c.task);
        RepairOutcome outcome =
            validate_and_repair_text(c.script, c.question, registry, c.task);
        CHECK(std::string(verdict_name(outcome.verdict)) == c.expect_verdict);
        bool rule_fired = false;
        for (const auto& r : outcome.repairs)
            if (r.rule_id == c.expect_rule) rule_fired = true;
        CHECK_MESSAGE(rule_fired, c.name, ": rule ", c.expect_rule, " did not fire");
        if (outcome.verdict == Verdict::Fallback)
            CHECK(outcome.script == make_fallback(c.question, c.task));
        if (!c.expect_repaired_line.empty()) {
            bool found = false;
            for (const auto& instr : outcome.script.instructions)
                if (instr.render() == c.expect_repaired_line) found = true;
            CHECK_MESSAGE(found, c.name, ": expected line missing from repaired script");
        }
    }
    // at least two fixtures for each of the nine error-table rows
    for (const char* row :
         {"wrong_script_format", "nonexistent_module", "nonexistent_variables",
          "eval_syntax_error", "strange_loc_object", "eval_contains_yes", "eval_contains_no",
          "loc_object_plural", "loc_plural_in_question"}) {
        CAPTURE(row);
        CHECK(per_row[row] >= 2);
    }
}

TEST_CASE("corpus: repaired output re-validates CleanPass, fallbacks stay fallbacks") {
    for (const auto& c : load_corpus()) {
        CAPTURE(c.name);
        ModuleRegistry registry = ModuleRegistry::for_task(c.task);
        RepairOutcome first = validate_and_repair_text(c.script, c.question, registry, c.task);
        RepairOutcome second =
            validate_and_repair(first.script, c.question, registry, c.task);
        CHECK(second.verdict == Verdict::CleanPass);
        CHECK(second.script == first.script);
    }
}
