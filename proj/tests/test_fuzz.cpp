#include "doctest.h"

#include <random>

#include "planscript/executor.hpp"
#include "planscript/ssparser.hpp"

#include "support/test_support.hpp"

using namespace planscript;

namespace {

// Script fuzzer: mixes plausible GQA-shaped programs with corruptions
// (unknown modules, unbound variables, broken expressions, stray text).
class ScriptFuzzer {
public:
    explicit ScriptFuzzer(unsigned seed) : rng_(seed) {}

    std::string question() {
        static const char* kQuestions[] = {
            "Is the dog asleep?",
            "Are both people wearing hats?",
            "Do all the dogs look happy?",
            "Is there any grass that is not tall?",
            "Are the glasses full?",
            "What color is the umbrella?",
            "Is each cat on the couch?",
            "Is the bird standing?",
        };
        return kQuestions[pick(8)];
    }

    std::string script() {
        std::string text;
        const int lines = pick(7);
        for (int i = 0; i < lines; ++i) {
            switch (pick(12)) {
                case 0: text += "BOX" + idx() + "=LOC(image=IMAGE,object='" + object() + "')\n"; break;
                case 1: text += "IMAGE" + idx() + "=CROP(image=IMAGE,box=BOX" + idx() + ")\n"; break;
                case 2:
                    text += "ANSWER" + idx() + "=VQA(image=" + image_ref() + ",question='" +
                            question() + "')\n";
                    break;
                case 3: text += "ANSWER" + idx() + "=COUNT(box=BOX" + idx() + ")\n"; break;
                case 4:
                    text += "ANSWER" + idx() + "=EVAL(expr='" + expr() + "')\n";
                    break;
                case 5: text += "FINAL_ANSWER=RESULT(var=ANSWER" + idx() + ")\n"; break;
                case 6: text += "X" + idx() + "=GET(array=BOX" + idx() + ",index=" + idx() + ")\n"; break;
                case 7: text += "M" + idx() + "=SEGMENT(image=IMAGE,object='cat')\n"; break;
                case 8: text += "broken line without a call\n"; break;
                case 9: text += "# a comment\n"; break;
                case 10:
                    text += "ANSWER" + idx() + "=EVAL(expr=\"{ANSWER" + idx() + "} == 'yes'\")\n";
                    break;
                default:
                    text += "ANSWER" + idx() + "=VQA(image=IMAGE,question='" + question() + "')\n";
                    break;
            }
        }
        if (pick(3)) text += "FINAL_ANSWER=RESULT(var=ANSWER0)\n";
        return text;
    }

private:
    std::string idx() { return std::to_string(pick(3)); }
    std::string object() {
        static const char* kObjects[] = {"dog", "person", "grass", "standing", "umbrella",
                                         "glasses", "zorp"};
        return kObjects[pick(7)];
    }
    std::string image_ref() {
        static const char* kRefs[] = {"IMAGE", "IMAGE0", "IMAGE1", "IMG9"};
        return kRefs[pick(4)];
    }
    std::string expr() {
        static const char* kExprs[] = {"{ANSWER0} == True", "{ANSWER1} > 0",
                                       "{ANSWER0} + {ANSWER1} < 4", "== yes", "((1)",
                                       "{ANSWER9} == 1", "1 + 2 * 3"};
        return kExprs[pick(7)];
    }
    int pick(int n) { return static_cast<int>(rng_() % static_cast<unsigned>(n)); }
    std::mt19937 rng_;
};

Gateway permissive_gateway() {
    Gateway gateway;
    auto det = std::make_shared<testsupport::StubBackend>("det", BackendRole::Detector, 1);
    det->on_detect = [](const ImageRef&, const std::string& object) {
        if (object == "zorp") return BoxArray{};
        return BoxArray{Box::make(10, 10, 60, 60, 0.9), Box::make(70, 70, 120, 120, 0.8)};
    };
    gateway.add_backend(det);
    gateway.add_backend(testsupport::universal_vqa("yes"));
    return gateway;
}

}  // namespace

TEST_CASE("property: validation is total, trichotomous and idempotent") {
    ScriptFuzzer fuzzer(0xC0FFEE);
    ModuleRegistry registry = ModuleRegistry::for_task(TaskKind::Gqa);
    int verdicts[3] = {0, 0, 0};
    for (int round = 0; round < 3000; ++round) {
        std::string question = fuzzer.question();
        std::string text = fuzzer.script();
        CAPTURE(round);
        CAPTURE(text);

        RepairOutcome outcome;
        REQUIRE_NOTHROW(outcome = validate_and_repair_text(text, question, registry,
                                                           TaskKind::Gqa));
        verdicts[static_cast<int>(outcome.verdict)]++;

        if (outcome.verdict == Verdict::CleanPass) {
            REQUIRE(outcome.repairs.empty());
            REQUIRE(outcome.script == parse_script(text));
        }
        if (outcome.verdict == Verdict::Fallback)
            REQUIRE(outcome.script == make_fallback(question, TaskKind::Gqa));

        RepairOutcome again;
        REQUIRE_NOTHROW(
            again = validate_and_repair(outcome.script, question, registry, TaskKind::Gqa));
        REQUIRE(again.verdict == Verdict::CleanPass);
        REQUIRE(again.script == outcome.script);
    }
    // the fuzzer reaches every verdict
    CHECK(verdicts[0] > 0);
    CHECK(verdicts[1] > 0);
    CHECK(verdicts[2] > 0);
}

TEST_CASE("property: validated scripts always execute to a status") {
    ScriptFuzzer fuzzer(0xBEEF);
    ModuleRegistry registry = ModuleRegistry::for_task(TaskKind::Gqa);
    Gateway gateway = permissive_gateway();
    for (int round = 0; round < 1000; ++round) {
        std::string question = fuzzer.question();
        std::string text = fuzzer.script();
        CAPTURE(round);
        CAPTURE(text);

        RepairOutcome outcome =
            validate_and_repair_text(text, question, registry, TaskKind::Gqa);
        ExecOptions options;
        options.question = question;
        options.collect_trace = false;
        Env seed;
        seed.bind("IMAGE", Value(testsupport::image("fuzz", 200, 200)));

        ExecutionResult result;
        REQUIRE_NOTHROW(result = execute(outcome.script, seed, gateway, options));
        REQUIRE_FALSE(result.final_answer.empty());
        if (result.status == ExecStatus::Ok || result.status == ExecStatus::RuntimeFallbackUsed)
            REQUIRE(result.final_answer != "");
    }
}
