#include "doctest.h"

#include <random>

#include "planscript/verifier.hpp"

#include "support/test_support.hpp"

using namespace planscript;
using testsupport::StubBackend;

namespace {

// capverif-style gateway: the caption names both children, the verdict reply
// answers the three items.
Gateway capverif_gateway() {
    Gateway gateway;
    auto cap = std::make_shared<StubBackend>("captioner", BackendRole::Caption, 1);
    cap->on_caption = [](const ImageRef&) {
        return std::string("A boy and a girl are sitting on a bench in the park.");
    };
    auto llm = std::make_shared<StubBackend>("chat", BackendRole::Llm, 1);
    llm->on_complete = [](const std::string& prompt) -> std::string {
        REQUIRE(prompt.find("A boy and a girl") != std::string::npos);
        return "1. Yes, the caption mentions both a boy and a girl.\n"
               "2. The boy and the girl do not have the same gender.\n"
               "3. The answer is no.";
    };
    gateway.add_backend(cap);
    gateway.add_backend(llm);
    return gateway;
}

}  // namespace

TEST_CASE("parse_llm_verdict on ten handwritten replies") {
    using V = std::tuple<bool, std::string, std::string>;
    CHECK(parse_llm_verdict("1. Yes ...\n2. ...\n3. The answer is no") == V{true, "no", "no"});
    CHECK(parse_llm_verdict("1. Yes\n2. blue looks right\n3. 'blue'") == V{true, "blue", "blue"});
    CHECK(parse_llm_verdict("Yes.\nThe caption shows two dogs.\nAnswer: 2") == V{true, "2", "2"});
    CHECK(parse_llm_verdict("1. No, the caption does not say.\n3. The answer is red") ==
          V{false, "", "red"});
    CHECK(std::get<0>(parse_llm_verdict("total garbage ###")) == false);
    CHECK(std::get<1>(parse_llm_verdict("total garbage ###")) == "");
    CHECK(std::get<0>(parse_llm_verdict("")) == false);
    CHECK(parse_llm_verdict("1. yes\n2. likely a cat\n3. cat") == V{true, "cat", "cat"});
    CHECK(parse_llm_verdict("1. YES\n2. -\n3. \"green\"") == V{true, "green", "green"});
    // only a final answer, no clue statement: conservative, no clues
    CHECK(std::get<0>(parse_llm_verdict("The answer is unclear")) == false);
    CHECK(parse_llm_verdict("1. Yes\n2. \n3. 4") == V{true, "4", "4"});
}

TEST_CASE("executor yes + clueful caption overwrites to no") {
    Gateway gateway = capverif_gateway();
    CaptionVerdict verdict =
        verify_with_caption(testsupport::image("park"), "Do the two people have the same gender?",
                            "yes", gateway, default_verifier_prompt());
    CHECK(verdict.has_clues);
    CHECK(verdict.caption_answer == "no");
    CHECK(verdict.final_answer == "no");
    CHECK(verdict.overwritten);
    CHECK(verdict.confidence == Confidence::Normal);
}

TEST_CASE("executor no + agreeing caption is high confidence") {
    Gateway gateway = capverif_gateway();
    CaptionVerdict verdict =
        verify_with_caption(testsupport::image("park"), "Do the two people have the same gender?",
                            "no", gateway, default_verifier_prompt());
    CHECK(verdict.has_clues);
    CHECK(verdict.final_answer == "no");
    CHECK_FALSE(verdict.overwritten);
    CHECK(verdict.confidence == Confidence::High);
}

TEST_CASE("caption backend failure degrades to pass-through") {
    Gateway gateway;  // nothing configured
    CaptionVerdict verdict = verify_with_caption(testsupport::image("img"), "q?", "maybe",
                                                 gateway, default_verifier_prompt());
    CHECK_FALSE(verdict.has_clues);
    CHECK(verdict.final_answer == "maybe");
    CHECK(verdict.confidence == Confidence::Normal);
    CHECK_FALSE(verdict.overwritten);
}

TEST_CASE("clueless captions keep the executor answer") {
    Gateway gateway;
    auto cap = std::make_shared<StubBackend>("captioner", BackendRole::Caption, 1);
    cap->on_caption = [](const ImageRef&) { return std::string("A blurry photo."); };
    auto llm = std::make_shared<StubBackend>("chat", BackendRole::Llm, 1);
    llm->on_complete = [](const std::string&) {
        return std::string("1. No, the caption gives no clue.\n2. -\n3. unknown");
    };
    gateway.add_backend(cap);
    gateway.add_backend(llm);
    CaptionVerdict verdict = verify_with_caption(testsupport::image("img"), "is the cat black?",
                                                 "yes", gateway, default_verifier_prompt());
    CHECK_FALSE(verdict.has_clues);
    CHECK(verdict.final_answer == "yes");
}

TEST_CASE("pass-through safety: the answer only changes when clues exist") {
    // across all four (has_clues, agree) combinations
    CaptionAnalysis analysis;
    analysis.caption = "c";

    analysis.has_clues = false;
    analysis.caption_answer = "no";
    CHECK(finalize_verdict(analysis, "yes").final_answer == "yes");

    analysis.has_clues = true;
    CHECK(finalize_verdict(analysis, "yes").final_answer == "no");
    CHECK(finalize_verdict(analysis, "yes").overwritten);

    analysis.caption_answer = "yes";
    CaptionVerdict agree = finalize_verdict(analysis, "yes");
    CHECK(agree.final_answer == "yes");
    CHECK(agree.confidence == Confidence::High);
    CHECK_FALSE(agree.overwritten);

    // case differences are agreement, not an overwrite
    analysis.caption_answer = "Yes";
    CaptionVerdict folded = finalize_verdict(analysis, "yes");
    CHECK_FALSE(folded.overwritten);
    CHECK(folded.confidence == Confidence::High);
}

TEST_CASE("select_fuse on the worked distribution pairs") {
    AnswerDistribution uniform{{0.2, 0.2, 0.2, 0.2, 0.2}};
    AnswerDistribution peaked{{0.05, 0.9, 0.02, 0.02, 0.01}};
    SelectFusion fused = select_fuse(uniform, peaked);
    CHECK(fused.chosen_index == 1);
    CHECK(fused.overwritten);

    AnswerDistribution vqa{{0.6, 0.1, 0.1, 0.1, 0.1}};
    AnswerDistribution caption{{0.5, 0.2, 0.1, 0.1, 0.1}};
    SelectFusion kept = select_fuse(vqa, caption);
    CHECK(kept.chosen_index == 0);
    CHECK_FALSE(kept.overwritten);

    // exact tie on the maxima keeps the VQA branch (strict inequality)
    AnswerDistribution p{{0.5, 0.5}};
    AnswerDistribution q{{0.25, 0.5}};
    SelectFusion tie = select_fuse(p, q);
    CHECK_FALSE(tie.overwritten);
    CHECK(tie.chosen_index == 0);  // lowest index among equal maxima

    CHECK_THROWS_AS(select_fuse(AnswerDistribution{{0.5}}, AnswerDistribution{{0.5, 0.5}}),
                    std::invalid_argument);
}

TEST_CASE("property: select_fuse equals the brute-force rule on random pairs") {
    std::mt19937 rng(123);
    auto random_dist = [&rng](size_t n) {
        AnswerDistribution d;
        for (size_t i = 0; i < n; ++i) d.probs.push_back((rng() % 1000) / 999.0);
        return d;
    };
    for (int round = 0; round < 1000; ++round) {
        size_t n = 2 + rng() % 5;
        AnswerDistribution p = random_dist(n), q = random_dist(n);
        SelectFusion fused = select_fuse(p, q);

        double max_p = 0.0, max_q = 0.0;
        size_t arg_p = 0, arg_q = 0;
        for (size_t i = 0; i < n; ++i) {
            if (p.probs[i] > max_p) { max_p = p.probs[i]; arg_p = i; }
            if (q.probs[i] > max_q) { max_q = q.probs[i]; arg_q = i; }
        }
        bool expect_overwrite = max_q > max_p;
        CHECK(fused.overwritten == expect_overwrite);
        CHECK(fused.chosen_index == (expect_overwrite ? arg_q : arg_p));
    }
}

TEST_CASE("select_fuse permutes with the choices") {
    AnswerDistribution p{{0.1, 0.7, 0.2}};
    AnswerDistribution q{{0.8, 0.1, 0.1}};
    SelectFusion base = select_fuse(p, q);
    // rotate both distributions left by one
    AnswerDistribution pr{{0.7, 0.2, 0.1}};
    AnswerDistribution qr{{0.1, 0.1, 0.8}};
    SelectFusion rotated = select_fuse(pr, qr);
    CHECK(base.overwritten == rotated.overwritten);
    CHECK(rotated.chosen_index == (base.chosen_index + 2) % 3);
}

TEST_CASE("distribution_from_scores normalizes and handles degenerate input") {
    AnswerDistribution d = distribution_from_scores({80, 10, 10});
    CHECK(d.probs[0] == doctest::Approx(0.8));
    AnswerDistribution zero = distribution_from_scores({0, 0});
    CHECK(zero.probs[0] == doctest::Approx(0.5));
    AnswerDistribution neg = distribution_from_scores({-5, 5});
    CHECK(neg.probs[0] == doctest::Approx(0.0));
    CHECK(neg.probs[1] == doctest::Approx(1.0));
}
