#include "doctest.h"

#include "planscript/evalexpr.hpp"

#include "support/eval_reference.hpp"

using namespace planscript;

TEST_CASE("coerce follows the conversion table") {
    CHECK(coerce("3") == CoercedValue::num(3));
    CHECK(coerce("-12") == CoercedValue::num(-12));
    CHECK(coerce("no") == CoercedValue::boolean_val(false));
    CHECK(coerce("YES") == CoercedValue::boolean_val(true));
    CHECK(coerce(" yes ") == CoercedValue::boolean_val(true));
    CHECK(coerce("carpet") == CoercedValue::text_val("carpet"));
    CHECK(coerce("") == CoercedValue::text_val(""));
    CHECK(coerce("3.5") == CoercedValue::text_val("3.5"));
    CHECK(coerce("-") == CoercedValue::text_val("-"));
}

TEST_CASE("coercion is idempotent through the display form") {
    for (const char* raw : {"3", "-7", "yes", "no", "carpet", "True", "0", "top left"}) {
        CoercedValue once = coerce(raw);
        CHECK(coerce(once.display()) == once);
    }
}

TEST_CASE("substitute replaces bound placeholders") {
    Env env;
    env.bind("ANSWER0", Value("yes"));
    CHECK(substitute("{ANSWER0} == True", env) == "yes == True");

    Env two;
    two.bind("A", Value("2"));
    two.bind("B", Value("3"));
    CHECK(substitute("{A} + {B} < 4", two) == "2 + 3 < 4");

    Env typed;
    typed.bind("N", Value(std::int64_t{5}));
    typed.bind("B", Value(true));
    CHECK(substitute("{N} {B}", typed) == "5 True");
}

TEST_CASE("substitute raises on unbound placeholders") {
    Env env;
    CHECK_THROWS_AS(substitute("{MISSING} == 1", env), UnboundVariableError);
    // non-placeholder braces pass through
    CHECK(substitute("{not a var}", env) == "{not a var}");
}

TEST_CASE("rewrite_yes_no rewrites the two target patterns") {
    CHECK(rewrite_yes_no("{ANSWER0} == 'yes'") == "{ANSWER0} == True");
    CHECK(rewrite_yes_no("{A} == 'no'") == "{A} == False");
    CHECK(rewrite_yes_no("{A} != 'yes'") == "{A} != True");
    CHECK(rewrite_yes_no("{A} != 'no'") == "{A} != False");
    CHECK(rewrite_yes_no("{A} =='yes'") == "{A} == True");
    CHECK(rewrite_yes_no("{A} ==   'YES'") == "{A} == True");
    CHECK(rewrite_yes_no("{A} == 'red'") == "{A} == 'red'");
    CHECK(rewrite_yes_no("'yes' and {A} == 'yes'") == "'yes' and {A} == True");
}

TEST_CASE("rewrite_yes_no is idempotent") {
    for (const char* text :
         {"{ANSWER0} == 'yes'", "{A} == 'no' or {B} != 'yes'", "{A} == 'red'", "1 + 2"}) {
        std::string once = rewrite_yes_no(text);
        CHECK(rewrite_yes_no(once) == once);
    }
}

TEST_CASE("parse_expr builds the expected shapes") {
    ExprPtr lt = parse_expr("2 + 3 < 4");
    REQUIRE(lt->op == Expr::Op::Lt);
    CHECK(lt->lhs->op == Expr::Op::Add);
    CHECK(lt->rhs->op == Expr::Op::NumberLit);

    ExprPtr eq = parse_expr("yes == True");
    REQUIRE(eq->op == Expr::Op::Eq);
    CHECK(eq->lhs->op == Expr::Op::Word);
    CHECK(eq->lhs->text == "yes");
    CHECK(eq->rhs->op == Expr::Op::BoolLit);
}

TEST_CASE("parse_expr rejects malformed expressions") {
    CHECK_THROWS_AS(parse_expr("== True"), ExprSyntaxError);
    CHECK_THROWS_AS(parse_expr("1 <"), ExprSyntaxError);
    CHECK_THROWS_AS(parse_expr("(1 + 2"), ExprSyntaxError);
    CHECK_THROWS_AS(parse_expr("1 ="), ExprSyntaxError);
    CHECK_THROWS_AS(parse_expr("'open"), ExprSyntaxError);
    CHECK_THROWS_AS(parse_expr("a b"), ExprSyntaxError);
    CHECK_THROWS_AS(parse_expr(""), ExprSyntaxError);
    CHECK_THROWS_AS(parse_expr("1 ? 2"), ExprSyntaxError);
}

TEST_CASE("chained comparisons are rejected at parse time") {
    CHECK_THROWS_AS(parse_expr("1 < 2 < 3"), ExprSyntaxError);
    CHECK_THROWS_AS(parse_expr("1 == 2 == 3"), ExprSyntaxError);
    CHECK_THROWS_AS(parse_expr("'a' in 'ab' in 'abc'"), ExprSyntaxError);
    CHECK_NOTHROW(parse_expr("(1 < 2) == True"));
}

namespace {
CoercedValue eval_text(const std::string& text) {
    return eval_expr(*parse_expr(text));
}
}  // namespace

TEST_CASE("eval_expr computes the worked examples") {
    CHECK(eval_text("2 + 3 < 4") == CoercedValue::boolean_val(false));
    CHECK(eval_text("yes == True") == CoercedValue::boolean_val(true));
    CHECK(eval_text("'left' in 'top left'") == CoercedValue::boolean_val(true));
    CHECK(eval_text("2 < 4 and 3 < 4") == CoercedValue::boolean_val(true));
    CHECK(eval_text("no == False") == CoercedValue::boolean_val(true));
    CHECK(eval_text("'3' == 3") == CoercedValue::boolean_val(true));
    CHECK(eval_text("not no") == CoercedValue::boolean_val(true));
    CHECK(eval_text("-2 + 5") == CoercedValue::num(3));
    CHECK(eval_text("2 * 3 + 1") == CoercedValue::num(7));
    CHECK(eval_text("'female' == 'male'") == CoercedValue::boolean_val(false));
}

TEST_CASE("eval_expr enforces operand kinds") {
    CHECK_THROWS_AS(eval_text("'cat' < 'dog'"), TypeMismatchError);
    CHECK_THROWS_AS(eval_text("yes + 1"), TypeMismatchError);
    CHECK_THROWS_AS(eval_text("1 and True"), TypeMismatchError);
    CHECK_THROWS_AS(eval_text("not 3"), TypeMismatchError);
    CHECK_THROWS_AS(eval_text("1 in 'abc'"), TypeMismatchError);
    CHECK_THROWS_AS(eval_text("-'cat'"), TypeMismatchError);
    // cross-kind equality is false, never an error
    CHECK(eval_text("'cat' == 3") == CoercedValue::boolean_val(false));
    CHECK(eval_text("'cat' != True") == CoercedValue::boolean_val(true));
}

TEST_CASE("short-circuit suppresses errors on the untaken side") {
    CHECK(eval_text("no and ('a' < 'b')") == CoercedValue::boolean_val(false));
    CHECK(eval_text("yes or (1 + 'x' == 0)") == CoercedValue::boolean_val(true));
    CHECK_THROWS_AS(eval_text("yes and ('a' < 'b')"), TypeMismatchError);
}

TEST_CASE("eval_template runs the full substitute/rewrite/parse/eval chain") {
    Env env;
    env.bind("ANSWER0", Value("yes"));
    CHECK(eval_template("{ANSWER0} == 'yes'", env) == CoercedValue::boolean_val(true));

    Env counts;
    counts.bind("ANSWER0", Value("2"));
    counts.bind("ANSWER1", Value("3"));
    CHECK(eval_template("{ANSWER0} + {ANSWER1} < 4", counts) ==
          CoercedValue::boolean_val(false));
    CHECK(eval_template("{ANSWER0} < 4 and {ANSWER1} < 4", counts) ==
          CoercedValue::boolean_val(true));
}

TEST_CASE("oversized numbers never escape as foreign exceptions") {
    CHECK(coerce("999999999999999999999999999") ==
          CoercedValue::text_val("999999999999999999999999999"));
    CHECK_THROWS_AS(parse_expr("999999999999999999999999999 + 1"), ExprSyntaxError);
    CHECK_THROWS_AS(eval_text("9223372036854775807 + 1"), TypeMismatchError);
    CHECK_THROWS_AS(eval_text("9223372036854775807 * 2"), TypeMismatchError);
    CHECK_THROWS_AS(eval_text("-9223372036854775807 - 2"), TypeMismatchError);
}

TEST_CASE("pathological nesting is a syntax error, not a crash") {
    std::string deep(5000, '(');
    deep += "1";
    deep += std::string(5000, ')');
    CHECK_THROWS_AS(parse_expr(deep), ExprSyntaxError);
    CHECK_THROWS_AS(parse_expr(std::string(5000, '-') + "1"), ExprSyntaxError);

    std::string nots;
    for (int i = 0; i < 5000; ++i) nots += "not ";
    nots += "True";
    CHECK_THROWS_AS(parse_expr(nots), ExprSyntaxError);

    // moderate nesting stays fine
    std::string ok(50, '(');
    ok += "1";
    ok += std::string(50, ')');
    CHECK(eval_text(ok) == CoercedValue::num(1));
}

TEST_CASE("property: engine matches the reference evaluator on random expressions") {
    refeval::ExprGenerator gen(7);
    int checked = 0;
    for (int i = 0; i < 10000; ++i) {
        std::string text = gen.expr(3);
        std::string detail;
        bool agree = refeval::evaluators_agree(text, &detail);
        if (!agree) FAIL(detail);
        ++checked;
    }
    CHECK(checked == 10000);
}
