#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "planscript/value.hpp"

namespace planscript {

// Closed expression language for EVAL instructions. No host eval anywhere:
// expressions are parsed into a small AST and interpreted with the coercion
// rules below. String atoms are coerced before any operator applies, so
// "yes"/"no" become booleans and digit strings become numbers.

struct ExprSyntaxError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TypeMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnboundVariableError : std::runtime_error {
    std::string name;
    explicit UnboundVariableError(std::string var)
        : std::runtime_error("unbound variable {" + var + "}"), name(std::move(var)) {}
};

struct CoercedValue {
    enum class Kind { Number, Boolean, Text };
    Kind kind = Kind::Text;
    std::int64_t number = 0;
    bool boolean = false;
    std::string text;

    static CoercedValue num(std::int64_t n) { return {Kind::Number, n, false, {}}; }
    static CoercedValue boolean_val(bool b) { return {Kind::Boolean, 0, b, {}}; }
    static CoercedValue text_val(std::string s) { return {Kind::Text, 0, false, std::move(s)}; }

    // yes/no for booleans, decimal for numbers, verbatim text
    std::string display() const;
    bool operator==(const CoercedValue& o) const;
};

// Digit strings (optional leading minus) become numbers; "yes"/"no"
// (case-insensitive, trimmed) become booleans; anything else stays text.
CoercedValue coerce(std::string_view raw);

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
    enum class Op {
        NumberLit, BoolLit, StringLit, Word,
        Not, Neg,
        And, Or,
        Eq, Ne, Lt, Gt, Le, Ge,
        In,
        Add, Sub, Mul,
    };
    Op op;
    std::int64_t number = 0;
    bool boolean = false;
    std::string text;
    ExprPtr lhs, rhs;
};

// Replaces each {VAR} placeholder with the display form of env[VAR].
// Unknown placeholders throw UnboundVariableError.
std::string substitute(std::string_view expr_template, const Env& env);

// == 'yes' -> == True, == 'no' -> == False (and the != forms), whitespace
// tolerated around the operator. Idempotent; everything else untouched.
std::string rewrite_yes_no(std::string_view expr_text);

ExprPtr parse_expr(std::string_view text);

CoercedValue eval_expr(const Expr& expr);

// substitute -> rewrite_yes_no -> parse -> eval
CoercedValue eval_template(std::string_view expr_template, const Env& env);

}  // namespace planscript
