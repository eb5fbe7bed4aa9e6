#pragma once

// Independent reference semantics for the EVAL mini-language, written
// directly against the coercion table and kept separate from the engine's
// evaluator so the two can be compared over random expressions.

#include <cctype>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "planscript/evalexpr.hpp"

namespace refeval {

struct RefError {};  // any type error

using RefValue = std::variant<long long, bool, std::string>;

inline std::string ref_trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline RefValue ref_coerce(const std::string& raw) {
    std::string t = ref_trim(raw);
    std::string low;
    for (char c : t) low += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (low == "yes") return true;
    if (low == "no") return false;
    std::string digits = t;
    bool neg = false;
    if (!digits.empty() && digits[0] == '-') {
        neg = true;
        digits.erase(0, 1);
    }
    if (!digits.empty() &&
        digits.find_first_not_of("0123456789") == std::string::npos) {
        try {
            long long v = std::stoll(digits);
            return neg ? -v : v;
        } catch (const std::out_of_range&) {
            return raw;  // out-of-range digit strings stay text
        }
    }
    return raw;
}

// Evaluates the engine's AST with independently written semantics.
// Returns nullopt on a type error.
inline std::optional<RefValue> ref_eval(const planscript::Expr& e) {
    using Op = planscript::Expr::Op;
    auto num = [](const std::optional<RefValue>& v) -> std::optional<long long> {
        if (v && std::holds_alternative<long long>(*v)) return std::get<long long>(*v);
        return std::nullopt;
    };
    auto boolean = [](const std::optional<RefValue>& v) -> std::optional<bool> {
        if (v && std::holds_alternative<bool>(*v)) return std::get<bool>(*v);
        return std::nullopt;
    };
    auto text = [](const std::optional<RefValue>& v) -> std::optional<std::string> {
        if (v && std::holds_alternative<std::string>(*v)) return std::get<std::string>(*v);
        return std::nullopt;
    };

    switch (e.op) {
        case Op::NumberLit: return RefValue{static_cast<long long>(e.number)};
        case Op::BoolLit: return RefValue{e.boolean};
        case Op::StringLit:
        case Op::Word: return ref_coerce(e.text);
        case Op::Not: {
            auto v = boolean(ref_eval(*e.lhs));
            if (!v) return std::nullopt;
            return RefValue{!*v};
        }
        case Op::Neg: {
            auto v = num(ref_eval(*e.lhs));
            if (!v) return std::nullopt;
            return RefValue{-*v};
        }
        case Op::And: {
            auto l = boolean(ref_eval(*e.lhs));
            if (!l) return std::nullopt;
            if (!*l) return RefValue{false};
            auto r = boolean(ref_eval(*e.rhs));
            if (!r) return std::nullopt;
            return RefValue{*r};
        }
        case Op::Or: {
            auto l = boolean(ref_eval(*e.lhs));
            if (!l) return std::nullopt;
            if (*l) return RefValue{true};
            auto r = boolean(ref_eval(*e.rhs));
            if (!r) return std::nullopt;
            return RefValue{*r};
        }
        case Op::Eq:
        case Op::Ne: {
            auto l = ref_eval(*e.lhs);
            auto r = ref_eval(*e.rhs);
            if (!l || !r) return std::nullopt;
            bool eq = (*l == *r);  // cross-kind variants compare unequal
            return RefValue{e.op == Op::Eq ? eq : !eq};
        }
        case Op::Lt:
        case Op::Gt:
        case Op::Le:
        case Op::Ge: {
            auto l = num(ref_eval(*e.lhs));
            auto r = num(ref_eval(*e.rhs));
            if (!l || !r) return std::nullopt;
            switch (e.op) {
                case Op::Lt: return RefValue{*l < *r};
                case Op::Gt: return RefValue{*l > *r};
                case Op::Le: return RefValue{*l <= *r};
                default: return RefValue{*l >= *r};
            }
        }
        case Op::In: {
            auto l = text(ref_eval(*e.lhs));
            auto r = text(ref_eval(*e.rhs));
            if (!l || !r) return std::nullopt;
            return RefValue{r->find(*l) != std::string::npos};
        }
        case Op::Add:
        case Op::Sub:
        case Op::Mul: {
            auto l = num(ref_eval(*e.lhs));
            auto r = num(ref_eval(*e.rhs));
            if (!l || !r) return std::nullopt;
            switch (e.op) {
                case Op::Add: return RefValue{*l + *r};
                case Op::Sub: return RefValue{*l - *r};
                default: return RefValue{*l * *r};
            }
        }
    }
    return std::nullopt;
}

// Generates random expression TEXT over the small value domain; parsing it
// exercises the lexer/parser on every case.
class ExprGenerator {
public:
    explicit ExprGenerator(unsigned seed) : rng_(seed) {}

    std::string atom() {
        switch (pick(6)) {
            case 0: return std::to_string(int_in(-3, 9));
            case 1: return pick(2) ? "'yes'" : "'no'";
            case 2: return pick(2) ? "yes" : "no";
            case 3: return "'" + std::to_string(int_in(0, 9)) + "'";
            case 4: {
                static const char* kWords[] = {"red",  "cat",   "left", "top",
                                               "blue", "chair", "dog",  "top left"};
                std::string w = kWords[pick(8)];
                return w.find(' ') != std::string::npos || pick(2) ? "'" + w + "'" : w;
            }
            default: return pick(2) ? "True" : "False";
        }
    }

    std::string expr(int depth) {
        if (depth <= 0 || pick(4) == 0) return atom();
        switch (pick(12)) {
            case 0: return "(" + expr(depth - 1) + " and " + expr(depth - 1) + ")";
            case 1: return "(" + expr(depth - 1) + " or " + expr(depth - 1) + ")";
            case 2: return "(not " + expr(depth - 1) + ")";
            case 3: return "(" + expr(depth - 1) + " == " + expr(depth - 1) + ")";
            case 4: return "(" + expr(depth - 1) + " != " + expr(depth - 1) + ")";
            case 5: return "(" + expr(depth - 1) + " < " + expr(depth - 1) + ")";
            case 6: return "(" + expr(depth - 1) + " > " + expr(depth - 1) + ")";
            case 7: return "(" + expr(depth - 1) + " <= " + expr(depth - 1) + ")";
            case 8: return "(" + expr(depth - 1) + " >= " + expr(depth - 1) + ")";
            case 9: return "(" + expr(depth - 1) + " in " + expr(depth - 1) + ")";
            case 10: return "(" + expr(depth - 1) + " + " + expr(depth - 1) + ")";
            default:
                return pick(2) ? "(" + expr(depth - 1) + " - " + expr(depth - 1) + ")"
                               : "(" + expr(depth - 1) + " * " + expr(depth - 1) + ")";
        }
    }

private:
    int pick(int n) { return static_cast<int>(rng_() % static_cast<unsigned>(n)); }
    int int_in(int lo, int hi) { return lo + pick(hi - lo + 1); }
    std::mt19937 rng_;
};

// Runs both evaluators on one expression text; returns true when they agree
// (same value, or both reject with a type error).
inline bool evaluators_agree(const std::string& text, std::string* detail = nullptr) {
    planscript::ExprPtr ast = planscript::parse_expr(text);

    std::optional<planscript::CoercedValue> engine;
    bool engine_error = false;
    try {
        engine = planscript::eval_expr(*ast);
    } catch (const planscript::TypeMismatchError&) {
        engine_error = true;
    }
    std::optional<RefValue> reference = ref_eval(*ast);

    if (engine_error || !reference) {
        if (engine_error && !reference) return true;
        if (detail) *detail = text + ": one side rejected, the other did not";
        return false;
    }

    using Kind = planscript::CoercedValue::Kind;
    bool same = false;
    if (engine->kind == Kind::Number && std::holds_alternative<long long>(*reference))
        same = engine->number == std::get<long long>(*reference);
    else if (engine->kind == Kind::Boolean && std::holds_alternative<bool>(*reference))
        same = engine->boolean == std::get<bool>(*reference);
    else if (engine->kind == Kind::Text && std::holds_alternative<std::string>(*reference))
        same = engine->text == std::get<std::string>(*reference);
    if (!same && detail)
        *detail = text + ": engine=" + engine->display() + " reference differs";
    return same;
}

}  // namespace refeval
