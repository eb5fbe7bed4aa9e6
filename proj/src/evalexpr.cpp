#include "planscript/evalexpr.hpp"

#include <cctype>
#include <vector>

#include "planscript/script.hpp"

namespace planscript {

namespace {

std::string_view trim_view(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

bool is_digit_string(std::string_view s) {
    if (!s.empty() && s[0] == '-') s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

std::string CoercedValue::display() const {
    switch (kind) {
        case Kind::Number: return std::to_string(number);
        case Kind::Boolean: return boolean ? "yes" : "no";
        case Kind::Text: return text;
    }
    return {};
}

bool CoercedValue::operator==(const CoercedValue& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case Kind::Number: return number == o.number;
        case Kind::Boolean: return boolean == o.boolean;
        case Kind::Text: return text == o.text;
    }
    return false;
}

CoercedValue coerce(std::string_view raw) {
    std::string_view t = trim_view(raw);
    std::string low = lower(t);
    if (low == "yes") return CoercedValue::boolean_val(true);
    if (low == "no") return CoercedValue::boolean_val(false);
    if (is_digit_string(t)) {
        try {
            return CoercedValue::num(std::stoll(std::string(t)));
        } catch (const std::out_of_range&) {
            // digit strings beyond the integer range stay text
        }
    }
    return CoercedValue::text_val(std::string(raw));
}

std::string substitute(std::string_view tmpl, const Env& env) {
    std::string out;
    out.reserve(tmpl.size());
    size_t i = 0;
    while (i < tmpl.size()) {
        char c = tmpl[i];
        if (c != '{') {
            out += c;
            ++i;
            continue;
        }
        size_t close = tmpl.find('}', i + 1);
        if (close == std::string_view::npos) {
            out += c;
            ++i;
            continue;
        }
        std::string name(tmpl.substr(i + 1, close - i - 1));
        if (!is_var_name(name)) {
            out += c;
            ++i;
            continue;
        }
        if (!env.contains(name)) throw UnboundVariableError(name);
        out += env.get(name).display();
        i = close + 1;
    }
    return out;
}

std::string rewrite_yes_no(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    size_t i = 0;
    while (i < text.size()) {
        bool matched = false;
        if (i + 1 < text.size() && (text[i] == '=' || text[i] == '!') && text[i + 1] == '=') {
            std::string op(text.substr(i, 2));
            size_t j = i + 2;
            while (j < text.size() && (text[j] == ' ' || text[j] == '\t')) ++j;
            if (j < text.size() && text[j] == '\'') {
                size_t close = text.find('\'', j + 1);
                if (close != std::string_view::npos) {
                    std::string word = lower(text.substr(j + 1, close - j - 1));
                    if (word == "yes" || word == "no") {
                        out += op;
                        out += ' ';
                        out += (word == "yes") ? "True" : "False";
                        i = close + 1;
                        matched = true;
                    }
                }
            }
        }
        if (!matched) {
            out += text[i];
            ++i;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

struct Token {
    enum class Type { Number, Word, String, Op, End };
    Type type = Type::End;
    std::string text;
    std::int64_t number = 0;
};

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> toks;
    size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            Token t;
            t.type = Token::Type::Number;
            t.text = std::string(s.substr(start, i - start));
            try {
                t.number = std::stoll(t.text);
            } catch (const std::out_of_range&) {
                throw ExprSyntaxError("number literal " + t.text + " out of range");
            }
            toks.push_back(std::move(t));
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = i;
            while (i < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
                ++i;
            toks.push_back({Token::Type::Word, std::string(s.substr(start, i - start)), 0});
            continue;
        }
        if (c == '\'') {
            size_t close = s.find('\'', i + 1);
            if (close == std::string_view::npos)
                throw ExprSyntaxError("unterminated string literal");
            toks.push_back({Token::Type::String, std::string(s.substr(i + 1, close - i - 1)), 0});
            i = close + 1;
            continue;
        }
        if (c == '=' || c == '!' || c == '<' || c == '>') {
            if (i + 1 < s.size() && s[i + 1] == '=') {
                toks.push_back({Token::Type::Op, std::string(s.substr(i, 2)), 0});
                i += 2;
                continue;
            }
            if (c == '=' || c == '!')
                throw ExprSyntaxError(std::string("stray '") + c + "' (did you mean '" + c + "='?)");
            toks.push_back({Token::Type::Op, std::string(1, c), 0});
            ++i;
            continue;
        }
        if (c == '+' || c == '-' || c == '*' || c == '(' || c == ')') {
            toks.push_back({Token::Type::Op, std::string(1, c), 0});
            ++i;
            continue;
        }
        throw ExprSyntaxError(std::string("unexpected character '") + c + "'");
    }
    toks.push_back({Token::Type::End, "", 0});
    return toks;
}

// Recursive-descent parser. Precedence, loosest first:
//   or < and < not < comparison < in < (+ -) < (*) < unary minus
// Comparisons and `in` do not chain.
struct Parser {
    static constexpr int kMaxDepth = 200;

    std::vector<Token> toks;
    size_t pos = 0;
    int depth = 0;

    struct DepthGuard {
        Parser& parser;
        explicit DepthGuard(Parser& p) : parser(p) {
            if (++parser.depth > kMaxDepth)
                throw ExprSyntaxError("expression nests too deeply");
        }
        ~DepthGuard() { --parser.depth; }
    };

    const Token& peek() const { return toks[pos]; }
    Token take() { return toks[pos++]; }
    bool at_word(std::string_view w) const {
        return peek().type == Token::Type::Word && peek().text == w;
    }
    bool at_op(std::string_view o) const {
        return peek().type == Token::Type::Op && peek().text == o;
    }

    static ExprPtr node(Expr::Op op, ExprPtr lhs = nullptr, ExprPtr rhs = nullptr) {
        auto e = std::make_unique<Expr>();
        e->op = op;
        e->lhs = std::move(lhs);
        e->rhs = std::move(rhs);
        return e;
    }

    ExprPtr parse() {
        ExprPtr e = or_expr();
        if (peek().type != Token::Type::End)
            throw ExprSyntaxError("unexpected trailing token '" + peek().text + "'");
        return e;
    }

    ExprPtr or_expr() {
        DepthGuard guard(*this);
        ExprPtr e = and_expr();
        while (at_word("or")) {
            take();
            e = node(Expr::Op::Or, std::move(e), and_expr());
        }
        return e;
    }

    ExprPtr and_expr() {
        ExprPtr e = not_expr();
        while (at_word("and")) {
            take();
            e = node(Expr::Op::And, std::move(e), not_expr());
        }
        return e;
    }

    ExprPtr not_expr() {
        DepthGuard guard(*this);
        if (at_word("not")) {
            take();
            return node(Expr::Op::Not, not_expr());
        }
        return comparison();
    }

    ExprPtr comparison() {
        ExprPtr e = in_expr();
        static constexpr std::pair<std::string_view, Expr::Op> ops[] = {
            {"==", Expr::Op::Eq}, {"!=", Expr::Op::Ne}, {"<=", Expr::Op::Le},
            {">=", Expr::Op::Ge}, {"<", Expr::Op::Lt},  {">", Expr::Op::Gt},
        };
        for (auto [text, op] : ops) {
            if (at_op(text)) {
                take();
                ExprPtr rhs = in_expr();
                for (auto [t2, _] : ops)
                    if (at_op(t2)) throw ExprSyntaxError("chained comparisons are not allowed");
                return node(op, std::move(e), std::move(rhs));
            }
        }
        return e;
    }

    ExprPtr in_expr() {
        ExprPtr e = additive();
        if (at_word("in")) {
            take();
            ExprPtr rhs = additive();
            if (at_word("in")) throw ExprSyntaxError("chained 'in' is not allowed");
            return node(Expr::Op::In, std::move(e), std::move(rhs));
        }
        return e;
    }

    ExprPtr additive() {
        ExprPtr e = multiplicative();
        while (at_op("+") || at_op("-")) {
            Expr::Op op = at_op("+") ? Expr::Op::Add : Expr::Op::Sub;
            take();
            e = node(op, std::move(e), multiplicative());
        }
        return e;
    }

    ExprPtr multiplicative() {
        ExprPtr e = unary();
        while (at_op("*")) {
            take();
            e = node(Expr::Op::Mul, std::move(e), unary());
        }
        return e;
    }

    ExprPtr unary() {
        DepthGuard guard(*this);
        if (at_op("-")) {
            take();
            return node(Expr::Op::Neg, unary());
        }
        return primary();
    }

    ExprPtr primary() {
        Token t = take();
        switch (t.type) {
            case Token::Type::Number: {
                auto e = node(Expr::Op::NumberLit);
                e->number = t.number;
                return e;
            }
            case Token::Type::String: {
                auto e = node(Expr::Op::StringLit);
                e->text = std::move(t.text);
                return e;
            }
            case Token::Type::Word: {
                if (t.text == "True" || t.text == "False") {
                    auto e = node(Expr::Op::BoolLit);
                    e->boolean = (t.text == "True");
                    return e;
                }
                if (t.text == "and" || t.text == "or" || t.text == "not" || t.text == "in")
                    throw ExprSyntaxError("unexpected keyword '" + t.text + "'");
                auto e = node(Expr::Op::Word);
                e->text = std::move(t.text);
                return e;
            }
            case Token::Type::Op:
                if (t.text == "(") {
                    ExprPtr e = or_expr();
                    if (!at_op(")")) throw ExprSyntaxError("missing ')'");
                    take();
                    return e;
                }
                throw ExprSyntaxError("unexpected operator '" + t.text + "'");
            case Token::Type::End:
                throw ExprSyntaxError("unexpected end of expression");
        }
        throw ExprSyntaxError("unreachable");
    }
};

CoercedValue require_number(const CoercedValue& v, const char* ctx) {
    if (v.kind != CoercedValue::Kind::Number)
        throw TypeMismatchError(std::string(ctx) + " requires numbers, got " + v.display());
    return v;
}

bool require_bool(const CoercedValue& v, const char* ctx) {
    if (v.kind != CoercedValue::Kind::Boolean)
        throw TypeMismatchError(std::string(ctx) + " requires booleans, got " + v.display());
    return v.boolean;
}

std::string require_text(const CoercedValue& v, const char* ctx) {
    if (v.kind != CoercedValue::Kind::Text)
        throw TypeMismatchError(std::string(ctx) + " requires text, got " + v.display());
    return v.text;
}

}  // namespace

ExprPtr parse_expr(std::string_view text) {
    Parser p{lex(text)};
    return p.parse();
}

CoercedValue eval_expr(const Expr& e) {
    using Op = Expr::Op;
    switch (e.op) {
        case Op::NumberLit: return CoercedValue::num(e.number);
        case Op::BoolLit: return CoercedValue::boolean_val(e.boolean);
        case Op::StringLit:
        case Op::Word: return coerce(e.text);

        case Op::Not: return CoercedValue::boolean_val(!require_bool(eval_expr(*e.lhs), "'not'"));
        case Op::Neg: {
            std::int64_t v = require_number(eval_expr(*e.lhs), "unary '-'").number;
            std::int64_t res = 0;
            if (__builtin_sub_overflow(std::int64_t{0}, v, &res))
                throw TypeMismatchError("arithmetic overflow");
            return CoercedValue::num(res);
        }

        case Op::And: {
            bool l = require_bool(eval_expr(*e.lhs), "'and'");
            if (!l) return CoercedValue::boolean_val(false);
            return CoercedValue::boolean_val(require_bool(eval_expr(*e.rhs), "'and'"));
        }
        case Op::Or: {
            bool l = require_bool(eval_expr(*e.lhs), "'or'");
            if (l) return CoercedValue::boolean_val(true);
            return CoercedValue::boolean_val(require_bool(eval_expr(*e.rhs), "'or'"));
        }

        case Op::Eq:
        case Op::Ne: {
            CoercedValue l = eval_expr(*e.lhs), r = eval_expr(*e.rhs);
            bool eq = (l == r);  // different kinds compare unequal
            return CoercedValue::boolean_val(e.op == Op::Eq ? eq : !eq);
        }

        case Op::Lt:
        case Op::Gt:
        case Op::Le:
        case Op::Ge: {
            std::int64_t l = require_number(eval_expr(*e.lhs), "ordering").number;
            std::int64_t r = require_number(eval_expr(*e.rhs), "ordering").number;
            bool res = e.op == Op::Lt   ? l < r
                       : e.op == Op::Gt ? l > r
                       : e.op == Op::Le ? l <= r
                                        : l >= r;
            return CoercedValue::boolean_val(res);
        }

        case Op::In: {
            std::string needle = require_text(eval_expr(*e.lhs), "'in'");
            std::string hay = require_text(eval_expr(*e.rhs), "'in'");
            return CoercedValue::boolean_val(hay.find(needle) != std::string::npos);
        }

        case Op::Add:
        case Op::Sub:
        case Op::Mul: {
            std::int64_t l = require_number(eval_expr(*e.lhs), "arithmetic").number;
            std::int64_t r = require_number(eval_expr(*e.rhs), "arithmetic").number;
            std::int64_t res = 0;
            bool overflow = e.op == Op::Add   ? __builtin_add_overflow(l, r, &res)
                            : e.op == Op::Sub ? __builtin_sub_overflow(l, r, &res)
                                              : __builtin_mul_overflow(l, r, &res);
            if (overflow) throw TypeMismatchError("arithmetic overflow");
            return CoercedValue::num(res);
        }
    }
    throw ExprSyntaxError("unreachable");
}

CoercedValue eval_template(std::string_view expr_template, const Env& env) {
    std::string substituted = substitute(expr_template, env);
    std::string rewritten = rewrite_yes_no(substituted);
    ExprPtr ast = parse_expr(rewritten);
    return eval_expr(*ast);
}

}  // namespace planscript
