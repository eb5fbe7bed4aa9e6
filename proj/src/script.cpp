#include "planscript/script.hpp"

#include <cctype>

namespace planscript {

namespace {

bool is_upper_ident_char(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

std::string_view trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

struct Cursor {
    std::string_view s;
    size_t pos = 0;
    int line;

    explicit Cursor(std::string_view text, int line_index) : s(text), line(line_index) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool at_end() const { return pos >= s.size(); }
    char peek() const { return pos < s.size() ? s[pos] : '\0'; }
    bool eat(char c) {
        if (peek() == c) { ++pos; return true; }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw MalformedLineError(line, msg); }

    std::string ident() {
        size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        return std::string(s.substr(start, pos - start));
    }
};

ArgValue parse_value(Cursor& c) {
    c.skip_ws();
    if (c.at_end()) c.fail("missing argument value");
    char ch = c.peek();
    // Both quote styles accepted so expressions can carry the other kind
    // inside, e.g. expr="{ANSWER0} == 'yes'".
    if (ch == '\'' || ch == '"') {
        ++c.pos;
        size_t start = c.pos;
        while (!c.at_end() && c.peek() != ch) ++c.pos;
        if (c.at_end()) c.fail("unbalanced quote in string literal");
        std::string content(c.s.substr(start, c.pos - start));
        ++c.pos;  // closing quote
        return ArgValue::str(std::move(content));
    }
    if (ch == '-' || std::isdigit(static_cast<unsigned char>(ch))) {
        size_t start = c.pos;
        if (ch == '-') ++c.pos;
        size_t digits = 0;
        while (!c.at_end() && std::isdigit(static_cast<unsigned char>(c.peek()))) { ++c.pos; ++digits; }
        if (digits == 0) c.fail("malformed number literal");
        try {
            return ArgValue::num(std::stoll(std::string(c.s.substr(start, c.pos - start))));
        } catch (const std::out_of_range&) {
            c.fail("number literal out of range");
        }
    }
    std::string word = c.ident();
    if (word.empty()) c.fail("malformed argument value");
    if (word == "True") return ArgValue::boolean_lit(true);
    if (word == "False") return ArgValue::boolean_lit(false);
    if (is_var_name(word)) return ArgValue::var(std::move(word));
    c.fail("argument value '" + word + "' is neither a literal nor a variable reference");
}

}  // namespace

ArgValue ArgValue::str(std::string s) {
    ArgValue v;
    v.kind = Kind::StringLiteral;
    v.text = std::move(s);
    return v;
}

ArgValue ArgValue::var(std::string name) {
    ArgValue v;
    v.kind = Kind::VarRef;
    v.text = std::move(name);
    return v;
}

ArgValue ArgValue::num(std::int64_t n) {
    ArgValue v;
    v.kind = Kind::NumberLiteral;
    v.number = n;
    return v;
}

ArgValue ArgValue::boolean_lit(bool b) {
    ArgValue v;
    v.kind = Kind::BoolLiteral;
    v.boolean = b;
    return v;
}

std::string ArgValue::render() const {
    switch (kind) {
        case Kind::StringLiteral: {
            // canonical form is single-quoted; payloads holding a single
            // quote switch to double quotes
            if (text.find('\'') == std::string::npos) return "'" + text + "'";
            if (text.find('"') != std::string::npos)
                throw std::runtime_error("string literal mixes both quote kinds: " + text);
            return "\"" + text + "\"";
        }
        case Kind::VarRef: return text;
        case Kind::NumberLiteral: return std::to_string(number);
        case Kind::BoolLiteral: return boolean ? "True" : "False";
    }
    return {};
}

bool ArgValue::operator==(const ArgValue& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case Kind::StringLiteral:
        case Kind::VarRef: return text == o.text;
        case Kind::NumberLiteral: return number == o.number;
        case Kind::BoolLiteral: return boolean == o.boolean;
    }
    return false;
}

const ArgValue* Instruction::find_arg(std::string_view key) const {
    for (const auto& [k, v] : args)
        if (k == key) return &v;
    return nullptr;
}

std::string Instruction::render() const {
    std::string out = output_var;
    out += '=';
    out += module_name;
    out += '(';
    bool first = true;
    for (const auto& [k, v] : args) {
        if (!first) out += ',';
        first = false;
        out += k;
        out += '=';
        out += v.render();
    }
    out += ')';
    return out;
}

bool Instruction::operator==(const Instruction& o) const {
    return output_var == o.output_var && module_name == o.module_name && args == o.args;
}

bool is_var_name(std::string_view s) {
    if (s.empty() || s[0] < 'A' || s[0] > 'Z') return false;
    for (char c : s)
        if (!is_upper_ident_char(c)) return false;
    return true;
}

bool is_module_name(std::string_view s) {
    return is_var_name(s);
}

Instruction parse_step(std::string_view line, int line_index) {
    Cursor c(line, line_index);
    c.skip_ws();
    if (c.at_end()) c.fail("empty line");

    std::string out_var = c.ident();
    if (!is_var_name(out_var))
        c.fail("output variable must match [A-Z][A-Z0-9_]*");
    c.skip_ws();
    if (!c.eat('=')) c.fail("expected '=' after output variable");
    c.skip_ws();

    std::string mod = c.ident();
    if (mod.empty()) c.fail("empty module name");
    if (!is_module_name(mod)) c.fail("module name must be uppercase");
    c.skip_ws();
    if (!c.eat('(')) c.fail("expected '(' after module name");

    Instruction instr;
    instr.line_index = line_index;
    instr.output_var = std::move(out_var);
    instr.module_name = std::move(mod);

    c.skip_ws();
    if (!c.eat(')')) {
        for (;;) {
            c.skip_ws();
            std::string key = c.ident();
            if (key.empty()) c.fail("expected argument name");
            if (instr.find_arg(key)) c.fail("duplicate argument '" + key + "'");
            c.skip_ws();
            if (!c.eat('=')) c.fail("expected '=' after argument '" + key + "'");
            ArgValue value = parse_value(c);
            instr.args.emplace_back(std::move(key), std::move(value));
            c.skip_ws();
            if (c.eat(',')) continue;
            if (c.eat(')')) break;
            c.fail("expected ',' or ')' in argument list");
        }
    }
    c.skip_ws();
    if (!c.at_end()) c.fail("unexpected trailing text after ')'");
    return instr;
}

Script parse_script(std::string_view text) {
    Script script;
    script.source_text = std::string(text);

    size_t pos = 0;
    int line_index = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string_view raw = (nl == std::string_view::npos) ? text.substr(pos)
                                                              : text.substr(pos, nl - pos);
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        std::string_view body = trim(raw);
        if (!body.empty() && body[0] != '#')
            script.instructions.push_back(parse_step(raw, line_index));
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
        ++line_index;
    }
    return script;
}

std::string render_script(const Script& script) {
    std::string out;
    for (const auto& instr : script.instructions) {
        out += instr.render();
        out += '\n';
    }
    return out;
}

}  // namespace planscript
