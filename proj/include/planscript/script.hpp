#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace planscript {

// One line of a planning script: OUT=MODULE(k1=v1,k2=v2,...)

struct MalformedLineError : std::runtime_error {
    int line_index;
    MalformedLineError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_index(line) {}
};

struct ArgValue {
    enum class Kind { StringLiteral, VarRef, NumberLiteral, BoolLiteral };
    Kind kind = Kind::StringLiteral;
    std::string text;       // unquoted content (StringLiteral) or referenced name (VarRef)
    std::int64_t number = 0;
    bool boolean = false;

    static ArgValue str(std::string s);
    static ArgValue var(std::string name);
    static ArgValue num(std::int64_t n);
    static ArgValue boolean_lit(bool b);

    std::string render() const;
    bool operator==(const ArgValue& o) const;
};

struct Instruction {
    int line_index = 0;  // position in the source text, 0-based; diagnostics only
    std::string output_var;
    std::string module_name;
    std::vector<std::pair<std::string, ArgValue>> args;

    const ArgValue* find_arg(std::string_view key) const;
    std::string render() const;

    // structural equality ignores line_index
    bool operator==(const Instruction& o) const;
};

struct Script {
    std::vector<Instruction> instructions;
    std::string source_text;

    bool operator==(const Script& o) const { return instructions == o.instructions; }
};

bool is_var_name(std::string_view s);
bool is_module_name(std::string_view s);

Instruction parse_step(std::string_view line, int line_index);

// Blank lines and '#' comment lines are skipped; the first malformed line throws.
Script parse_script(std::string_view text);

// Canonical surface form, one instruction per line, trailing newline when nonempty.
std::string render_script(const Script& script);

}  // namespace planscript
