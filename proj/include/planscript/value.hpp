#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace planscript {

struct ValueError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ImageRef {
    std::string id;
    int width = 0;
    int height = 0;

    bool operator==(const ImageRef&) const = default;
};

// Pixel box, origin top-left, half-open nowhere: x1 < x2 and y1 < y2.
struct Box {
    int x1 = 0, y1 = 0, x2 = 0, y2 = 0;
    double score = 0.0;

    static Box make(int x1, int y1, int x2, int y2, double score);
    int width() const { return x2 - x1; }
    int height() const { return y2 - y1; }

    bool operator==(const Box&) const = default;
};

using BoxArray = std::vector<Box>;
using ImageArray = std::vector<ImageRef>;

struct NullValue {
    bool operator==(const NullValue&) const = default;
};

class Value {
public:
    enum class Kind { Null, Image, Box, Boxes, Images, Text, Number, Boolean };

    Value() : v_(NullValue{}) {}
    Value(ImageRef img) : v_(std::move(img)) {}
    Value(Box box) : v_(box) {}
    Value(BoxArray boxes) : v_(std::move(boxes)) {}
    Value(ImageArray images) : v_(std::move(images)) {}
    Value(std::string text) : v_(std::move(text)) {}
    Value(const char* text) : v_(std::string(text)) {}
    Value(std::int64_t n) : v_(n) {}
    Value(int n) : v_(static_cast<std::int64_t>(n)) {}
    Value(bool b) : v_(b) {}

    Kind kind() const { return static_cast<Kind>(v_.index()); }
    bool is_null() const { return kind() == Kind::Null; }

    const ImageRef& image() const { return expect<ImageRef>("image"); }
    const Box& box() const { return expect<Box>("box"); }
    const BoxArray& boxes() const { return expect<BoxArray>("box array"); }
    const ImageArray& images() const { return expect<ImageArray>("image array"); }
    const std::string& text() const { return expect<std::string>("text"); }
    std::int64_t number() const { return expect<std::int64_t>("number"); }
    bool boolean() const { return expect<bool>("boolean"); }

    // Display used for {VAR} substitution and traces: True/False for booleans.
    std::string display() const;
    // Display used for final answers and scoring: yes/no for booleans.
    std::string answer_text() const;

    static const char* kind_name(Kind k);

    bool operator==(const Value& o) const { return v_ == o.v_; }

private:
    template <typename T>
    const T& expect(const char* what) const {
        if (const T* p = std::get_if<T>(&v_)) return *p;
        throw ValueError(std::string("expected ") + what + ", got " + kind_name(kind()));
    }

    std::variant<NullValue, ImageRef, Box, BoxArray, ImageArray, std::string, std::int64_t, bool> v_;
};

std::string display_box(const Box& b);
std::string display_boxes(const BoxArray& boxes);

struct EnvError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Variable bindings for one execution. Single-assignment: rebinding throws.
class Env {
public:
    void bind(const std::string& name, Value value);
    bool contains(const std::string& name) const;
    const Value& get(const std::string& name) const;  // throws EnvError when unbound

    const std::map<std::string, Value>& bindings() const { return bindings_; }

private:
    std::map<std::string, Value> bindings_;
};

}  // namespace planscript
