#include "planscript/value.hpp"

namespace planscript {

Box Box::make(int x1, int y1, int x2, int y2, double score) {
    if (x1 < 0 || y1 < 0 || x1 >= x2 || y1 >= y2)
        throw ValueError("degenerate box [" + std::to_string(x1) + "," + std::to_string(y1) +
                         "," + std::to_string(x2) + "," + std::to_string(y2) + "]");
    if (!(score >= 0.0 && score <= 1.0))
        throw ValueError("box score " + std::to_string(score) + " outside [0,1]");
    return Box{x1, y1, x2, y2, score};
}

std::string display_box(const Box& b) {
    return "[" + std::to_string(b.x1) + "," + std::to_string(b.y1) + "," +
           std::to_string(b.x2) + "," + std::to_string(b.y2) + "]";
}

std::string display_boxes(const BoxArray& boxes) {
    std::string out = "[";
    for (size_t i = 0; i < boxes.size(); ++i) {
        if (i) out += ",";
        out += display_box(boxes[i]);
    }
    out += "]";
    return out;
}

std::string Value::display() const {
    switch (kind()) {
        case Kind::Null: return "None";
        case Kind::Image: {
            const auto& img = image();
            return "<image:" + img.id + " " + std::to_string(img.width) + "x" +
                   std::to_string(img.height) + ">";
        }
        case Kind::Box: return display_box(box());
        case Kind::Boxes: return display_boxes(boxes());
        case Kind::Images: {
            std::string out = "[";
            for (size_t i = 0; i < images().size(); ++i) {
                if (i) out += ",";
                out += Value(images()[i]).display();
            }
            return out + "]";
        }
        case Kind::Text: return text();
        case Kind::Number: return std::to_string(number());
        case Kind::Boolean: return boolean() ? "True" : "False";
    }
    return {};
}

std::string Value::answer_text() const {
    switch (kind()) {
        case Kind::Boolean: return boolean() ? "yes" : "no";
        case Kind::Number: return std::to_string(number());
        case Kind::Text: return text();
        default: return display();
    }
}

const char* Value::kind_name(Kind k) {
    switch (k) {
        case Kind::Null: return "null";
        case Kind::Image: return "image";
        case Kind::Box: return "box";
        case Kind::Boxes: return "box array";
        case Kind::Images: return "image array";
        case Kind::Text: return "text";
        case Kind::Number: return "number";
        case Kind::Boolean: return "boolean";
    }
    return "?";
}

void Env::bind(const std::string& name, Value value) {
    auto [it, inserted] = bindings_.emplace(name, std::move(value));
    if (!inserted) throw EnvError("variable " + name + " is already bound");
}

bool Env::contains(const std::string& name) const {
    return bindings_.count(name) != 0;
}

const Value& Env::get(const std::string& name) const {
    auto it = bindings_.find(name);
    if (it == bindings_.end()) throw EnvError("unbound variable " + name);
    return it->second;
}

}  // namespace planscript
