#include "planscript/executor.hpp"

#include <algorithm>
#include <chrono>

#include "planscript/evalexpr.hpp"
#include "planscript/ssparser.hpp"

namespace planscript {

nlohmann::json TraceEvent::to_json() const {
    return {{"line", line_index},     {"module", module_name}, {"output_var", output_var},
            {"inputs", inputs},       {"output", output},      {"backend", backend},
            {"wall_ms", wall_ms}};
}

std::string_view exec_status_name(ExecStatus s) {
    switch (s) {
        case ExecStatus::Ok: return "ok";
        case ExecStatus::RuntimeFallbackUsed: return "runtime_fallback_used";
        case ExecStatus::Error: return "error";
    }
    return "?";
}

nlohmann::json ExecutionResult::to_json() const {
    nlohmann::json events = nlohmann::json::array();
    for (const auto& e : trace) events.push_back(e.to_json());
    return {{"final_answer", final_answer},
            {"status", std::string(exec_status_name(status))},
            {"failure", failure_detail},
            {"events", std::move(events)}};
}

BoxArray exec_loc(Gateway& gateway, const ImageRef& image, const std::string& object,
                  bool plural) {
    return gateway.locate(image, object, plural).boxes;
}

namespace {

ImageRef crop_region(const ImageRef& image, int x1, int y1, int x2, int y2) {
    x1 = std::clamp(x1, 0, image.width);
    x2 = std::clamp(x2, 0, image.width);
    y1 = std::clamp(y1, 0, image.height);
    y2 = std::clamp(y2, 0, image.height);
    if (x1 >= x2 || y1 >= y2)
        throw ValueError("crop region is empty after clamping to " + image.id);
    ImageRef out;
    out.id = image.id + "#crop[" + std::to_string(x1) + "," + std::to_string(y1) + "," +
             std::to_string(x2) + "," + std::to_string(y2) + "]";
    out.width = x2 - x1;
    out.height = y2 - y1;
    return out;
}

}  // namespace

ImageRef exec_crop(const ImageRef& image, const Box& box) {
    return crop_region(image, box.x1, box.y1, box.x2, box.y2);
}

ImageRef exec_crop(const ImageRef& image, const BoxArray& boxes) {
    if (boxes.empty()) throw ValueError("CROP received an empty box array");
    return exec_crop(image, boxes.front());
}

std::int64_t exec_count(const BoxArray& boxes) {
    return static_cast<std::int64_t>(boxes.size());
}

Value exec_get(const Value& array, std::int64_t index) {
    if (array.kind() == Value::Kind::Boxes) {
        const BoxArray& boxes = array.boxes();
        if (index < 0 || static_cast<size_t>(index) >= boxes.size())
            throw ValueError("GET index " + std::to_string(index) + " out of bounds for " +
                             std::to_string(boxes.size()) + " boxes");
        return Value(boxes[static_cast<size_t>(index)]);
    }
    if (array.kind() == Value::Kind::Images) {
        const ImageArray& images = array.images();
        if (index < 0 || static_cast<size_t>(index) >= images.size())
            throw ValueError("GET index " + std::to_string(index) + " out of bounds for " +
                             std::to_string(images.size()) + " images");
        return Value(images[static_cast<size_t>(index)]);
    }
    throw ValueError("GET expects an array, got " + std::string(Value::kind_name(array.kind())));
}

namespace {

class StepRunner {
public:
    StepRunner(Env env, Gateway& gateway, bool collect_trace)
        : env_(std::move(env)), gateway_(gateway), collect_trace_(collect_trace) {}

    // Runs one script to completion; throws RuntimeStepError on any failure.
    std::string run(const Script& script) {
        std::optional<std::string> final_answer;
        for (size_t i = 0; i < script.instructions.size(); ++i) {
            const Instruction& instr = script.instructions[i];
            const auto start = std::chrono::steady_clock::now();
            TraceEvent event;
            event.line_index = static_cast<int>(i);
            event.module_name = instr.module_name;
            event.output_var = instr.output_var;
            if (collect_trace_) event.inputs = resolved_inputs(instr);
            if (env_.contains(instr.output_var))
                throw RuntimeStepError(static_cast<int>(i),
                                       "variable " + instr.output_var + " assigned twice");

            Value output;
            try {
                output = step(instr, event);
            } catch (const FixtureMiss&) {
                throw;  // hermetic failures must surface unchanged
            } catch (const RuntimeStepError&) {
                throw;
            } catch (const std::exception& e) {
                throw RuntimeStepError(static_cast<int>(i), e.what());
            }

            env_.bind(instr.output_var, output);
            if (instr.module_name == "RESULT") final_answer = output.text();

            event.output = output.display();
            event.wall_ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - start)
                                .count();
            trace_.push_back(std::move(event));
        }
        if (script.instructions.empty() || script.instructions.back().module_name != "RESULT")
            throw RuntimeStepError(static_cast<int>(script.instructions.size()),
                                   "script does not end with a RESULT instruction");
        return *final_answer;
    }

    std::vector<TraceEvent> take_trace() { return std::move(trace_); }

private:
    nlohmann::json resolved_inputs(const Instruction& instr) const {
        nlohmann::json inputs = nlohmann::json::object();
        for (const auto& [key, value] : instr.args) {
            if (value.kind == ArgValue::Kind::VarRef && env_.contains(value.text))
                inputs[key] = env_.get(value.text).display();
            else
                inputs[key] = value.render();
        }
        return inputs;
    }

    const Value& arg_var(const Instruction& instr, const char* key) {
        const ArgValue* arg = instr.find_arg(key);
        if (!arg || arg->kind != ArgValue::Kind::VarRef)
            throw ValueError(instr.module_name + " needs a variable argument '" + key + "'");
        return env_.get(arg->text);
    }

    std::string arg_str(const Instruction& instr, const char* key) const {
        const ArgValue* arg = instr.find_arg(key);
        if (!arg || arg->kind != ArgValue::Kind::StringLiteral)
            throw ValueError(instr.module_name + " needs a string argument '" + key + "'");
        return arg->text;
    }

    Value step(const Instruction& instr, TraceEvent& event) {
        const std::string& mod = instr.module_name;
        if (mod == "LOC") {
            const ImageRef& image = arg_var(instr, "image").image();
            bool plural = false;
            if (const ArgValue* p = instr.find_arg("plural"))
                plural = p->kind == ArgValue::Kind::BoolLiteral && p->boolean;
            LocResult loc = gateway_.locate(image, arg_str(instr, "object"), plural);
            event.backend = std::move(loc.votes);
            return Value(std::move(loc.boxes));
        }
        if (mod == "VQA") {
            const ImageRef& image = arg_var(instr, "image").image();
            VqaResult vqa = gateway_.vqa(image, arg_str(instr, "question"));
            event.backend = std::move(vqa.votes);
            return Value(std::move(vqa.answer));
        }
        if (mod == "CROP" || mod.rfind("CROP_", 0) == 0) {
            const ImageRef& image = arg_var(instr, "image").image();
            const Value& boxval = arg_var(instr, "box");
            Box box = boxval.kind() == Value::Kind::Boxes
                          ? (boxval.boxes().empty()
                                 ? throw ValueError("CROP received an empty box array")
                                 : boxval.boxes().front())
                          : boxval.box();
            if (mod == "CROP") return Value(exec_crop(image, box));
            if (mod == "CROP_RIGHTOF") return Value(crop_region(image, box.x2, 0, image.width, image.height));
            if (mod == "CROP_LEFTOF") return Value(crop_region(image, 0, 0, box.x1, image.height));
            if (mod == "CROP_ABOVE") return Value(crop_region(image, 0, 0, image.width, box.y1));
            if (mod == "CROP_BELOW") return Value(crop_region(image, 0, box.y2, image.width, image.height));
        }
        if (mod == "COUNT") return Value(exec_count(arg_var(instr, "box").boxes()));
        if (mod == "GET") {
            const ArgValue* index = instr.find_arg("index");
            if (!index || index->kind != ArgValue::Kind::NumberLiteral)
                throw ValueError("GET needs a number argument 'index'");
            return exec_get(arg_var(instr, "array"), index->number);
        }
        if (mod == "EVAL") {
            CoercedValue result = eval_template(arg_str(instr, "expr"), env_);
            switch (result.kind) {
                case CoercedValue::Kind::Number: return Value(result.number);
                case CoercedValue::Kind::Boolean: return Value(result.boolean);
                case CoercedValue::Kind::Text: return Value(std::move(result.text));
            }
        }
        if (mod == "RESULT") return Value(arg_var(instr, "var").answer_text());
        throw ValueError("module " + mod + " has no execution handler");
    }

    Env env_;
    Gateway& gateway_;
    bool collect_trace_;
    std::vector<TraceEvent> trace_;
};

}  // namespace

ExecutionResult execute(const Script& script, const Env& seed, Gateway& gateway,
                        const ExecOptions& options) {
    ExecutionResult result;
    {
        StepRunner runner(seed, gateway, options.collect_trace);
        try {
            result.final_answer = runner.run(script);
            result.trace = runner.take_trace();
            result.status = ExecStatus::Ok;
            return result;
        } catch (const FixtureMiss&) {
            throw;
        } catch (const RuntimeStepError& e) {
            result.failure_detail = {{"line", e.line_index}, {"cause", e.what()}};
            if (!options.allow_runtime_fallback) {
                result.status = ExecStatus::Error;
                result.final_answer = "unknown";
                result.trace = runner.take_trace();
                return result;
            }
        }
    }

    Script fallback = make_fallback(options.question, options.task);
    StepRunner runner(seed, gateway, options.collect_trace);
    try {
        result.final_answer = runner.run(fallback);
        result.status = ExecStatus::RuntimeFallbackUsed;
    } catch (const FixtureMiss&) {
        throw;
    } catch (const RuntimeStepError& e) {
        result.status = ExecStatus::Error;
        result.final_answer = "unknown";
        result.failure_detail["fallback"] = {{"line", e.line_index}, {"cause", e.what()}};
    }
    result.trace = runner.take_trace();
    return result;
}

ImageRef concat_images(const ImageRef& left, const ImageRef& right) {
    ImageRef out;
    out.id = "concat(" + left.id + "," + right.id + ")";
    out.width = left.width + right.width;
    out.height = std::max(left.height, right.height);
    return out;
}

Env seed_env(const std::vector<ImageRef>& images, TaskKind task) {
    Env env;
    if (task == TaskKind::Nlvr2) {
        if (images.size() != 2)
            throw ValueError("nlvr2 tasks need exactly two images, got " +
                             std::to_string(images.size()));
        env.bind("LEFT", Value(images[0]));
        env.bind("RIGHT", Value(images[1]));
        env.bind("IMAGE", Value(concat_images(images[0], images[1])));
        return env;
    }
    if (images.size() != 1)
        throw ValueError(std::string(task_kind_name(task)) + " tasks need exactly one image, got " +
                         std::to_string(images.size()));
    env.bind("IMAGE", Value(images[0]));
    return env;
}

}  // namespace planscript
