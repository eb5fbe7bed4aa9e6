// Regenerates the recorded model fixtures used by the replay tests and the
// benchmark suite. Scripted stand-in models answer every request the
// pipeline makes; their responses are captured through the regular
// record-mode path so the JSONL files match what a live recording would
// produce. Run from the repository root after changing prompts, scripts or
// the sample table:
//
//   gen_fixtures [--data-dir tests/data] [--assets assets]

#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "planscript/executor.hpp"
#include "planscript/pipeline.hpp"

using namespace planscript;

namespace {

namespace fs = std::filesystem;

struct WorldModel {
    // (image, object) -> base detections; backend k jitters them
    std::map<std::string, BoxArray> detections;
    // (image, object, backend) -> replacement detections (ensemble outliers)
    std::map<std::string, BoxArray> detection_overrides;
    // (image, normalized question) -> answer
    std::map<std::string, std::string> vqa_answers;
    // (image, normalized question, backend) -> dissenting answer
    std::map<std::string, std::string> vqa_overrides;
    std::map<std::string, std::string> captions;       // image -> caption
    std::map<std::string, std::string> verdict_replies;  // question -> reply
    std::map<std::string, std::string> completions;    // question -> raw script

    static std::string det_key(const std::string& image, const std::string& object) {
        return image + "\x1f" + normalize_query(object);
    }
    static std::string vqa_key(const std::string& image, const std::string& question) {
        return image + "\x1f" + normalize_query(question);
    }
};

class ScriptedBackend : public Backend {
public:
    ScriptedBackend(std::string name, BackendRole role, int priority, const WorldModel& world,
                    int jitter_index)
        : Backend(std::move(name), role, priority), world_(world), jitter_(jitter_index) {}

    BoxArray detect(const ImageRef& image, const std::string& object) override {
        std::string key = WorldModel::det_key(image.id, object);
        auto override_it = world_.detection_overrides.find(key + "\x1f" + name());
        if (override_it != world_.detection_overrides.end()) return override_it->second;
        auto it = world_.detections.find(key);
        if (it == world_.detections.end()) return {};  // detector finds nothing
        BoxArray jittered;
        for (const Box& b : it->second)
            jittered.push_back(Box::make(b.x1 + 2 * jitter_, b.y1 + 2 * jitter_,
                                         b.x2 + 2 * jitter_, b.y2 + 2 * jitter_,
                                         b.score - 0.03 * jitter_));
        return jittered;
    }

    std::string answer(const ImageRef& image, const std::string& question) override {
        std::string key = WorldModel::vqa_key(image.id, question);
        auto override_it = world_.vqa_overrides.find(key + "\x1f" + name());
        if (override_it != world_.vqa_overrides.end()) return override_it->second;
        auto it = world_.vqa_answers.find(key);
        if (it == world_.vqa_answers.end())
            throw std::runtime_error("world model has no VQA answer for image '" + image.id +
                                     "' question '" + question + "'");
        return it->second;
    }

    std::string caption(const ImageRef& image) override {
        auto it = world_.captions.find(image.id);
        return it == world_.captions.end() ? "A photo." : it->second;
    }

    std::string complete(const std::string& prompt) override {
        if (prompt.rfind("You are checking", 0) == 0) {
            for (const auto& [question, reply] : world_.verdict_replies)
                if (prompt.find("Question: " + question + "\n") != std::string::npos) return reply;
            return "1. No, the caption does not mention it.\n2. -\n3. unknown";
        }
        // planner prompt: completion keyed by the trailing query
        for (const auto& [question, script] : world_.completions) {
            const std::string tail = "Question: " + question + "\nProgram:\n";
            if (prompt.size() >= tail.size() &&
                prompt.compare(prompt.size() - tail.size(), tail.size(), tail) == 0)
                return script;
        }
        throw std::runtime_error("world model has no completion for prompt tail: ..." +
                                 prompt.substr(prompt.size() > 120 ? prompt.size() - 120 : 0));
    }

private:
    const WorldModel& world_;
    int jitter_;
};

struct Scenario {
    WorldModel world;
    ImageManifest manifest;
    std::vector<BenchmarkSample> samples;
    nlohmann::json manifest_json = nlohmann::json::array();

    void add_image(const std::string& id, int w, int h) {
        manifest.add(ImageRef{id, w, h});
        manifest_json.push_back({{"id", id}, {"width", w}, {"height", h}});
    }
    ImageRef img(const std::string& id) const { return manifest.resolve(id); }
    void add_sample(std::string id, TaskKind task, std::vector<std::string> images,
                    std::string question, std::string answer) {
        BenchmarkSample s;
        s.id = std::move(id);
        s.task = task;
        s.images = std::move(images);
        s.question = std::move(question);
        s.ground_truth = std::move(answer);
        samples.push_back(std::move(s));
    }
};

// The whole authored world: twenty samples, their scripts, and every model
// response the four ablation configurations can request.
Scenario build_scenario() {
    Scenario sc;
    WorldModel& w = sc.world;

    auto det = [&](const std::string& image, const std::string& object, Box box) {
        w.detections[WorldModel::det_key(image, object)].push_back(box);
    };
    auto vqa = [&](const std::string& image, const std::string& q, const std::string& a) {
        w.vqa_answers[WorldModel::vqa_key(image, q)] = a;
    };
    auto dissent = [&](const std::string& image, const std::string& q, const std::string& backend,
                       const std::string& a) {
        w.vqa_overrides[WorldModel::vqa_key(image, q) + "\x1f" + backend] = a;
    };
    auto crop_of = [&](const std::string& image, Box box) {
        return exec_crop(sc.img(image), box).id;
    };

    // --- s1: the grass pipeline -------------------------------------------------
    sc.add_image("grass_field", 640, 480);
    sc.add_sample("s01_gqa_grass", TaskKind::Gqa, {"grass_field"}, "Is there any grass in the picture that is not tall?", "no");
    w.completions["Is there any grass in the picture that is not tall?"] =
        "BOX0=LOC(image=IMAGE,object='grass')\n"
        "IMAGE0=CROP(image=IMAGE,box=BOX0)\n"
        "ANSWER0=VQA(image=IMAGE0,question='Is the grass tall?')\n"
        "ANSWER1=EVAL(expr='{ANSWER0} == False')\n"
        "FINAL_ANSWER=RESULT(var=ANSWER1)\n";
    Box grass_box = Box::make(40, 260, 600, 470, 0.92);
    det("grass_field", "grass", grass_box);
    vqa(crop_of("grass_field", grass_box), "Is the grass tall?", "yes");
    w.captions["grass_field"] = "A wide field of tall green grass under a cloudy sky.";
    w.verdict_replies["Is there any grass in the picture that is not tall?"] =
        "1. Yes, the caption says the grass is tall.\n"
        "2. All the grass is tall, so there is no grass that is not tall.\n"
        "3. The answer is no.";

    // --- s2: the both-people gender repair --------------------------------------
    sc.add_image("park_two_kids", 640, 480);
    sc.add_sample("s02_gqa_gender", TaskKind::Gqa, {"park_two_kids"}, "Do both people have the same gender?", "no");
    w.completions["Do both people have the same gender?"] =
        "BOX0=LOC(image=IMAGE,object='person')\n"
        "IMAGE0=CROP(image=IMAGE,box=BOX0)\n"
        "IMAGE1=CROP(image=IMAGE,box=BOX0)\n"
        "ANSWER0=VQA(image=IMAGE0,question='What is the gender of the person?')\n"
        "ANSWER1=VQA(image=IMAGE1,question='What is the gender of the person?')\n"
        "ANSWER2=EVAL(expr='{ANSWER0} == {ANSWER1}')\n"
        "FINAL_ANSWER=RESULT(var=ANSWER2)\n";
    Box girl_box = Box::make(100, 120, 260, 460, 0.95);
    Box boy_box = Box::make(350, 100, 520, 470, 0.90);
    det("park_two_kids", "person", girl_box);
    det("park_two_kids", "person", boy_box);
    vqa(crop_of("park_two_kids", girl_box), "What is the gender of the person?", "female");
    vqa(crop_of("park_two_kids", boy_box), "What is the gender of the person?", "male");
    w.captions["park_two_kids"] = "A boy and a girl are sitting on a bench in the park.";
    w.verdict_replies["Do both people have the same gender?"] =
        "1. Yes, the caption explicitly mentions both a boy and a girl.\n"
        "2. A boy and a girl do not have the same gender.\n"
        "3. The answer is no.";

    // --- s3: the == 'yes' rewrite ------------------------------------------------
    sc.add_image("surfboard_beach", 640, 480);
    sc.add_sample("s03_gqa_surfboard", TaskKind::Gqa, {"surfboard_beach"}, "Is the surfboard thin?", "no");
    w.completions["Is the surfboard thin?"] =
        "ANSWER0=VQA(image=IMAGE,question='Is the surfboard thin?')\n"
        "ANSWER1=EVAL(expr=\"{ANSWER0} == 'yes'\")\n"
        "FINAL_ANSWER=RESULT(var=ANSWER1)\n";
    vqa("surfboard_beach", "Is the surfboard thin?", "no");
    dissent("surfboard_beach", "Is the surfboard thin?", "vqa-pali", "yes");

    // --- s4: strange LOC object -> fallback --------------------------------------
    sc.add_image("bird_tree", 640, 480);
    sc.add_sample("s04_gqa_standing", TaskKind::Gqa, {"bird_tree"}, "Is the bird standing?", "yes");
    w.completions["Is the bird standing?"] =
        "BOX0=LOC(image=IMAGE,object='standing')\n"
        "IMAGE0=CROP(image=IMAGE,box=BOX0)\n"
        "ANSWER0=VQA(image=IMAGE0,question='Is the bird standing?')\n"
        "FINAL_ANSWER=RESULT(var=ANSWER0)\n";
    vqa("bird_tree", "Is the bird standing?", "yes");

    // --- s5: hallucinated module -> fallback -------------------------------------
    sc.add_image("street_cat", 640, 480);
    sc.add_sample("s05_gqa_segment", TaskKind::Gqa, {"street_cat"}, "Is there a cat behind the bicycle?", "no");
    w.completions["Is there a cat behind the bicycle?"] =
        "MASK0=SEGMENT(image=IMAGE,object='cat')\n"
        "FINAL_ANSWER=RESULT(var=MASK0)\n";
    vqa("street_cat", "Is there a cat behind the bicycle?", "no");

    // --- s6: COUNT with an ensemble outlier --------------------------------------
    sc.add_image("desk_office", 640, 480);
    sc.add_sample("s06_gqa_bottle", TaskKind::Gqa, {"desk_office"}, "Is there a bottle on the desk?", "yes");
    w.completions["Is there a bottle on the desk?"] =
        "BOX0=LOC(image=IMAGE,object='bottle')\n"
        "ANSWER0=COUNT(box=BOX0)\n"
        "ANSWER1=EVAL(expr='{ANSWER0} > 0')\n"
        "FINAL_ANSWER=RESULT(var=ANSWER1)\n";
    det("desk_office", "bottle", Box::make(420, 200, 480, 320, 0.91));
    w.detection_overrides[WorldModel::det_key("desk_office", "bottle") + "\x1f" + "det-owl-c"] =
        BoxArray{Box::make(10, 10, 70, 70, 0.97)};  // far-off outlier, dropped by voting

    // --- s7: directional crop -----------------------------------------------------
    sc.add_image("table_setting", 640, 480);
    sc.add_sample("s07_gqa_leftof", TaskKind::Gqa, {"table_setting"}, "Is the cup to the left of the plate?", "yes");
    w.completions["Is the cup to the left of the plate?"] =
        "BOX0=LOC(image=IMAGE,object='plate')\n"
        "IMAGE0=CROP_LEFTOF(image=IMAGE,box=BOX0)\n"
        "ANSWER0=VQA(image=IMAGE0,question='Is there a cup?')\n"
        "FINAL_ANSWER=RESULT(var=ANSWER0)\n";
    Box plate_box = Box::make(300, 200, 500, 360, 0.89);
    det("table_setting", "plate", plate_box);
    vqa("table_setting#crop[0,0,300,480]", "Is there a cup?", "yes");

    // --- s8: correct answer, wrong word (exact-match limitation) ------------------
    sc.add_image("living_room", 640, 480);
    sc.add_sample("s08_gqa_carpet", TaskKind::Gqa, {"living_room"}, "What is on the floor in front of the couch?", "carpet");
    w.completions["What is on the floor in front of the couch?"] =
        "ANSWER0=VQA(image=IMAGE,question='What is on the floor in front of the couch?')\n"
        "FINAL_ANSWER=RESULT(var=ANSWER0)\n";
    vqa("living_room", "What is on the floor in front of the couch?", "rug");
    w.captions["living_room"] = "A rug lies on the floor in front of a grey couch.";
    w.verdict_replies["What is on the floor in front of the couch?"] =
        "1. Yes, the caption names the object on the floor.\n"
        "2. The caption says a rug lies there.\n"
        "3. rug";

    // --- s9..s12: NLVR2 statements -------------------------------------------------
    sc.add_image("dogs_a_left", 400, 300);
    sc.add_image("dogs_a_right", 400, 300);
    sc.add_sample("s09_nlvr2_two_dogs", TaskKind::Nlvr2, {"dogs_a_left", "dogs_a_right"}, "There are two dogs.", "yes");
    w.completions["There are two dogs."] =
        "ANSWER0=VQA(image=LEFT,question='How many dogs are in the image?')\n"
        "ANSWER1=VQA(image=RIGHT,question='How many dogs are in the image?')\n"
        "ANSWER2=EVAL(expr='{ANSWER0} + {ANSWER1} == 2')\n"
        "FINAL_ANSWER=RESULT(var=ANSWER2)\n";
    vqa("dogs_a_left", "How many dogs are in the image?", "1");
    vqa("dogs_a_right", "How many dogs are in the image?", "1");

    sc.add_image("kitchen_left", 400, 300);
    sc.add_image("kitchen_right", 400, 300);
    sc.add_sample("s10_nlvr2_kitchen", TaskKind::Nlvr2, {"kitchen_left", "kitchen_right"}, "The left image shows a kitchen.", "yes");
    w.completions["The left image shows a kitchen."] =
        "ANSWER0=VQA(image=LEFT,question='Does the image show a kitchen?')\n"
        "ANSWER1=EVAL(expr='{ANSWER0} == True')\n"
        "FINAL_ANSWER=RESULT(var=ANSWER1)\n";
    vqa("kitchen_left", "Does the image show a kitchen?", "yes");
    dissent("kitchen_left", "Does the image show a kitchen?", "vqa-blip", "no");

    sc.add_image("dogs_b_left", 400, 300);
    sc.add_image("dogs_b_right", 400, 300);
    sc.add_sample("s11_nlvr2_four_dogs", TaskKind::Nlvr2, {"dogs_b_left", "dogs_b_right"}, "Fewer than four dogs are visible in total.", "no");
    w.completions["Fewer than four dogs are visible in total."] =
        "ANSWER0=VQA(image=LEFT,question='How many dogs are in the image?')\n"
        "ANSWER1=VQA(image=RIGHT,question='How many dogs are in the image?')\n"
        "ANSWER2=EVAL(expr='{ANSWER0} + {ANSWER1} < 4')\n"
        "FINAL_ANSWER=RESULT(var=ANSWER2)\n";
    vqa("dogs_b_left", "How many dogs are in the image?", "2");
    vqa("dogs_b_right", "How many dogs are in the image?", "3");

    sc.add_image("wagon_left", 400, 300);
    sc.add_image("wagon_right", 400, 300);
    sc.add_sample("s12_nlvr2_wagon", TaskKind::Nlvr2, {"wagon_left", "wagon_right"}, "One of the images contains a red wagon.", "yes");
    w.completions["One of the images contains a red wagon."] =
        "ANSWER0=VQA(image=LEFT,question='Is there a red wagon?')\n"
        "ANSWER1=VQA(image=RIGHT,question='Is there a red wagon?')\n"
        "ANSWER2=EVAL(expr='{ANSWER0} == True or {ANSWER1} == True')\n"
        "FINAL_ANSWER=RESULT(var=ANSWER2)\n";
    vqa("wagon_left", "Is there a red wagon?", "no");
    vqa("wagon_right", "Is there a red wagon?", "yes");

    // --- s13..s16: VQAv2 -------------------------------------------------------------
    sc.add_image("umbrella_street", 640, 480);
    sc.add_sample("s13_vqav2_umbrella", TaskKind::Vqav2, {"umbrella_street"}, "What color is the umbrella?", "blue");
    w.completions["What color is the umbrella?"] =
        "BOX0=LOC(image=IMAGE,object='umbrella')\n"
        "IMAGE0=CROP(image=IMAGE,box=BOX0)\n"
        "ANSWER0=VQA(image=IMAGE0,question='What color is the umbrella?')\n"
        "FINAL_ANSWER=RESULT(var=ANSWER0)\n";
    Box umbrella_box = Box::make(200, 80, 440, 260, 0.93);
    det("umbrella_street", "umbrella", umbrella_box);
    vqa(crop_of("umbrella_street", umbrella_box), "What color is the umbrella?", "blue");

    sc.add_image("room_interior", 640, 480);
    sc.add_sample("s14_vqav2_room", TaskKind::Vqav2, {"room_interior"}, "What room is this?", "kitchen");
    w.completions["What room is this?"] =
        "ANSWER0=VQA(image=IMAGE,question='What room is this?')\n"
        "FINAL_ANSWER=RESULT(var=ANSWER0)\n";
    vqa("room_interior", "What room is this?", "kitchen");
    w.captions["room_interior"] = "A kitchen with white cabinets and a stove.";
    w.verdict_replies["What room is this?"] =
        "1. Yes, the caption names the room.\n2. It is a kitchen.\n3. kitchen";

    sc.add_image("man_street", 640, 480);
    sc.add_sample("s15_vqav2_holding", TaskKind::Vqav2, {"man_street"}, "What is the man holding?", "phone");
    w.completions["What is the man holding?"] =
        "BOX0=LOC(image=IMAGE,object='man')\n"
        "IMAGE0=CROP(image=IMAGE,box=BOX0)\n"
        "ANSWER0=VQA(image=IMAGE0,question='What is the man holding?')\n"
        "FINAL_ANSWER=RESULT(var=ANSWER0)\n";
    Box man_box = Box::make(240, 100, 400, 460, 0.88);
    det("man_street", "man", man_box);
    vqa(crop_of("man_street", man_box), "What is the man holding?", "phone");

    sc.add_image("park_bench", 640, 480);
    sc.add_sample("s16_vqav2_bench", TaskKind::Vqav2, {"park_bench"}, "Is the bench made of wood?", "yes");
    w.completions["Is the bench made of wood?"] =
        "BOX0=LOC(image=IMAGE,object='bench')\n"
        "IMAGE0=CROP(image=IMAGE,box=BOX0)\n"
        "ANSWER0=VQA(image=IMAGE0,question='Is the bench made of wood?')\n"
        "FINAL_ANSWER=RESULT(var=ANSWER0)\n";
    Box bench_box = Box::make(140, 220, 520, 420, 0.94);
    det("park_bench", "bench", bench_box);
    vqa(crop_of("park_bench", bench_box), "Is the bench made of wood?", "yes");
    w.captions["park_bench"] = "An old wooden bench stands next to a gravel path.";
    w.verdict_replies["Is the bench made of wood?"] =
        "1. Yes, the caption calls it a wooden bench.\n2. The bench is wooden.\n3. yes";

    // --- s17..s20: MME -----------------------------------------------------------------
    sc.add_image("shelf_photo", 640, 480);
    sc.add_sample("s17_mme_bottle", TaskKind::Mme, {"shelf_photo"}, "Is there a bottle in the image?", "yes");
    w.completions["Is there a bottle in the image?"] =
        "BOX0=LOC(image=IMAGE,object='bottle')\n"
        "ANSWER0=COUNT(box=BOX0)\n"
        "ANSWER1=EVAL(expr='{ANSWER0} > 0')\n"
        "FINAL_ANSWER=RESULT(var=ANSWER1)\n";
    det("shelf_photo", "bottle", Box::make(100, 60, 180, 240, 0.90));

    sc.add_image("umbrella_photo", 640, 480);
    sc.add_sample("s18_mme_red", TaskKind::Mme, {"umbrella_photo"}, "Is the umbrella red?", "yes");
    w.completions["Is the umbrella red?"] =
        "BOX0=LOC(image=IMAGE,object='umbrella')\n"
        "IMAGE0=CROP(image=IMAGE,box=BOX0)\n"
        "ANSWER0=VQA(image=IMAGE0,question='What color is the umbrella?')\n"
        "ANSWER1=EVAL(expr=\"{ANSWER0} == 'red'\")\n"
        "FINAL_ANSWER=RESULT(var=ANSWER1)\n";
    Box umbrella2_box = Box::make(220, 100, 430, 280, 0.92);
    det("umbrella_photo", "umbrella", umbrella2_box);
    vqa(crop_of("umbrella_photo", umbrella2_box), "What color is the umbrella?", "red");

    sc.add_image("couch_room", 640, 480);
    sc.add_sample("s19_mme_dog", TaskKind::Mme, {"couch_room"}, "Is the dog on the couch?", "no");
    w.completions["Is the dog on the couch?"] =
        "BOX0=LOC(image=IMAGE,object='couch')\n"
        "IMAGE0=CROP(image=IMAGE,box=BOX0)\n"
        "ANSWER0=VQA(image=IMAGE0,question='Is there a dog?')\n"
        "FINAL_ANSWER=RESULT(var=ANSWER0)\n";
    Box couch_box = Box::make(80, 240, 560, 460, 0.95);
    det("couch_room", "couch", couch_box);
    vqa(crop_of("couch_room", couch_box), "Is there a dog?", "no");

    sc.add_image("dark_street", 640, 480);
    sc.add_sample("s20_mme_helmet", TaskKind::Mme, {"dark_street"}, "Is the person wearing a helmet?", "yes");
    w.completions["Is the person wearing a helmet?"] =
        "ANSWER0=VQA(image=IMAGE,question='Is the person wearing a helmet?')\n"
        "FINAL_ANSWER=RESULT(var=ANSWER0)\n";
    // the image is too dark: every model gets it wrong
    vqa("dark_street", "Is the person wearing a helmet?", "no");

    return sc;
}

Gateway recording_gateway(const Scenario& sc, const fs::path& fixtures_dir) {
    fs::create_directories(fixtures_dir);
    Gateway gateway;
    gateway.set_ensemble({0.5, 2});
    auto record = [&](std::shared_ptr<Backend> live) {
        auto store = std::make_shared<FixtureStore>(
            FixtureStore::open_writable((fixtures_dir / (live->name() + ".jsonl")).string()));
        gateway.add_backend(std::make_shared<RecordingBackend>(std::move(live), store));
    };
    record(std::make_shared<ScriptedBackend>("det-owl-a", BackendRole::Detector, 1, sc.world, 0));
    record(std::make_shared<ScriptedBackend>("det-owl-b", BackendRole::Detector, 2, sc.world, 1));
    record(std::make_shared<ScriptedBackend>("det-owl-c", BackendRole::Detector, 3, sc.world, 2));
    record(std::make_shared<ScriptedBackend>("vqa-blip", BackendRole::Vqa, 1, sc.world, 0));
    record(std::make_shared<ScriptedBackend>("vqa-vilt", BackendRole::Vqa, 2, sc.world, 0));
    record(std::make_shared<ScriptedBackend>("vqa-pali", BackendRole::Vqa, 3, sc.world, 0));
    record(std::make_shared<ScriptedBackend>("cap-florence", BackendRole::Caption, 1, sc.world, 0));
    record(std::make_shared<ScriptedBackend>("llm-planner", BackendRole::Llm, 1, sc.world, 0));
    return gateway;
}

struct AblationConfig {
    std::string name;
    BenchOptions bench;
    bool ensemble = true;
};

std::vector<AblationConfig> ablation_matrix() {
    std::vector<AblationConfig> configs(4);
    configs[0].name = "full";
    configs[1].name = "no-ssparser";
    configs[1].bench.pipeline.use_ssparser = false;
    configs[2].name = "no-verifier";
    configs[2].bench.pipeline.use_verifier = false;
    configs[3].name = "no-ensemble";
    configs[3].ensemble = false;
    return configs;
}

}  // namespace

int main(int argc, char** argv) {
    fs::path data_dir = "tests/data";
    fs::path assets_dir = "assets";
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--data-dir") && i + 1 < argc) data_dir = argv[++i];
        else if (!std::strcmp(argv[i], "--assets") && i + 1 < argc) assets_dir = argv[++i];
        else {
            std::cerr << "usage: gen_fixtures [--data-dir DIR] [--assets DIR]\n";
            return 2;
        }
    }

    try {
        Scenario sc = build_scenario();
        const fs::path fixtures_dir = data_dir / "fixtures";
        const fs::path bench_dir = data_dir / "bench";
        fs::remove_all(fixtures_dir);
        fs::create_directories(bench_dir);

        // image manifest
        fs::create_directories(fixtures_dir);
        {
            std::ofstream out(fixtures_dir / "images.jsonl");
            for (const auto& j : sc.manifest_json) out << j.dump() << '\n';
        }
        // bench samples
        {
            std::ofstream out(bench_dir / "samples.jsonl");
            for (const auto& s : sc.samples) {
                nlohmann::json j = {{"id", s.id},
                                    {"task", std::string(task_kind_name(s.task))},
                                    {"images", s.images},
                                    {"question", s.question},
                                    {"answer", s.ground_truth}};
                out << j.dump() << '\n';
            }
        }

        TaskRepository repo = TaskRepository::load((assets_dir / "tasks").string());
        const std::string prompt = default_verifier_prompt();

        Gateway gateway = recording_gateway(sc, fixtures_dir);
        std::cout << "recorded fixtures under " << fixtures_dir.string() << "\n";
        for (const AblationConfig& config : ablation_matrix()) {
            gateway.set_ensemble_enabled(config.ensemble);
            RunReport report =
                run_bench(sc.samples, sc.manifest, config.bench, gateway, repo, prompt);
            std::cout << "  " << config.name << ": accuracy "
                      << (report.accuracy ? *report.accuracy : -1) << "\n";
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "gen_fixtures: " << e.what() << "\n";
        return 1;
    }
}
