#include <cstddef>

namespace planscript {
namespace detail {

// Common object, scene, and attribute-bearing nouns seen in visual QA
// questions. Singular forms only; plural lookups resolve through the
// singularization rules. Keep sorted within each block for diffability.
extern const char* const kNounWords[];
extern const size_t kNounWordCount;

const char* const kNounWords[] = {
    // people and roles
    "adult", "athlete", "baby", "batter", "boy", "catcher", "chef", "child",
    "cowboy", "crowd", "customer", "dancer", "doctor", "driver", "family",
    "farmer", "female", "fireman", "gentleman", "girl", "guard", "guy",
    "human", "kid", "lady", "male", "man", "officer", "passenger", "pedestrian",
    "person", "pitcher", "player", "police", "policeman", "rider", "runner",
    "sailor", "skater", "skier", "soldier", "spectator", "surfer", "swimmer",
    "teacher", "toddler", "tourist", "waiter", "woman", "worker",
    // body parts
    "arm", "beard", "belly", "body", "chest", "ear", "elbow", "eye", "face",
    "finger", "foot", "hair", "hand", "head", "knee", "leg", "lip", "mouth",
    "mustache", "neck", "nose", "shoulder", "tail", "thumb", "toe", "tongue",
    "tooth", "wrist",
    // animals
    "animal", "ant", "bear", "bee", "bird", "buffalo", "bull", "butterfly",
    "calf", "camel", "cat", "cattle", "chicken", "cow", "crab", "deer", "dog",
    "dolphin", "donkey", "duck", "eagle", "elephant", "fish", "flamingo",
    "fox", "frog", "giraffe", "goat", "goose", "gull", "hawk", "hen", "horse",
    "insect", "kitten", "lamb", "lion", "lizard", "monkey", "mouse", "owl",
    "ox", "panda", "parrot", "penguin", "pet", "pig", "pigeon", "pony",
    "puppy", "rabbit", "raccoon", "ram", "rat", "seagull", "seal", "sheep",
    "snake", "spider", "squirrel", "swan", "tiger", "turkey", "turtle",
    "zebra",
    // food and drink
    "apple", "bacon", "bagel", "banana", "bean", "beef", "beer", "berry",
    "beverage", "bread", "broccoli", "burger", "butter", "cabbage", "cake",
    "candy", "carrot", "celery", "cereal", "cheese", "cherry", "chili",
    "chocolate", "coffee", "cookie", "corn", "cream", "cucumber", "cupcake",
    "dessert", "dish", "donut", "dough", "egg", "fruit", "garlic",
    "grape", "ham", "hamburger", "herb", "honey", "hotdog", "juice",
    "ketchup", "lemon", "lettuce", "lime", "meal", "meat", "melon", "milk",
    "muffin", "mushroom", "mustard", "noodle", "nut", "olive", "omelette",
    "onion", "orange", "pancake", "pasta", "pastry", "pea", "peach", "pear",
    "pepper", "pepperoni", "pickle", "pie", "pineapple", "pizza", "potato",
    "pumpkin", "rice", "salad", "salt", "sandwich", "sauce", "sausage",
    "shrimp", "snack", "soda", "soup", "spice", "spinach", "steak",
    "strawberry", "sugar", "tea", "toast", "tomato", "vegetable", "water",
    "watermelon", "wine",
    // kitchen and tableware
    "blender", "bottle", "bowl", "can", "cup", "cutlery", "fork", "glass",
    "grill", "jar", "jug", "kettle", "knife", "ladle", "lid", "mug", "napkin",
    "oven", "pan", "pitcher", "plate", "platter", "pot", "saucer", "skillet",
    "spatula", "spoon", "straw", "teapot", "thermos", "toaster", "tray",
    "utensil", "whisk",
    // furniture and household
    "armchair", "basket", "bathtub", "bed", "bench", "blanket", "blind",
    "bookcase", "bookshelf", "box", "bucket", "cabinet", "candle", "carpet",
    "chair", "chandelier", "closet", "couch", "counter", "countertop",
    "crate", "crib", "curtain", "cushion", "desk", "door", "doorway",
    "drawer", "dresser", "faucet", "fireplace", "floor", "frame", "furniture",
    "hamper", "hanger", "heater", "hook", "lamp", "lantern", "mat",
    "mattress", "mirror", "nightstand", "ottoman", "pillow", "quilt", "rack",
    "radiator", "rail", "railing", "rug", "seat", "shade", "sheet", "shelf",
    "shelving", "shower", "sink", "sofa", "stair", "staircase", "stool",
    "stove", "table", "tablecloth", "tile", "toilet", "towel", "tub", "vase",
    "wall", "wardrobe", "window", "windowsill",
    // electronics and appliances
    "adapter", "appliance", "battery", "cable", "calculator", "camera",
    "charger", "clock", "computer", "console", "controller", "cord",
    "device", "dishwasher", "dryer", "fan", "fridge", "headphone", "iphone",
    "keyboard", "laptop", "machine", "microphone", "microwave", "monitor",
    "mouse", "phone", "printer", "projector", "radio", "refrigerator",
    "remote", "router", "screen", "speaker", "switch", "tablet", "telephone",
    "television", "toaster", "tv", "washer", "wire",
    // clothing and accessories
    "apron", "backpack", "bag", "bandana", "belt", "bikini", "blazer",
    "blouse", "boot", "bow", "bracelet", "button", "cap", "cloth", "clothing",
    "coat", "collar", "costume", "dress", "earring", "fabric", "glove",
    "gown", "handbag", "hat", "heel", "helmet", "hood", "jacket", "jean",
    "jersey", "jewelry", "lace", "legging", "luggage", "mask", "mitten",
    "necklace", "necktie", "outfit", "pajama", "pant", "pocket", "purse",
    "ring", "robe", "sandal", "scarf", "shirt", "shoe", "short", "skirt",
    "sleeve", "slipper", "sneaker", "sock", "suit", "suitcase", "sunglass",
    "sweater", "sweatshirt", "swimsuit", "tie", "tshirt", "umbrella",
    "uniform", "vest", "wallet", "watch", "zipper",
    // vehicles and transport
    "aircraft", "airplane", "ambulance", "automobile", "bicycle", "bike",
    "boat", "bus", "cab", "canoe", "car", "carriage", "cart", "engine",
    "ferry", "firetruck", "handlebar", "helicopter", "jeep", "jet", "kayak",
    "locomotive", "minivan", "moped", "motorbike", "motorcycle", "pedal",
    "plane", "propeller", "sailboat", "scooter", "ship", "skateboard",
    "sled", "subway", "suv", "taxi", "tire", "tractor", "trailer", "train",
    "tram", "truck", "van", "vehicle", "wagon", "wheel", "wheelchair",
    "windshield", "yacht",
    // streets and buildings
    "airport", "alley", "apartment", "arch", "avenue", "awning", "balcony",
    "bank", "bar", "barn", "bridge", "building", "cafe", "castle", "ceiling",
    "chimney", "church", "city", "column", "construction", "corner",
    "crosswalk", "curb", "driveway", "entrance", "escalator", "factory",
    "farm", "fence", "fountain", "garage", "garden", "gate", "graffiti",
    "gym", "harbor", "highway", "hospital", "hotel", "house", "hut",
    "intersection", "kitchen", "ladder", "lane", "library", "lighthouse",
    "lobby", "mall", "market", "museum", "office", "park", "parking",
    "path", "pathway", "pavement", "pier", "platform", "playground", "plaza",
    "pole", "pool", "porch", "restaurant", "road", "roof", "room", "school",
    "shop", "sidewalk", "sign", "signal", "signpost", "station", "statue",
    "steeple", "store", "street", "streetlight", "structure", "tent",
    "terminal", "tower", "town", "track", "tunnel", "village", "walkway",
    "warehouse", "yard", "zoo",
    // nature and outdoors
    "bark", "beach", "boulder", "branch", "bush", "cactus", "cliff", "cloud",
    "coast", "creek", "desert", "dirt", "dune", "farmland", "field", "flower",
    "fog", "forest", "grass", "gravel", "ground", "hill", "horizon", "ice",
    "island", "lake", "land", "landscape", "lawn", "leaf", "lily", "log",
    "meadow", "moon", "moss", "mountain", "mud", "ocean", "palm", "pebble",
    "petal", "plant", "pond", "puddle", "rain", "river", "rock", "rose",
    "sand", "sea", "seaweed", "shore", "shrub", "sky", "snow", "soil",
    "star", "stem", "stick", "stone", "stream", "sun", "sunflower", "sunset",
    "surf", "tree", "trunk", "tulip", "valley", "vine", "water", "waterfall",
    "wave", "weed", "wood", "woods",
    // sports and recreation
    "ball", "balloon", "baseball", "basketball", "bat", "catch", "court",
    "dart", "dice", "equipment", "football", "frisbee", "game", "glove",
    "goal", "golf", "hockey", "kite", "net", "paddle", "parachute", "puzzle",
    "racket", "racquet", "rope", "skate", "ski", "slide", "snowboard",
    "soccer", "stadium", "surfboard", "swing", "tennis", "toy", "trampoline",
    "volleyball",
    // tools and materials
    "awl", "axe", "blade", "board", "bolt", "brick", "broom", "brush",
    "cardboard", "cement", "chain", "chalk", "clamp", "clip", "concrete",
    "drill", "dustpan", "flag", "flashlight", "glue", "hammer", "handle",
    "hinge", "hose", "iron", "key", "lock", "magnet", "mop", "nail", "paint",
    "paintbrush", "paper", "pin", "pipe", "plastic", "pliers", "plug",
    "plywood", "rake", "ribbon", "rod", "ruler", "saw", "scissors", "screw",
    "screwdriver", "shovel", "spring", "string", "tape", "thread", "tool",
    "toothbrush", "toothpaste", "wrench",
    // office, school, art
    "album", "art", "artwork", "bill", "binder", "book", "booklet",
    "calendar", "canvas", "card", "chart", "crayon", "document", "drawing",
    "easel", "envelope", "eraser", "folder", "ink", "journal", "label",
    "letter", "magazine", "map", "marker", "menu", "note", "notebook",
    "notepad", "novel", "number", "package", "page", "painting", "pen",
    "pencil", "photo", "photograph", "picture", "portrait", "poster",
    "receipt", "sculpture", "sketch", "stamp", "sticker", "text", "ticket",
    "word", "writing",
    // music
    "banjo", "cello", "drum", "flute", "guitar", "harp", "horn", "instrument",
    "keyboard", "music", "piano", "saxophone", "speaker", "trombone",
    "trumpet", "violin",
    // misc objects
    "anchor", "antenna", "badge", "banner", "barrel", "bead", "bell", "bin",
    "block", "bubble", "cage", "cane", "canopy", "cigarette", "coin", "comb",
    "cone", "container", "crown", "crystal", "cutting", "decoration", "dial",
    "display", "doll", "dome", "emblem", "feather", "figure", "figurine",
    "fire", "firework", "flame", "fur", "gift", "globe", "grate", "grid",
    "item", "kettle", "king", "knob", "knot", "leash", "lens", "light",
    "lightbulb", "logo", "mannequin", "medal", "mesh", "meter", "model",
    "object", "ornament", "patch", "pattern", "perfume", "pillar", "pipe",
    "price", "queen", "razor", "reflection", "sack", "saddle", "shadow",
    "shape", "smoke", "soap", "sponge", "spout", "sprinkler", "stack",
    "stand", "steam", "sticker", "strap", "stripe", "tag", "tank", "target",
    "teddy", "thing", "torch", "trash", "trashcan", "tripod", "trophy",
    "tube", "wig", "wing",
    // times, scenes, abstract-but-askable
    "afternoon", "area", "background", "bottom", "center", "color", "corner",
    "crowd", "day", "direction", "distance", "edge", "end", "evening",
    "event", "foreground", "front", "group", "image", "left", "middle",
    "morning", "night", "pair", "part", "photo", "picture", "place",
    "position", "rear", "right", "scene", "side", "size", "space", "spot",
    "surface", "time", "top", "view", "weather",
};

const size_t kNounWordCount = sizeof(kNounWords) / sizeof(kNounWords[0]);

}  // namespace detail
}  // namespace planscript
