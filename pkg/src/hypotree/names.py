"""Default name pools for fictional concepts, person members, and property adjectives.

Concepts are invented words so that generated worlds never collide with real-world
knowledge. Members are ordinary first names, properties are ordinary adjectives.
The three pools are pairwise disjoint, which the statement parser relies on to
tell members, concepts, and adjectives apart. Pool sizes cover height-4 trees
with room to spare even after demonstration building removes the names already
used by a target example.
"""

CONCEPTS: tuple[str, ...] = (
    "wumpus", "yumpus", "zumpus", "dumpus", "rompus", "numpus", "tumpus",
    "vumpus", "impus", "jompus", "dalpist", "sarper", "gergit", "storpist",
    "twimpee", "porpor", "frompor", "shumple", "felper", "kurpor", "timple",
    "folpee", "orgit", "rimpee", "pergit", "boompist", "worple", "drompee",
    "bempin", "gwompant", "dolper", "rorpant", "fimple", "yompin", "borpin",
    "jelgit", "lirpin", "rifpist", "yimple", "lompee", "arper", "delpee",
    "sorple", "dropant", "gomper", "hilper", "thorpin", "scrompist", "lorpus",
    "brimpus", "gorpus", "sterpus", "quimpus", "frompus", "zhorpus", "lempus",
    "grimpus", "shalpee", "torpin", "welfer", "daxler", "murpin", "coblit",
    "varnook", "pilbert", "quonter", "snerpus", "haldine", "wortle", "zugler",
    "minkle", "droffin", "balpist", "cerpor", "dilmee", "erpint", "flumber",
    "gaxter", "hompee", "irklet", "jasper", "kelpor", "lumbit", "morfee",
    "nulpist", "ospert", "prindle", "quagmer", "rulpee", "selpin", "trombit",
    "ulfer", "vindle", "wempus", "xolbit", "yarper", "zelpin", "axolyn",
    "bindler", "crombee", "dulper", "ebbler", "fonkle", "gribbet", "hulpin",
    "imblet", "jorpus", "kimber", "lompist", "mirpee", "norbit", "olpher",
    "pumbler", "quorfee", "rimblet", "stulper", "tarnible", "umplet",
    "velpist", "wunder", "xylber", "yolpin", "zorfee", "cralpist", "dwimper",
    "elbendor", "frulbit",
)

MEMBERS: tuple[str, ...] = (
    "Amy", "Pamela", "Jerry", "Edward", "Barbara", "Debra", "Nicole",
    "Sharon", "Raymond", "Michael", "Helen", "Jack", "Noah", "Oliver",
    "Sam", "Tom", "John", "Alice", "Bob", "Jessica", "Susan", "Fae",
    "Sally", "Polly", "Mary", "Frank", "Stephen", "Mark", "Joseph",
    "Andrew", "Patricia", "Linda", "Janet", "Jason", "George", "Emily",
    "William", "Eric", "Steven", "Shirley", "Rachel", "Jacob", "David",
    "Brian", "Angela", "Ashley", "Ronald", "Michelle", "Sandra", "Emma",
    "Christopher", "Rebecca", "Kathleen", "Thomas", "Laura", "Stephanie",
    "Scott", "Olivia", "Maria", "Amanda", "Gary", "Heather", "Keith",
    "Paula", "Vincent", "Wendy", "Carl", "Diane", "Felix", "Gloria",
    "Harold", "Irene", "Albert", "Bonnie", "Calvin", "Dora", "Elliot",
    "Faith", "Gordon", "Hazel", "Ivan", "Joan", "Kyle", "Lydia",
    "Marvin", "Nora", "Oscar", "Priscilla", "Quentin", "Rosa", "Seth",
    "Tina", "Ulysses", "Vera", "Walter", "Xenia", "Yvonne", "Zachary",
    "Abigail", "Bernard", "Cecilia", "Damian", "Eleanor", "Fernando",
    "Genevieve", "Hector", "Isabel", "Julian", "Katrina", "Leonard",
    "Miriam", "Nathaniel", "Ophelia", "Preston", "Queenie", "Roland",
    "Sylvia", "Terrence", "Ursula", "Violet", "Wesley", "Ximena",
    "Yolanda", "Zelda",
)

PROPERTIES: tuple[str, ...] = (
    "rainy", "liquid", "brown", "moderate", "large", "muffled",
    "translucent", "fruity", "salty", "amenable", "pale", "angry", "dark",
    "opaque", "cold", "slow", "cute", "hairy", "strong", "smart",
    "gregarious", "gnawing", "adaptable", "bushy", "warm-blooded",
    "muscular", "shy", "dull", "small", "aggressive", "overcast", "bright",
    "bitter", "sweet", "sour", "happy", "loud", "quiet", "feisty", "mean",
    "nervous", "red", "blue", "orange", "windy", "luminous", "earthy",
    "melodic", "spicy", "tame", "wild", "fast", "floral", "metallic",
    "wooden", "dense", "hollow", "sunny", "snowy", "misty", "grumpy",
    "jolly", "brave", "timid", "sleepy", "transparent", "rough", "smooth",
    "fluffy", "gentle", "sturdy", "brittle", "glossy", "matte", "chilly",
    "toasty", "soggy", "crisp", "mellow", "zesty", "drowsy", "alert",
    "clumsy", "graceful", "noisy", "silent", "sticky", "slippery", "dusty",
    "tidy", "messy", "cheerful", "gloomy", "patient", "restless", "humble",
    "proud", "curious", "cautious", "playful", "stern", "tender", "fierce",
    "mild", "vivid", "faded", "heavy", "light", "ancient", "modern",
    "rural", "urban", "salient", "obscure", "fragrant", "pungent", "tart",
    "savory", "creamy", "crunchy", "velvety", "grainy",
)

# Lexicon used by the parser to recognize adjectives that could otherwise be
# mistaken for plural nouns (e.g. "gregarious").
ADJECTIVES: frozenset[str] = frozenset(PROPERTIES)

MEMBER_LEXICON: frozenset[str] = frozenset(m.lower() for m in MEMBERS)
