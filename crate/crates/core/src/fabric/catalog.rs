//! Static schemas for the 21 simulated task families.

/// How a payload field is filled from the seeded generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldKind {
    /// Inclusive integer range.
    Int(i64, i64),
    /// Inclusive float range, rounded to two decimals.
    Float(f64, f64),
    Choice(&'static [&'static str]),
    /// `k` distinct picks from a pool, in pick order.
    Tags(&'static [&'static str], usize),
    Flag,
    /// A prefix followed by five digits.
    Ident(&'static str),
}

impl FieldKind {
    pub fn is_numeric(&self) -> bool {
        matches!(self, FieldKind::Int(..) | FieldKind::Float(..))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldDef {
    pub name: &'static str,
    pub kind: FieldKind,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToolDef {
    pub name: &'static str,
    /// Short heading used in prompts, e.g. "Project Info".
    pub label: &'static str,
    pub description: &'static str,
    pub fields: &'static [FieldDef],
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub tool: &'static str,
    pub field: &'static str,
    pub weight: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Band {
    pub min: f64,
    pub label: &'static str,
}

/// A prompt-specified metric: `constant + Σ weight·field`, rounded to two
/// decimals, optionally mapped to a label through descending bands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedDef {
    pub field: &'static str,
    pub constant: f64,
    pub terms: &'static [Term],
    pub label_field: Option<&'static str>,
    /// Checked in order; the first band whose `min` the score reaches wins.
    pub bands: &'static [Band],
    pub fallback_label: &'static str,
    /// Human wording for prompts, when the generic formula reads poorly.
    pub prose: Option<&'static str>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyDef {
    pub name: &'static str,
    pub title: &'static str,
    pub domain: &'static str,
    pub entity_param: &'static str,
    pub entity_singular: &'static str,
    pub entity_plural: &'static str,
    /// Opening verb phrase of the prompt, e.g. "Create encyclopedia entries for".
    pub objective: &'static str,
    pub output_file: &'static str,
    /// Used to name composed skills, e.g. `process_cocktail_complete`.
    pub skill_stem: &'static str,
    pub pool: &'static [&'static str],
    pub tools: &'static [ToolDef],
    pub derived: DerivedDef,
}

impl FamilyDef {
    pub fn tool(&self, name: &str) -> Option<&'static ToolDef> {
        self.tools.iter().find(|t| t.name == name)
    }

    pub fn tool_names(&self) -> Vec<&'static str> {
        self.tools.iter().map(|t| t.name).collect()
    }

    /// Derived-metric terms whose tool is among `tools`.
    pub fn active_terms(&self, tools: &[impl AsRef<str>]) -> Vec<Term> {
        self.derived
            .terms
            .iter()
            .filter(|t| tools.iter().any(|r| r.as_ref() == t.tool))
            .copied()
            .collect()
    }
}

pub fn families() -> &'static [FamilyDef] {
    FAMILIES
}

pub fn family(name: &str) -> Option<&'static FamilyDef> {
    FAMILIES.iter().find(|f| f.name == name)
}

pub fn family_names() -> Vec<&'static str> {
    FAMILIES.iter().map(|f| f.name).collect()
}

const fn f(name: &'static str, kind: FieldKind) -> FieldDef {
    FieldDef { name, kind }
}

const fn t(
    name: &'static str,
    label: &'static str,
    description: &'static str,
    fields: &'static [FieldDef],
) -> ToolDef {
    ToolDef { name, label, description, fields }
}

const fn w(tool: &'static str, field: &'static str, weight: f64) -> Term {
    Term { tool, field, weight }
}

const fn b(min: f64, label: &'static str) -> Band {
    Band { min, label }
}

use FieldKind::{Choice, Flag, Float, Ident, Int, Tags};

const COUNTRIES: &[&str] = &[
    "Persia", "Thailand", "United States", "United Kingdom", "Egypt", "Russia", "Japan", "France",
    "Burma", "Turkey", "Canada", "Norway",
];
const TEMPERAMENTS: &[&str] = &[
    "Gentle", "Playful", "Affectionate", "Independent", "Curious", "Calm", "Vocal", "Energetic",
];
const LIFE_SPANS: &[&str] = &["10-15", "12-16", "12-17", "13-18", "14-20", "9-13"];
const CAT_BREEDS: &[&str] = &[
    "Persian", "Siamese", "Maine Coon", "Bengal", "Ragdoll", "Sphynx", "British Shorthair", "Abyssinian",
    "Scottish Fold", "Birman", "Devon Rex", "Norwegian Forest Cat",
];
const COATS: &[&str] = &["Long", "Short", "Semi-long", "Hairless", "Curly", "Double"];
const CAT_FACTS: &[&str] = &[
    "Cats sleep for around two thirds of the day",
    "A group of cats is called a clowder",
    "Cats have five toes on their front paws",
    "A cat's nose print is unique",
    "Cats can rotate their ears 180 degrees",
    "Most cats are lactose intolerant",
];
const CAT_BLURBS: &[&str] = &[
    "A long-haired breed with a round face",
    "A slender breed with striking blue eyes",
    "One of the largest domesticated breeds",
    "A spotted breed with a wild appearance",
    "A docile breed that goes limp when held",
    "A sociable breed known for its curiosity",
];

const SPIRITS: &[&str] = &["Tequila", "Rum", "Bourbon", "Gin", "Vodka", "Campari", "Rye Whiskey", "Brandy"];
const DRINK_CATEGORIES: &[&str] = &["Cocktail", "Ordinary Drink", "Punch / Party Drink", "Shot", "Classic"];
const GARNISHES: &[&str] = &["Lime wedge", "Mint sprig", "Orange peel", "Olive", "Cherry", "Lemon twist"];
const GLASSES: &[&str] = &[
    "Cocktail glass", "Highball glass", "Old-fashioned glass", "Coupe", "Collins glass", "Margarita glass",
];
const COCKTAILS: &[&str] = &[
    "Margarita", "Mojito", "Old Fashioned", "Martini", "Negroni", "Daiquiri", "Manhattan", "Cosmopolitan",
    "Whiskey Sour", "Mai Tai", "Paloma", "Sidecar",
];

const CAPITALS: &[&str] = &["Paris", "Tokyo", "Brasilia", "Nairobi", "Ottawa", "New Delhi", "Berlin", "Canberra"];
const REGIONS: &[&str] = &["Europe", "Asia", "Americas", "Africa", "Oceania"];
const LANGUAGES: &[&str] = &["French", "Japanese", "Portuguese", "Swahili", "English", "Hindi", "German", "Spanish"];
const CURRENCY_CODES: &[&str] = &["EUR", "JPY", "BRL", "KES", "CAD", "INR", "AUD", "MXN", "NOK"];
const CURRENCY_NAMES: &[&str] = &["Euro", "Yen", "Real", "Shilling", "Dollar", "Rupee", "Peso", "Krone"];
const NEIGHBOURS: &[&str] = &[
    "Spain", "Italy", "Belgium", "Argentina", "Uganda", "Tanzania", "Nepal", "Austria", "Guatemala", "Sweden",
];

const ABILITIES: &[&str] = &["Strength", "Dexterity", "Constitution", "Intelligence", "Wisdom", "Charisma"];
const SPELLS: &[&str] = &["Fireball", "Cure Wounds", "Eldritch Blast", "Healing Word", "Shield", "Hex", "Bless"];
const CLASS_FEATURES: &[&str] = &[
    "Archmage", "Extra Attack", "Stroke of Luck", "Divine Intervention", "Foe Slayer", "Superior Inspiration",
];
const WEAPONS: &[&str] = &["Quarterstaff", "Longsword", "Rapier", "Mace", "Longbow", "Scimitar", "Dagger"];
const SUBCLASSES: &[&str] = &["School of Evocation", "Champion", "Thief", "Life Domain", "Oath of Devotion", "Hunter"];
const ARMOR: &[&str] = &["Unarmored", "Light", "Medium", "Heavy", "Shields"];

const SIZES: &[&str] = &["Tiny", "Small", "Medium", "Large", "Huge", "Gargantuan"];
const MONSTER_TYPES: &[&str] = &["Humanoid", "Monstrosity", "Aberration", "Undead", "Dragon", "Ooze", "Giant"];
const MONSTER_ACTIONS: &[&str] = &["Multiattack", "Bite", "Eye Rays", "Mind Blast", "Fire Breath", "Engulf", "Claw"];
const DAMAGE_TYPES: &[&str] = &["Fire", "Poison", "Psychic", "Necrotic", "Acid", "Cold", "Lightning"];
const ENVIRONMENTS: &[&str] = &["Forest", "Underdark", "Mountain", "Swamp", "Coastal", "Desert", "Arctic"];

const DOG_GROUPS: &[&str] = &["Sporting", "Hound", "Working", "Herding", "Toy", "Terrier", "Non-Sporting"];
const DOG_SUB_BREEDS: &[&str] = &["Standard", "Miniature", "Toy", "English", "French", "American", "Wirehaired"];
const HEALTH_ISSUES: &[&str] = &["Hip dysplasia", "Eye disorders", "Obesity", "Breathing problems", "Back problems"];

const DEV_NAMES: &[&str] = &[
    "Alice Chen", "Bruno Silva", "Chidi Okafor", "Dana Kim", "Erik Larsen", "Fatima Noor", "Goran Petrov",
    "Hana Sato", "Ivan Horvat", "Julia Weber",
];
const PROJECT_BLURBS: &[&str] = &[
    "GitLab Runner executes CI/CD jobs",
    "Git RPC service for GitLab",
    "Static site hosting daemon",
    "SSH access and repository management",
    "Command line interface for GitLab",
    "Smart reverse proxy for GitLab",
];
const ISSUE_TITLES: &[&str] = &[
    "Flaky pipeline on main",
    "Improve error message for timeouts",
    "Upgrade Go toolchain",
    "Memory leak in cache layer",
    "Document configuration flags",
    "Support for ARM runners",
];

const MEDIA_TYPES: &[&str] = &["TV", "Movie", "OVA", "ONA", "Special"];
const STUDIOS: &[&str] = &["Sunrise", "Bones", "White Fox", "Madhouse", "Pierrot", "Toei", "Ghibli", "MAPPA"];
const ANIME_CHARACTERS: &[&str] = &["Spike Spiegel", "Edward Elric", "Okabe Rintarou", "Light Yagami", "Levi", "Mob"];
const DIRECTORS: &[&str] = &["Shinichiro Watanabe", "Hiroshi Hamasaki", "Tetsuro Araki", "Hayao Miyazaki", "Yuzuru Tachikawa"];

const CITIES: &[&str] = &["Gwenborough", "Wisokyburgh", "McKenziehaven", "South Elvis", "Roscoeview", "Lebsackbury"];
const COMPANIES: &[&str] = &["Romaguera-Crona", "Deckow-Crist", "Keebler LLC", "Robel-Corkery", "Hoeger LLC"];
const POST_TITLES: &[&str] = &[
    "sunt aut facere repellat",
    "qui est esse",
    "ea molestias quasi",
    "eum et est occaecati",
    "nesciunt quas odio",
];

const ORGANISMS: &[&str] = &["Homo sapiens", "Mus musculus", "Danio rerio", "Drosophila melanogaster"];
const MOTIFS: &[&str] = &["TATA box", "CAAT box", "GC box", "E-box", "Kozak sequence"];

const GENDERS: &[&str] = &["male", "female"];
const NATION_CODES: &[&str] = &["US", "MX", "JP", "IE", "PK", "RU", "ES", "IN", "CN", "NG"];
const NAME_ORIGINS: &[&str] = &["Hebrew", "Latin", "Japanese", "Irish", "Arabic", "Slavic", "Sanskrit", "Igbo"];
const MEANINGS: &[&str] = &["supplanter", "beloved", "love child", "little warrior", "captivating", "holy", "light"];

const WEATHER_CODES: &[&str] = &["Clear sky", "Partly cloudy", "Overcast", "Drizzle", "Rain", "Snow", "Thunderstorm"];
const POLLUTANTS: &[&str] = &["pm2_5", "pm10", "ozone", "nitrogen_dioxide", "carbon_monoxide"];

const POKE_TYPES: &[&str] = &["Electric", "Grass", "Fire", "Water", "Normal", "Ghost", "Fighting", "Psychic", "Fairy"];
const GENERATIONS: &[&str] = &["generation-i", "generation-ii", "generation-iii", "generation-iv"];
const POKE_ABILITIES: &[&str] = &["static", "overgrow", "blaze", "torrent", "run-away", "thick-fat", "cursed-body"];
const POKE_MOVES: &[&str] = &["thunderbolt", "solar-beam", "flamethrower", "hydro-pump", "hyper-beam", "shadow-ball"];

const PERSON_NAMES: &[&str] = &["Ava Lindqvist", "Mateo Rossi", "Yuki Tanaka", "Noah Dubois", "Zara Ahmed", "Lena Vogel"];
const NATIONALITIES: &[&str] = &["AU", "BR", "CA", "CH", "DE", "DK", "ES", "FI", "FR", "GB", "NZ"];
const USER_CITIES: &[&str] = &["Bergen", "Lyon", "Perth", "Zaragoza", "Tampere", "Leeds", "Basel"];
const EMAIL_DOMAINS: &[&str] = &["example.com", "mail.test", "inbox.dev", "post.example"];
const PHONE_PREFIXES: &[&str] = &["+1", "+33", "+44", "+49", "+61", "+358"];

const CUISINES: &[&str] = &["Italian", "Japanese", "British", "Thai", "French", "Moroccan", "Greek", "Indian", "Spanish"];
const MEAL_CATEGORIES: &[&str] = &["Pasta", "Chicken", "Beef", "Vegetarian", "Seafood", "Lamb", "Side"];
const MAIN_INGREDIENTS: &[&str] = &["Penne", "Chicken thigh", "Beef fillet", "Rice noodles", "Aubergine", "Eggs", "Rice"];
const CATEGORY_BLURBS: &[&str] = &[
    "Dishes built around dried or fresh pasta",
    "Poultry dishes for every occasion",
    "Hearty dishes centred on beef",
    "Meat-free mains and sides",
    "Fish and shellfish recipes",
];

const LIFE_STATUS: &[&str] = &["Alive", "Dead", "Presumed Dead"];
const SPECIES: &[&str] = &["Human", "Alien", "Humanoid", "Robot", "Mythological Creature"];
const CHAR_GENDERS: &[&str] = &["Male", "Female", "Genderless"];
const RM_EPISODES: &[&str] = &["Pilot", "Lawnmower Dog", "Anatomy Park", "Rixty Minutes", "Total Rickall", "The Ricklantis Mixup"];
const RM_LOCATIONS: &[&str] = &["Earth (C-137)", "Citadel of Ricks", "Anatomy Park", "Bird World", "Gazorpazorp"];
const DIMENSIONS: &[&str] = &["Dimension C-137", "Replacement Dimension", "Cronenberg Dimension", "Fantasy Dimension"];

const NETWORKS: &[&str] = &["AMC", "HBO", "NBC", "BBC One", "Netflix", "FX", "ABC", "Showtime"];
const SHOW_STATUS: &[&str] = &["Ended", "Running", "To Be Determined"];
const ACTORS: &[&str] = &["Bryan Cranston", "Dominic West", "Jennifer Aniston", "Benedict Cumberbatch", "Louis Hofmann", "Brian Cox"];

const UNI_COUNTRIES: &[&str] = &["United States", "United Kingdom", "Switzerland", "China", "France", "Japan", "Canada"];
const UNI_DOMAINS: &[&str] = &["mit.edu", "stanford.edu", "ox.ac.uk", "ethz.ch", "tsinghua.edu.cn", "sorbonne.fr"];
const SUBJECTS: &[&str] = &["Engineering", "Computer Science", "Medicine", "Humanities", "Physics", "Economics"];
const UNI_CITIES: &[&str] = &["Cambridge", "Stanford", "Oxford", "Zurich", "Beijing", "Paris", "Tokyo", "Toronto"];

const QUAKE_PLACES: &[&str] = &["near the coast", "offshore trench", "inland valley", "volcanic zone", "mountain front"];
const FAULTS: &[&str] = &["San Andreas", "Aleutian Megathrust", "Japan Trench", "Atacama", "Sunda Megathrust", "North Anatolian"];

const POS: &[&str] = &["noun", "verb", "adjective", "adverb"];
const SYNONYMS: &[&str] = &["chance", "fleeting", "pervasive", "articulate", "hardy", "careful", "model", "typical"];
const IPA: &[&str] = &["/ˌsɛrənˈdɪpɪti/", "/ɪˈfɛmərəl/", "/juːˈbɪkwɪtəs/", "/ˈɛləkwənt/", "/rɪˈzɪliənt/"];
const EXAMPLES: &[&str] = &[
    "It was pure serendipity that we met.",
    "Fame in the digital age is ephemeral.",
    "Smartphones are now ubiquitous.",
    "She gave an eloquent speech.",
];

const INCOME_LEVELS: &[&str] = &["High income", "Upper middle income", "Lower middle income", "Low income"];
const WB_CAPITALS: &[&str] = &["Washington D.C.", "Beijing", "New Delhi", "Brasilia", "Abuja", "Berlin", "Tokyo", "Pretoria"];
const WB_REGIONS: &[&str] = &["North America", "East Asia & Pacific", "South Asia", "Latin America & Caribbean", "Sub-Saharan Africa", "Europe & Central Asia"];

static FAMILIES: &[FamilyDef] = &[
    FamilyDef {
        name: "cat-facts-collector",
        title: "Cat Facts Collector",
        domain: "Reference",
        entity_param: "breed_name",
        entity_singular: "breed",
        entity_plural: "cat breeds",
        objective: "Create encyclopedia entries for",
        output_file: "cat_encyclopedia.json",
        skill_stem: "cat_breed",
        pool: CAT_BREEDS,
        tools: &[
            t("breed_profile", "Breed Profile", "Get breed info and characteristics", &[
                f("origin", Choice(COUNTRIES)),
                f("temperament", Choice(TEMPERAMENTS)),
                f("life_span", Choice(LIFE_SPANS)),
                f("weight_kg", Float(2.5, 9.0)),
            ]),
            t("breed_relatives", "Country Relatives", "List breeds from same country", &[
                f("country_breed_count", Int(1, 12)),
                f("relatives", Tags(CAT_BREEDS, 3)),
            ]),
            t("breed_coat_family", "Coat Family", "List breeds with similar coat", &[
                f("coat_type", Choice(COATS)),
                f("coat_family_size", Int(1, 20)),
                f("shedding_level", Int(1, 5)),
            ]),
            t("breed_facts", "Breed Facts", "Get curated facts about the breed", &[
                f("fact_count", Int(1, 30)),
                f("top_fact", Choice(CAT_FACTS)),
            ]),
            t("breed_encyclopedia", "Encyclopedia", "Get the encyclopedia summary", &[
                f("popularity_rank", Int(1, 60)),
                f("summary", Choice(CAT_BLURBS)),
            ]),
        ],
        derived: DerivedDef {
            field: "care_score",
            constant: 0.0,
            terms: &[
                w("breed_profile", "weight_kg", 0.6),
                w("breed_coat_family", "shedding_level", 1.5),
                w("breed_facts", "fact_count", 0.2),
            ],
            label_field: Some("care_level"),
            bands: &[b(10.0, "High"), b(6.0, "Moderate")],
            fallback_label: "Low",
            prose: None,
        },
    },
    FamilyDef {
        name: "cocktail-menu-generator",
        title: "Cocktail Menu Generator",
        domain: "Food",
        entity_param: "name",
        entity_singular: "cocktail",
        entity_plural: "classic cocktails",
        objective: "Create a cocktail menu for",
        output_file: "cocktail_menu.json",
        skill_stem: "cocktail",
        pool: COCKTAILS,
        tools: &[
            t("search", "Search", "Search cocktail by name", &[
                f("drink_id", Int(11000, 17999)),
                f("category", Choice(DRINK_CATEGORIES)),
                f("alcoholic", Flag),
            ]),
            t("details", "Details", "Get full recipe and instructions", &[
                f("ingredient_count", Int(2, 8)),
                f("main_ingredient", Choice(SPIRITS)),
                f("garnish", Choice(GARNISHES)),
            ]),
            t("by_ingredient", "By Ingredient", "List cocktails with ingredient", &[
                f("ingredient_drink_count", Int(3, 80)),
                f("related_drinks", Tags(COCKTAILS, 3)),
            ]),
            t("by_category", "By Category", "List cocktails in category", &[
                f("category_drink_count", Int(5, 120)),
                f("category_peers", Tags(COCKTAILS, 3)),
            ]),
            t("by_glass", "By Glass", "List cocktails served in the same glass", &[
                f("glass", Choice(GLASSES)),
                f("glass_drink_count", Int(2, 60)),
            ]),
        ],
        derived: DerivedDef {
            field: "estimated_prep_minutes",
            constant: 2.0,
            terms: &[w("details", "ingredient_count", 1.5)],
            label_field: Some("complexity_rating"),
            bands: &[b(11.0, "Complex"), b(6.5, "Medium")],
            fallback_label: "Easy",
            prose: Some("Calculate complexity rating (Easy/Medium/Complex based on ingredient count) and estimated prep time"),
        },
    },
    FamilyDef {
        name: "countries-encyclopedia",
        title: "Countries Encyclopedia",
        domain: "Reference",
        entity_param: "country",
        entity_singular: "country",
        entity_plural: "countries",
        objective: "Build encyclopedia entries for",
        output_file: "countries_encyclopedia.json",
        skill_stem: "country",
        pool: &["France", "Japan", "Brazil", "Kenya", "Canada", "India", "Germany", "Australia", "Mexico", "Norway"],
        tools: &[
            t("country_overview", "Overview", "Get capital, region and population", &[
                f("capital", Choice(CAPITALS)),
                f("region", Choice(REGIONS)),
                f("population_millions", Float(1.0, 1400.0)),
            ]),
            t("country_languages", "Languages", "Get official languages", &[
                f("primary_language", Choice(LANGUAGES)),
                f("language_count", Int(1, 12)),
            ]),
            t("country_currency", "Currency", "Get currency information", &[
                f("currency_code", Choice(CURRENCY_CODES)),
                f("currency_name", Choice(CURRENCY_NAMES)),
            ]),
            t("country_neighbors", "Neighbors", "List bordering countries", &[
                f("border_count", Int(1, 14)),
                f("neighbors", Tags(NEIGHBOURS, 3)),
            ]),
            t("country_economy", "Economy", "Get economic indicators", &[
                f("gdp_billion", Float(10.0, 25000.0)),
                f("area_thousand_km2", Float(1.0, 17000.0)),
            ]),
        ],
        derived: DerivedDef {
            field: "profile_score",
            constant: 0.0,
            terms: &[
                w("country_overview", "population_millions", 0.1),
                w("country_languages", "language_count", 2.0),
                w("country_neighbors", "border_count", 1.5),
            ],
            label_field: None,
            bands: &[],
            fallback_label: "",
            prose: None,
        },
    },
    FamilyDef {
        name: "dnd-campaign-builder",
        title: "D&D Campaign Builder",
        domain: "Gaming",
        entity_param: "class_name",
        entity_singular: "class",
        entity_plural: "character classes",
        objective: "Prepare campaign reference sheets for",
        output_file: "dnd_campaign.json",
        skill_stem: "dnd_class",
        pool: &["Wizard", "Fighter", "Rogue", "Cleric", "Paladin", "Ranger", "Bard", "Druid", "Warlock", "Sorcerer"],
        tools: &[
            t("get_class", "Class", "Get hit die and primary ability", &[
                f("hit_die", Int(6, 12)),
                f("primary_ability", Choice(ABILITIES)),
                f("saving_throws", Tags(ABILITIES, 2)),
            ]),
            t("get_class_spells", "Spells", "List spells available to the class", &[
                f("spell_count", Int(1, 60)),
                f("signature_spell", Choice(SPELLS)),
            ]),
            t("get_class_features", "Features", "List class features by level", &[
                f("feature_count", Int(3, 25)),
                f("capstone_feature", Choice(CLASS_FEATURES)),
            ]),
            t("get_starting_equipment", "Starting Equipment", "Get starting equipment", &[
                f("equipment_count", Int(2, 10)),
                f("starting_weapon", Choice(WEAPONS)),
            ]),
            t("get_subclasses", "Subclasses", "List subclasses", &[
                f("subclass_count", Int(1, 8)),
                f("featured_subclass", Choice(SUBCLASSES)),
            ]),
            t("get_proficiencies", "Proficiencies", "Get proficiencies", &[
                f("skill_choices", Int(1, 4)),
                f("armor_training", Choice(ARMOR)),
            ]),
        ],
        derived: DerivedDef {
            field: "power_rating",
            constant: 0.0,
            terms: &[
                w("get_class", "hit_die", 2.0),
                w("get_class_spells", "spell_count", 0.5),
                w("get_class_features", "feature_count", 1.0),
            ],
            label_field: Some("tier"),
            bands: &[b(40.0, "Heroic"), b(25.0, "Adept")],
            fallback_label: "Novice",
            prose: None,
        },
    },
    FamilyDef {
        name: "dnd-monster-compendium",
        title: "D&D Monster Compendium",
        domain: "Gaming",
        entity_param: "monster_name",
        entity_singular: "monster",
        entity_plural: "monsters",
        objective: "Compile compendium entries for",
        output_file: "monster_compendium.json",
        skill_stem: "monster",
        pool: &[
            "Goblin", "Owlbear", "Beholder", "Mind Flayer", "Lich", "Ancient Red Dragon", "Troll", "Gelatinous Cube",
            "Kraken", "Mimic",
        ],
        tools: &[
            t("get_monster", "Monster", "Get challenge rating, size and type", &[
                f("challenge_rating", Int(1, 30)),
                f("size", Choice(SIZES)),
                f("monster_type", Choice(MONSTER_TYPES)),
            ]),
            t("get_monster_stats", "Stats", "Get armor class, hit points and speed", &[
                f("armor_class", Int(10, 22)),
                f("hit_points", Int(7, 600)),
                f("speed_ft", Int(10, 120)),
            ]),
            t("get_monster_actions", "Actions", "List monster actions", &[
                f("action_count", Int(1, 6)),
                f("signature_action", Choice(MONSTER_ACTIONS)),
            ]),
            t("get_monster_abilities", "Abilities", "List special abilities", &[
                f("ability_count", Int(1, 6)),
                f("legendary", Flag),
            ]),
            t("get_monster_resistances", "Resistances", "Get resistances and immunities", &[
                f("resistance_count", Int(1, 8)),
                f("immunity", Choice(DAMAGE_TYPES)),
            ]),
            t("get_monster_habitat", "Habitat", "Get habitat and encounter size", &[
                f("environment", Choice(ENVIRONMENTS)),
                f("encounter_group_size", Int(1, 12)),
            ]),
        ],
        derived: DerivedDef {
            field: "threat_score",
            constant: 0.0,
            terms: &[
                w("get_monster", "challenge_rating", 3.0),
                w("get_monster_stats", "hit_points", 0.1),
                w("get_monster_stats", "armor_class", 1.0),
            ],
            label_field: Some("threat_level"),
            bands: &[b(80.0, "Deadly"), b(40.0, "Hard")],
            fallback_label: "Standard",
            prose: None,
        },
    },
    FamilyDef {
        name: "dog-breeds-encyclopedia",
        title: "Dog Breeds Encyclopedia",
        domain: "Reference",
        entity_param: "breed",
        entity_singular: "breed",
        entity_plural: "dog breeds",
        objective: "Create encyclopedia entries for",
        output_file: "dog_breeds.json",
        skill_stem: "dog_breed",
        pool: &[
            "Labrador", "Beagle", "Poodle", "Bulldog", "Boxer", "Dachshund", "Husky", "Corgi", "Shiba", "Akita",
        ],
        tools: &[
            t("breed_info", "Breed Info", "Get breed group, size and lifespan", &[
                f("group", Choice(DOG_GROUPS)),
                f("size", Choice(SIZES)),
                f("lifespan_years", Int(8, 16)),
            ]),
            t("breed_images", "Images", "List breed images", &[
                f("image_count", Int(1, 200)),
                f("featured_image", Ident("img_")),
            ]),
            t("sub_breeds", "Sub-breeds", "List sub-breeds", &[
                f("sub_breed_count", Int(1, 6)),
                f("sub_breeds", Tags(DOG_SUB_BREEDS, 2)),
            ]),
            t("breed_traits", "Traits", "Get trait ratings", &[
                f("energy_level", Int(1, 5)),
                f("trainability", Int(1, 5)),
                f("friendliness", Int(1, 5)),
            ]),
            t("breed_health", "Health", "Get common health notes", &[
                f("common_issue", Choice(HEALTH_ISSUES)),
                f("avg_vet_visits", Int(1, 6)),
            ]),
        ],
        derived: DerivedDef {
            field: "popularity_index",
            constant: 0.0,
            terms: &[
                w("breed_info", "lifespan_years", 1.0),
                w("breed_images", "image_count", 0.1),
                w("sub_breeds", "sub_breed_count", 2.0),
            ],
            label_field: None,
            bands: &[],
            fallback_label: "",
            prose: None,
        },
    },
    FamilyDef {
        name: "gitlab-deep-analysis",
        title: "GitLab Deep Analysis",
        domain: "Developer",
        entity_param: "project_path",
        entity_singular: "project",
        entity_plural: "GitLab repositories",
        objective: "Perform a comprehensive analysis of",
        output_file: "gitlab_analysis_results.json",
        skill_stem: "gitlab_project",
        pool: &[
            "gitlab-runner", "gitaly", "gitlab-pages", "gitlab-shell", "cli", "gitlab-workhorse", "gitlab-ui",
            "omnibus-gitlab", "gitlab-exporter", "gitlab-agent",
        ],
        tools: &[
            t("get_project_info", "Project Info", "Get project details (stars, forks, description)", &[
                f("stars", Int(1, 5000)),
                f("forks", Int(1, 2000)),
                f("description", Choice(PROJECT_BLURBS)),
            ]),
            t("get_contributors", "Contributors", "Get contributor list", &[
                f("contributor_count", Int(1, 100)),
                f("top_contributors", Tags(DEV_NAMES, 5)),
            ]),
            t("get_commits", "Recent Commits", "Get commit history", &[
                f("commit_count", Int(1, 100)),
                f("latest_author", Choice(DEV_NAMES)),
            ]),
            t("get_branches", "Branches", "Get branch information", &[
                f("branch_count", Int(1, 100)),
                f("protected_branches", Int(1, 10)),
            ]),
            t("get_issues", "Issues", "Get issue list", &[
                f("open_issues", Int(1, 100)),
                f("latest_issue_title", Choice(ISSUE_TITLES)),
            ]),
            t("get_merge_requests", "Merge Requests", "Get merge request activity", &[
                f("open_merge_requests", Int(1, 60)),
                f("merged_last_month", Int(1, 80)),
            ]),
        ],
        derived: DerivedDef {
            field: "activity_score",
            constant: 0.0,
            terms: &[
                w("get_commits", "commit_count", 0.4),
                w("get_contributors", "contributor_count", 0.3),
                w("get_issues", "open_issues", 0.2),
                w("get_branches", "branch_count", 0.1),
            ],
            label_field: Some("health_status"),
            bands: &[b(70.0, "healthy"), b(40.0, "moderate")],
            fallback_label: "inactive",
            prose: Some("Calculate activity score (0-100) based on commits (40%), contributors (30%), issues (20%), branches (10%)"),
        },
    },
    FamilyDef {
        name: "jikan-anime-analysis",
        title: "Jikan Anime Analysis",
        domain: "Entertainment",
        entity_param: "anime_title",
        entity_singular: "title",
        entity_plural: "anime titles",
        objective: "Analyze",
        output_file: "anime_analysis.json",
        skill_stem: "anime",
        pool: &[
            "Cowboy Bebop", "Fullmetal Alchemist", "Steins;Gate", "Death Note", "Naruto", "One Piece",
            "Attack on Titan", "Spirited Away", "Mob Psycho 100", "Haikyu!!",
        ],
        tools: &[
            t("anime_search", "Search", "Find the anime entry", &[
                f("mal_id", Int(1, 50000)),
                f("media_type", Choice(MEDIA_TYPES)),
                f("episodes", Int(1, 1000)),
            ]),
            t("anime_details", "Details", "Get score, rank and studio", &[
                f("score", Float(5.0, 9.5)),
                f("rank", Int(1, 5000)),
                f("studio", Choice(STUDIOS)),
            ]),
            t("anime_characters", "Characters", "List main characters", &[
                f("character_count", Int(5, 200)),
                f("lead_character", Choice(ANIME_CHARACTERS)),
            ]),
            t("anime_staff", "Staff", "List production staff", &[
                f("staff_count", Int(5, 150)),
                f("director", Choice(DIRECTORS)),
            ]),
            t("anime_recommendations", "Recommendations", "List related recommendations", &[
                f("recommendation_count", Int(1, 50)),
                f("top_recommendation", Choice(&["Trigun", "Samurai Champloo", "Hunter x Hunter", "Monster", "Erased"])),
            ]),
        ],
        derived: DerivedDef {
            field: "acclaim_score",
            constant: 0.0,
            terms: &[
                w("anime_details", "score", 8.0),
                w("anime_characters", "character_count", 0.05),
                w("anime_search", "episodes", 0.01),
            ],
            label_field: Some("tier"),
            bands: &[b(75.0, "Masterpiece"), b(60.0, "Acclaimed")],
            fallback_label: "Standard",
            prose: None,
        },
    },
    FamilyDef {
        name: "jsonplaceholder-analyzer",
        title: "JSONPlaceholder Analyzer",
        domain: "Developer",
        entity_param: "username",
        entity_singular: "user",
        entity_plural: "users",
        objective: "Produce activity reports for",
        output_file: "user_activity_report.json",
        skill_stem: "placeholder_user",
        pool: &[
            "Bret", "Antonette", "Samantha", "Karianne", "Kamren", "Leopoldo_Corkery", "Elwyn.Skiles",
            "Maxime_Nienow", "Delphine", "Moriah.Stanton",
        ],
        tools: &[
            t("get_user", "User", "Get user profile", &[
                f("city", Choice(CITIES)),
                f("company", Choice(COMPANIES)),
                f("user_id", Int(1, 10)),
            ]),
            t("get_posts", "Posts", "List the user's posts", &[
                f("post_count", Int(1, 20)),
                f("latest_post_title", Choice(POST_TITLES)),
            ]),
            t("get_comments", "Comments", "List comments on the user's posts", &[
                f("comment_count", Int(1, 100)),
                f("avg_comment_length", Int(20, 300)),
            ]),
            t("get_albums", "Albums", "List the user's albums", &[f("album_count", Int(1, 10))]),
            t("get_photos", "Photos", "List photos across albums", &[f("photo_count", Int(1, 500))]),
            t("get_todos", "Todos", "List the user's todos", &[
                f("todo_count", Int(1, 40)),
                f("completed_todos", Int(1, 40)),
            ]),
            t("get_engagement", "Engagement", "Get engagement statistics", &[
                f("engagement_ratio", Float(1.0, 10.0)),
            ]),
        ],
        derived: DerivedDef {
            field: "activity_index",
            constant: 0.0,
            terms: &[
                w("get_posts", "post_count", 2.0),
                w("get_comments", "comment_count", 0.2),
                w("get_albums", "album_count", 1.0),
            ],
            label_field: None,
            bands: &[],
            fallback_label: "",
            prose: None,
        },
    },
    FamilyDef {
        name: "local-dna-analysis",
        title: "Local DNA Analysis",
        domain: "Science",
        entity_param: "sequence_id",
        entity_singular: "sequence",
        entity_plural: "DNA samples",
        objective: "Analyze",
        output_file: "dna_analysis_report.json",
        skill_stem: "dna_sequence",
        pool: &[
            "BRCA1-sample", "TP53-sample", "EGFR-sample", "KRAS-sample", "MYC-sample", "APOE-sample", "CFTR-sample",
            "HBB-sample", "PTEN-sample", "RB1-sample",
        ],
        tools: &[
            t("load_sequence", "Sequence", "Load the sequence record", &[
                f("length_bp", Int(500, 50000)),
                f("organism", Choice(ORGANISMS)),
            ]),
            t("gc_content", "GC Content", "Compute base composition", &[
                f("gc_percent", Float(30.0, 70.0)),
                f("at_percent", Float(30.0, 70.0)),
            ]),
            t("find_orfs", "Open Reading Frames", "Find open reading frames", &[
                f("orf_count", Int(1, 40)),
                f("longest_orf_bp", Int(90, 6000)),
            ]),
            t("motif_search", "Motifs", "Search regulatory motifs", &[
                f("motif_hits", Int(1, 50)),
                f("top_motif", Choice(MOTIFS)),
            ]),
            t("translate_sequence", "Translation", "Translate the longest frame", &[
                f("protein_length", Int(50, 3000)),
                f("start_codon_position", Int(1, 300)),
            ]),
        ],
        derived: DerivedDef {
            field: "complexity_index",
            constant: 0.0,
            terms: &[
                w("load_sequence", "length_bp", 0.001),
                w("gc_content", "gc_percent", 0.5),
                w("find_orfs", "orf_count", 1.0),
            ],
            label_field: None,
            bands: &[],
            fallback_label: "",
            prose: None,
        },
    },
    FamilyDef {
        name: "name-demographics",
        title: "Name Demographics",
        domain: "Society",
        entity_param: "first_name",
        entity_singular: "name",
        entity_plural: "first names",
        objective: "Profile the demographics of",
        output_file: "name_demographics.json",
        skill_stem: "first_name",
        pool: &["James", "Maria", "Aiko", "Liam", "Fatima", "Olga", "Carlos", "Priya", "Chen", "Amara"],
        tools: &[
            t("predict_gender", "Gender", "Predict gender from name", &[
                f("gender", Choice(GENDERS)),
                f("probability", Float(0.5, 0.99)),
            ]),
            t("predict_age", "Age", "Predict age from name", &[
                f("predicted_age", Int(18, 80)),
                f("sample_count", Int(100, 90000)),
            ]),
            t("predict_nationality", "Nationality", "Predict nationality from name", &[
                f("top_country", Choice(NATION_CODES)),
                f("country_probability", Float(0.1, 0.9)),
            ]),
            t("name_popularity", "Popularity", "Get popularity rank", &[f("popularity_rank", Int(1, 1000))]),
            t("name_origin", "Origin", "Get etymology", &[
                f("origin", Choice(NAME_ORIGINS)),
                f("meaning", Choice(MEANINGS)),
            ]),
        ],
        derived: DerivedDef {
            field: "confidence_score",
            constant: 0.0,
            terms: &[
                w("predict_gender", "probability", 50.0),
                w("predict_nationality", "country_probability", 30.0),
                w("predict_age", "sample_count", 0.0001),
            ],
            label_field: None,
            bands: &[],
            fallback_label: "",
            prose: None,
        },
    },
    FamilyDef {
        name: "open-meteo-weather",
        title: "Open-Meteo Weather",
        domain: "Science",
        entity_param: "city",
        entity_singular: "city",
        entity_plural: "cities",
        objective: "Prepare weather reports for",
        output_file: "weather_report.json",
        skill_stem: "city_weather",
        pool: &["Berlin", "Tokyo", "Nairobi", "Lima", "Oslo", "Sydney", "Toronto", "Cairo", "Mumbai", "Reykjavik"],
        tools: &[
            t("geocode_city", "Geocoding", "Resolve city coordinates", &[
                f("latitude", Float(1.0, 70.0)),
                f("longitude", Float(1.0, 179.0)),
                f("elevation_m", Int(1, 3000)),
            ]),
            t("current_weather", "Current Weather", "Get current conditions", &[
                f("temperature_c", Float(1.0, 35.0)),
                f("wind_speed_kmh", Float(1.0, 60.0)),
                f("weather_code", Choice(WEATHER_CODES)),
            ]),
            t("daily_forecast", "Daily Forecast", "Get tomorrow's forecast", &[
                f("max_temp_c", Float(1.0, 40.0)),
                f("precipitation_mm", Float(0.1, 40.0)),
            ]),
            t("air_quality", "Air Quality", "Get air quality index", &[
                f("aqi", Int(1, 300)),
                f("dominant_pollutant", Choice(POLLUTANTS)),
            ]),
            t("historical_average", "Climate Normals", "Get historical averages", &[
                f("avg_temp_c", Float(1.0, 30.0)),
                f("avg_rainfall_mm", Float(1.0, 300.0)),
            ]),
        ],
        derived: DerivedDef {
            field: "comfort_index",
            constant: 0.0,
            terms: &[
                w("current_weather", "temperature_c", 2.0),
                w("current_weather", "wind_speed_kmh", 0.5),
                w("daily_forecast", "precipitation_mm", 1.0),
            ],
            label_field: Some("comfort_level"),
            bands: &[b(60.0, "Harsh"), b(30.0, "Mild")],
            fallback_label: "Pleasant",
            prose: None,
        },
    },
    FamilyDef {
        name: "pokeapi-pokedex",
        title: "PokéAPI Pokédex",
        domain: "Gaming",
        entity_param: "pokemon",
        entity_singular: "Pokémon",
        entity_plural: "Pokémon",
        objective: "Build Pokédex entries for",
        output_file: "pokedex.json",
        skill_stem: "pokemon",
        pool: &[
            "pikachu", "bulbasaur", "charmander", "squirtle", "eevee", "snorlax", "gengar", "lucario", "mewtwo",
            "jigglypuff",
        ],
        tools: &[
            t("get_pokemon", "Pokémon", "Get core Pokémon data", &[
                f("pokedex_number", Int(1, 1000)),
                f("primary_type", Choice(POKE_TYPES)),
                f("base_experience", Int(30, 400)),
            ]),
            t("get_species", "Species", "Get species data", &[
                f("generation", Choice(GENERATIONS)),
                f("capture_rate", Int(3, 255)),
                f("is_legendary", Flag),
            ]),
            t("get_abilities", "Abilities", "List abilities", &[
                f("ability_count", Int(1, 3)),
                f("primary_ability", Choice(POKE_ABILITIES)),
            ]),
            t("get_moves", "Moves", "List learnable moves", &[
                f("move_count", Int(10, 120)),
                f("signature_move", Choice(POKE_MOVES)),
            ]),
            t("get_evolution_chain", "Evolution", "Get the evolution chain", &[
                f("evolution_stage", Int(1, 3)),
                f("chain_length", Int(1, 3)),
            ]),
        ],
        derived: DerivedDef {
            field: "battle_rating",
            constant: 0.0,
            terms: &[
                w("get_pokemon", "base_experience", 0.1),
                w("get_species", "capture_rate", 0.05),
                w("get_abilities", "ability_count", 5.0),
            ],
            label_field: Some("battle_tier"),
            bands: &[b(45.0, "Elite"), b(25.0, "Strong")],
            fallback_label: "Casual",
            prose: None,
        },
    },
    FamilyDef {
        name: "random-user-database",
        title: "Random User Database",
        domain: "Society",
        entity_param: "user_seed",
        entity_singular: "user",
        entity_plural: "generated users",
        objective: "Assemble a user database for",
        output_file: "user_database.json",
        skill_stem: "random_user",
        pool: &["alpha", "bravo", "charlie", "delta", "echo", "foxtrot", "golf", "hotel", "india", "juliet"],
        tools: &[
            t("generate_user", "Profile", "Generate the user profile", &[
                f("full_name", Choice(PERSON_NAMES)),
                f("age", Int(18, 90)),
                f("nationality", Choice(NATIONALITIES)),
            ]),
            t("user_location", "Location", "Get the user's location", &[
                f("city", Choice(USER_CITIES)),
                f("postcode", Int(10000, 99999)),
            ]),
            t("user_contact", "Contact", "Get contact details", &[
                f("email_domain", Choice(EMAIL_DOMAINS)),
                f("phone_prefix", Choice(PHONE_PREFIXES)),
            ]),
            t("user_login", "Login", "Get login metadata", &[
                f("username", Ident("user_")),
                f("account_age_days", Int(1, 5000)),
            ]),
            t("user_picture", "Picture", "Get the profile picture", &[f("picture_id", Ident("pic_"))]),
        ],
        derived: DerivedDef {
            field: "profile_score",
            constant: 0.0,
            terms: &[w("generate_user", "age", 0.5), w("user_login", "account_age_days", 0.01)],
            label_field: None,
            bands: &[],
            fallback_label: "",
            prose: None,
        },
    },
    FamilyDef {
        name: "recipe-cookbook-builder",
        title: "Recipe Cookbook Builder",
        domain: "Food",
        entity_param: "meal_name",
        entity_singular: "meal",
        entity_plural: "meals",
        objective: "Build a cookbook covering",
        output_file: "cookbook.json",
        skill_stem: "recipe",
        pool: &[
            "Arrabiata", "Teriyaki Chicken", "Beef Wellington", "Pad Thai", "Ratatouille", "Shakshuka", "Moussaka",
            "Poutine", "Biryani", "Paella",
        ],
        tools: &[
            t("search_meal", "Search", "Find the meal", &[
                f("meal_id", Int(52700, 53100)),
                f("area", Choice(CUISINES)),
            ]),
            t("meal_details", "Details", "Get recipe details", &[
                f("ingredient_count", Int(3, 20)),
                f("category", Choice(MEAL_CATEGORIES)),
            ]),
            t("meal_ingredients", "Ingredients", "List ingredients and measures", &[
                f("main_ingredient", Choice(MAIN_INGREDIENTS)),
                f("measure_count", Int(3, 20)),
            ]),
            t("meal_instructions", "Instructions", "Get preparation steps", &[
                f("step_count", Int(2, 15)),
                f("estimated_minutes", Int(10, 240)),
            ]),
            t("meal_category", "Category", "Describe the meal's category", &[
                f("category_meal_count", Int(5, 150)),
                f("category_description", Choice(CATEGORY_BLURBS)),
            ]),
            t("meal_area", "Cuisine", "List meals from the same cuisine", &[f("area_meal_count", Int(5, 90))]),
        ],
        derived: DerivedDef {
            field: "difficulty_score",
            constant: 0.0,
            terms: &[
                w("meal_details", "ingredient_count", 2.0),
                w("meal_ingredients", "measure_count", 0.5),
                w("meal_instructions", "step_count", 1.0),
            ],
            label_field: Some("difficulty"),
            bands: &[b(30.0, "Hard"), b(15.0, "Medium")],
            fallback_label: "Easy",
            prose: None,
        },
    },
    FamilyDef {
        name: "rick-morty-explorer",
        title: "Rick & Morty Explorer",
        domain: "Entertainment",
        entity_param: "character_name",
        entity_singular: "character",
        entity_plural: "characters",
        objective: "Write explorer profiles for",
        output_file: "rick_morty_report.json",
        skill_stem: "rm_character",
        pool: &[
            "Rick Sanchez", "Morty Smith", "Summer Smith", "Beth Smith", "Jerry Smith", "Birdperson", "Squanchy",
            "Mr. Meeseeks", "Evil Morty", "Unity",
        ],
        tools: &[
            t("get_character", "Character", "Get character status and species", &[
                f("status", Choice(LIFE_STATUS)),
                f("species", Choice(SPECIES)),
                f("gender", Choice(CHAR_GENDERS)),
            ]),
            t("get_episodes", "Episodes", "List episodes featuring the character", &[
                f("episode_count", Int(1, 51)),
                f("first_episode", Choice(RM_EPISODES)),
            ]),
            t("get_location", "Location", "Get the last known location", &[
                f("location_name", Choice(RM_LOCATIONS)),
                f("residents_count", Int(1, 200)),
            ]),
            t("get_origin", "Origin", "Get the origin location", &[
                f("origin_name", Choice(RM_LOCATIONS)),
                f("dimension", Choice(DIMENSIONS)),
            ]),
            t("get_episode_details", "Episode Details", "Get details of the first episode", &[
                f("air_year", Int(2013, 2023)),
                f("episode_rating", Float(6.0, 10.0)),
            ]),
        ],
        derived: DerivedDef {
            field: "prominence_score",
            constant: 0.0,
            terms: &[w("get_episodes", "episode_count", 2.0), w("get_location", "residents_count", 0.1)],
            label_field: None,
            bands: &[],
            fallback_label: "",
            prose: None,
        },
    },
    FamilyDef {
        name: "tvmaze-series-analyzer",
        title: "TVMaze Series Analyzer",
        domain: "Developer",
        entity_param: "show_name",
        entity_singular: "show",
        entity_plural: "TV series",
        objective: "Analyze",
        output_file: "tv_series_analysis.json",
        skill_stem: "tv_show",
        pool: &[
            "Breaking Bad", "The Wire", "Friends", "Sherlock", "Dark", "Fargo", "Succession", "The Office", "Lost",
            "Twin Peaks",
        ],
        tools: &[
            t("search_show", "Search", "Find the show", &[
                f("show_id", Int(1, 60000)),
                f("network", Choice(NETWORKS)),
                f("premiered_year", Int(1980, 2023)),
            ]),
            t("show_details", "Details", "Get rating, runtime and status", &[
                f("rating", Float(5.0, 9.8)),
                f("runtime_minutes", Int(20, 70)),
                f("status", Choice(SHOW_STATUS)),
            ]),
            t("show_seasons", "Seasons", "List seasons", &[f("season_count", Int(1, 12))]),
            t("show_cast", "Cast", "List the main cast", &[
                f("cast_count", Int(5, 60)),
                f("lead_actor", Choice(ACTORS)),
            ]),
            t("show_episodes", "Episodes", "List episodes", &[f("episode_count", Int(6, 250))]),
        ],
        derived: DerivedDef {
            field: "quality_index",
            constant: 0.0,
            terms: &[w("show_details", "rating", 10.0), w("show_seasons", "season_count", 2.0)],
            label_field: Some("verdict"),
            bands: &[b(95.0, "Essential"), b(75.0, "Recommended")],
            fallback_label: "Optional",
            prose: None,
        },
    },
    FamilyDef {
        name: "university-directory",
        title: "University Directory",
        domain: "Education",
        entity_param: "university_name",
        entity_singular: "university",
        entity_plural: "universities",
        objective: "Compile directory entries for",
        output_file: "university_directory.json",
        skill_stem: "university",
        pool: &[
            "MIT", "Stanford University", "University of Oxford", "ETH Zurich", "Tsinghua University",
            "Sorbonne University", "University of Tokyo", "University of Toronto", "National University of Singapore",
            "University of Cape Town",
        ],
        tools: &[
            t("search_university", "Search", "Find the university", &[
                f("country", Choice(UNI_COUNTRIES)),
                f("domain", Choice(UNI_DOMAINS)),
            ]),
            t("university_details", "Details", "Get founding year and enrolment", &[
                f("founded_year", Int(1096, 2000)),
                f("student_count", Int(2000, 60000)),
            ]),
            t("university_rankings", "Rankings", "Get ranking information", &[
                f("world_rank", Int(1, 500)),
                f("subject_strength", Choice(SUBJECTS)),
            ]),
            t("university_programs", "Programs", "List degree programs", &[f("program_count", Int(10, 300))]),
            t("university_contacts", "Contacts", "Get contact details", &[
                f("web_page", Ident("www.uni")),
                f("city", Choice(UNI_CITIES)),
            ]),
        ],
        derived: DerivedDef {
            field: "scale_score",
            constant: 0.0,
            terms: &[
                w("university_details", "student_count", 0.001),
                w("university_rankings", "world_rank", 0.1),
                w("university_programs", "program_count", 0.2),
            ],
            label_field: None,
            bands: &[],
            fallback_label: "",
            prose: None,
        },
    },
    FamilyDef {
        name: "usgs-earthquake-monitor",
        title: "USGS Earthquake Monitor",
        domain: "Science",
        entity_param: "region",
        entity_singular: "region",
        entity_plural: "seismic regions",
        objective: "Monitor earthquake activity in",
        output_file: "earthquake_report.json",
        skill_stem: "seismic_region",
        pool: &[
            "California", "Alaska", "Japan Trench", "Chile", "Indonesia", "Iceland", "Nepal", "Turkey", "New Zealand",
            "Italy",
        ],
        tools: &[
            t("query_earthquakes", "Recent Events", "Query recent earthquakes", &[
                f("event_count", Int(1, 500)),
                f("max_magnitude", Float(2.5, 9.0)),
            ]),
            t("event_details", "Event Details", "Get details of the strongest event", &[
                f("depth_km", Float(1.0, 700.0)),
                f("felt_reports", Int(1, 5000)),
            ]),
            t("significant_events", "Significant Events", "List significant events", &[
                f("significant_count", Int(1, 20)),
                f("strongest_place", Choice(QUAKE_PLACES)),
            ]),
            t("regional_stats", "Regional Statistics", "Get regional statistics", &[
                f("avg_magnitude", Float(1.0, 6.0)),
                f("events_per_month", Int(1, 120)),
            ]),
            t("tsunami_alerts", "Tsunami Alerts", "Count tsunami alerts", &[f("alert_count", Int(1, 5))]),
            t("fault_lines", "Fault Lines", "List nearby faults", &[
                f("fault_count", Int(1, 12)),
                f("primary_fault", Choice(FAULTS)),
            ]),
        ],
        derived: DerivedDef {
            field: "seismic_risk",
            constant: 0.0,
            terms: &[
                w("query_earthquakes", "max_magnitude", 5.0),
                w("query_earthquakes", "event_count", 0.05),
                w("significant_events", "significant_count", 1.0),
            ],
            label_field: Some("risk_level"),
            bands: &[b(50.0, "High"), b(30.0, "Elevated")],
            fallback_label: "Low",
            prose: None,
        },
    },
    FamilyDef {
        name: "vocabulary-builder",
        title: "Vocabulary Builder",
        domain: "Reference",
        entity_param: "word",
        entity_singular: "word",
        entity_plural: "words",
        objective: "Create vocabulary cards for",
        output_file: "vocabulary.json",
        skill_stem: "vocab_word",
        pool: &[
            "serendipity", "ephemeral", "ubiquitous", "eloquent", "resilient", "meticulous", "paradigm",
            "quintessential", "candor", "labyrinth",
        ],
        tools: &[
            t("define_word", "Definition", "Get definitions", &[
                f("part_of_speech", Choice(POS)),
                f("definition_count", Int(1, 8)),
            ]),
            t("word_synonyms", "Synonyms", "List synonyms", &[
                f("synonym_count", Int(1, 20)),
                f("top_synonym", Choice(SYNONYMS)),
            ]),
            t("word_antonyms", "Antonyms", "List antonyms", &[f("antonym_count", Int(1, 10))]),
            t("word_phonetics", "Phonetics", "Get pronunciation", &[
                f("syllable_count", Int(1, 6)),
                f("ipa", Choice(IPA)),
            ]),
            t("word_examples", "Examples", "Get usage examples", &[
                f("example_count", Int(1, 10)),
                f("first_example", Choice(EXAMPLES)),
            ]),
        ],
        derived: DerivedDef {
            field: "richness_score",
            constant: 0.0,
            terms: &[
                w("define_word", "definition_count", 3.0),
                w("word_synonyms", "synonym_count", 1.0),
                w("word_antonyms", "antonym_count", 2.0),
            ],
            label_field: Some("difficulty"),
            bands: &[b(30.0, "Advanced"), b(15.0, "Intermediate")],
            fallback_label: "Basic",
            prose: None,
        },
    },
    FamilyDef {
        name: "world-bank-snapshot",
        title: "World Bank Snapshot",
        domain: "Education",
        entity_param: "country_code",
        entity_singular: "country",
        entity_plural: "economies",
        objective: "Take a development snapshot of",
        output_file: "world_bank_snapshot.json",
        skill_stem: "economy",
        pool: &["USA", "CHN", "IND", "BRA", "NGA", "DEU", "JPN", "ZAF", "IDN", "MEX"],
        tools: &[
            t("country_info", "Country Info", "Get region and income level", &[
                f("region", Choice(WB_REGIONS)),
                f("income_level", Choice(INCOME_LEVELS)),
                f("capital", Choice(WB_CAPITALS)),
            ]),
            t("gdp_indicator", "GDP", "Get GDP indicators", &[
                f("gdp_usd_billion", Float(50.0, 25000.0)),
                f("gdp_growth_pct", Float(0.1, 9.0)),
            ]),
            t("population_indicator", "Population", "Get population indicators", &[
                f("population_millions", Float(5.0, 1400.0)),
                f("urban_pct", Float(20.0, 95.0)),
            ]),
            t("education_indicator", "Education", "Get education indicators", &[f("literacy_rate", Float(50.0, 99.9))]),
            t("health_indicator", "Health", "Get health indicators", &[f("life_expectancy", Float(50.0, 85.0))]),
        ],
        derived: DerivedDef {
            field: "development_score",
            constant: 0.0,
            terms: &[
                w("gdp_indicator", "gdp_growth_pct", 2.0),
                w("population_indicator", "urban_pct", 0.5),
                w("education_indicator", "literacy_rate", 0.3),
            ],
            label_field: None,
            bands: &[],
            fallback_label: "",
            prose: None,
        },
    },
];
