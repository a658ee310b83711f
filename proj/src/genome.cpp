#include "idiobot/genome.hpp"

#include <fstream>
#include <sstream>

#include "idiobot/errors.hpp"

namespace idiobot {

namespace {

// Per-antigen behaviour-type restriction: wandering while the target is
// unseen, tracking while it is seen, forward turns near obstacles, and
// spin/reverse escapes once in contact.
constexpr int kTypesUnseen[] = {1, 2};
constexpr int kTypesSeen[] = {6};
constexpr int kTypesObstacle[] = {3, 4};
constexpr int kTypesCollision[] = {4, 5};

} // namespace

std::span<const int> allowed_types(int antigen_index) {
    if (antigen_index == 0) return kTypesUnseen;
    if (antigen_index == 1) return kTypesSeen;
    if (antigen_index <= 4) return kTypesObstacle;
    return kTypesCollision;
}

void validate_gene(const BehaviourGene& g, const AttributeBounds& bounds) {
    const auto fail = [&](const std::string& what) {
        throw ValidationError("antigen " + std::to_string(g.antigen_index) + ": " + what);
    };
    if (g.antigen_index < 0 || g.antigen_index > 7) fail("antigen index out of range 0-7");
    if (g.type < 1 || g.type > 6) fail("behaviour type " + std::to_string(g.type) + " out of range 1-6");
    if (g.speed < bounds.speed_min || g.speed > bounds.speed_max)
        fail("speed " + std::to_string(g.speed) + " outside [" + std::to_string(bounds.speed_min) +
             ", " + std::to_string(bounds.speed_max) + "]");
    if (g.direction != 1 && g.direction != 2) fail("direction must be 1 or 2");
    for (auto [value, name] : {std::pair{g.turn_frequency, "turn frequency"},
                               std::pair{g.turn_angle, "turn angle"},
                               std::pair{g.right_turn_frequency, "right turn frequency"},
                               std::pair{g.right_turn_angle, "right turn angle"},
                               std::pair{g.score, "score"}}) {
        if (value < 0 || value > 100)
            fail(std::string(name) + " " + std::to_string(value) + " outside [0, 100]");
    }
}

namespace {

struct RawLine {
    std::string text;
    int number;
};

std::vector<RawLine> content_lines(std::istream& in) {
    std::vector<RawLine> lines;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        lines.push_back({line, number});
    }
    return lines;
}

int parse_int(const std::string& token, const RawLine& line) {
    std::size_t pos = 0;
    int value = 0;
    try {
        value = std::stoi(token, &pos);
    } catch (const std::exception&) {
        throw ParseError("not an integer: '" + token + "'", line.number);
    }
    if (pos != token.size()) throw ParseError("not an integer: '" + token + "'", line.number);
    return value;
}

std::vector<std::string> split_fields(const std::string& text) {
    std::vector<std::string> fields;
    std::istringstream ss(text);
    std::string tok;
    while (ss >> tok) fields.push_back(tok);
    return fields;
}

} // namespace

Genome parse_genome(std::istream& in, const AttributeBounds& bounds) {
    Genome genome;
    const auto lines = content_lines(in);
    std::size_t i = 0;
    while (i < lines.size()) {
        const RawLine& header = lines[i];
        auto fields = split_fields(header.text);
        if (fields.empty() || fields[0] != "@set")
            throw ParseError("expected '@set <index> <t> <c>' header, got '" + header.text + "'",
                             header.number);
        if (fields.size() != 4)
            throw ParseError("set header needs 3 integers, got " +
                                 std::to_string(fields.size() - 1),
                             header.number);
        const int set_index = parse_int(fields[1], header);
        if (set_index != static_cast<int>(genome.sets.size()))
            throw ParseError("set index " + std::to_string(set_index) + " out of order, expected " +
                                 std::to_string(genome.sets.size()),
                             header.number);
        GeneSet set;
        set.task_time_s = parse_int(fields[2], header);
        set.collisions = parse_int(fields[3], header);
        if (set.task_time_s <= 0) throw ParseError("set task time must be > 0", header.number);
        if (set.collisions < 0) throw ParseError("set collisions must be >= 0", header.number);
        ++i;

        for (int antigen = 0; antigen < 8; ++antigen, ++i) {
            if (i >= lines.size())
                throw ParseError("set " + std::to_string(set_index) + " truncated: expected gene for antigen " +
                                     std::to_string(antigen),
                                 lines.back().number);
            const RawLine& line = lines[i];
            fields = split_fields(line.text);
            if (!fields.empty() && fields[0] == "@set")
                throw ParseError("set " + std::to_string(set_index) + " has only " +
                                     std::to_string(antigen) + " genes, expected 8",
                                 line.number);
            if (fields.size() != 9)
                throw ParseError("gene line needs 9 integers, got " + std::to_string(fields.size()),
                                 line.number);
            BehaviourGene g;
            g.antigen_index = parse_int(fields[0], line);
            g.type = parse_int(fields[1], line);
            g.speed = parse_int(fields[2], line);
            g.turn_frequency = parse_int(fields[3], line);
            g.turn_angle = parse_int(fields[4], line);
            g.direction = parse_int(fields[5], line);
            g.right_turn_frequency = parse_int(fields[6], line);
            g.right_turn_angle = parse_int(fields[7], line);
            g.score = parse_int(fields[8], line);
            if (g.antigen_index != antigen)
                throw ParseError("antigen index " + std::to_string(g.antigen_index) +
                                     " out of order, expected " + std::to_string(antigen),
                                 line.number);
            try {
                validate_gene(g, bounds);
            } catch (const ValidationError& e) {
                throw ParseError(e.what(), line.number);
            }
            set.genes[antigen] = g;
        }
        genome.sets.push_back(set);
    }
    if (genome.sets.empty()) throw ParseError("no gene sets found");
    return genome;
}

Genome parse_genome(const std::string& text, const AttributeBounds& bounds) {
    std::istringstream in(text);
    return parse_genome(in, bounds);
}

Genome load_genome(const std::string& path, const AttributeBounds& bounds) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open genome file: " + path);
    return parse_genome(in, bounds);
}

std::string serialize_genome(const Genome& genome) {
    std::ostringstream out;
    for (std::size_t s = 0; s < genome.sets.size(); ++s) {
        const GeneSet& set = genome.sets[s];
        out << "@set " << s << ' ' << set.task_time_s << ' ' << set.collisions << '\n';
        for (const BehaviourGene& g : set.genes) {
            out << g.antigen_index << ' ' << g.type << ' ' << g.speed << ' ' << g.turn_frequency
                << ' ' << g.turn_angle << ' ' << g.direction << ' ' << g.right_turn_frequency
                << ' ' << g.right_turn_angle << ' ' << g.score << '\n';
        }
    }
    return out.str();
}

BehaviourGene random_gene(int antigen_index, Rng& rng, const AttributeBounds& bounds) {
    if (antigen_index < 0 || antigen_index > 7)
        throw ValidationError("antigen index out of range 0-7");
    const auto types = allowed_types(antigen_index);
    BehaviourGene g;
    g.antigen_index = antigen_index;
    g.type = types[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(types.size()) - 1))];
    g.speed = rng.uniform_int(bounds.speed_min, bounds.speed_max);
    g.turn_frequency = rng.uniform_int(bounds.percent_min, bounds.percent_max);
    g.turn_angle = rng.uniform_int(bounds.percent_min, bounds.percent_max);
    g.direction = rng.uniform_int(1, 2);
    g.right_turn_frequency = rng.uniform_int(bounds.percent_min, bounds.percent_max);
    g.right_turn_angle = rng.uniform_int(bounds.percent_min, bounds.percent_max);
    g.score = 50;
    return g;
}

} // namespace idiobot
