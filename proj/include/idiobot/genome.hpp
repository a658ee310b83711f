#pragma once

#include <array>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "idiobot/rng.hpp"

namespace idiobot {

// Sampling ranges for the evolvable attributes. Percent attributes are parsed
// leniently in [0, 100] but new genes are drawn from [percent_min, percent_max].
struct AttributeBounds {
    int speed_min = 100;
    int speed_max = 900;
    int percent_min = 10;
    int percent_max = 90;
};

// One behaviour: how the wheels move while a given antigen is active.
//
// type 1 wander (one direction), 2 wander (both directions), 3 forward arc,
// 4 spin on the spot, 5 reverse arc, 6 track target. speed is in epuck speed
// units (psi) per second; the angle attributes are percent wheel-speed
// reductions, the frequency attributes percent of ticks.
struct BehaviourGene {
    int antigen_index = 0; // 0-7, file-level code for antigen 1-8
    int type = 1;          // T
    int speed = 0;         // S
    int turn_frequency = 0;       // F
    int turn_angle = 0;           // A
    int direction = 1;            // D: 1 left, 2 right
    int right_turn_frequency = 0; // R_f
    int right_turn_angle = 0;     // R_a
    int score = 50;               // final reinforcement score, 0-100

    bool operator==(const BehaviourGene&) const = default;
};

// One evolved robot: a behaviour per antigen plus its final evaluation, which
// seeds the relative-fitness weighting when several sets compete at run time.
struct GeneSet {
    std::array<BehaviourGene, 8> genes{}; // ascending antigen_index 0-7
    int task_time_s = 1;                  // t, > 0
    int collisions = 0;                   // c, >= 0

    bool operator==(const GeneSet&) const = default;
};

struct Genome {
    std::vector<GeneSet> sets;

    bool operator==(const Genome&) const = default;
};

// Behaviour types admissible for a file-level antigen index (0-7).
std::span<const int> allowed_types(int antigen_index);

// Throws ValidationError when a field is outside its admissible range.
void validate_gene(const BehaviourGene& gene, const AttributeBounds& bounds);

// Parses the genetic-sequence text format:
//   '#' comments and blank lines are ignored
//   @set <index> <t_seconds> <collisions>
//   followed by exactly 8 gene lines "<antigen> <T> <S> <F> <A> <D> <R_f> <R_a> <score>"
//   in ascending antigen order.
// Throws ParseError (with the offending line number) or ValidationError.
Genome parse_genome(std::istream& in, const AttributeBounds& bounds = {});
Genome parse_genome(const std::string& text, const AttributeBounds& bounds = {});
Genome load_genome(const std::string& path, const AttributeBounds& bounds = {});

// Canonical text form; parse_genome(serialize_genome(g)) == g.
std::string serialize_genome(const Genome& genome);

// Draws a fresh gene for the antigen: type from the per-antigen table, the
// other attributes uniform within bounds, score at the neutral 50.
BehaviourGene random_gene(int antigen_index, Rng& rng, const AttributeBounds& bounds = {});

} // namespace idiobot
