#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "idiobot/ais.hpp"
#include "idiobot/genome.hpp"
#include "idiobot/world.hpp"

namespace idiobot {

// Running reward statistics for one gene: how often it executed and how well
// the world responded. Drives the replacement of poorly matched behaviours.
struct GeneStats {
    int evaluations = 0;
    double mean_reward = 0.0;
};

// One member of a population: a full behaviour set with its latest evaluation.
struct Individual {
    std::array<BehaviourGene, 8> genes{};
    std::array<GeneStats, 8> stats{};
    double fitness = 0.0; // mu within its population, set after evaluation
    double t = 0.0;       // seconds of the last evaluation
    int c = 0;            // collisions of the last evaluation
    bool evaluated = false;

    double cost(double rho) const { return t + rho * c; }
};

struct EvolutionConfig {
    int population_size = 10;  // x
    int populations = 5;       // n
    double mutation_rate = 0.05;
    double rho = 1.0;          // collision weighting during evolution
    int max_generations = 30;
    int plateau_window = 3;    // stop after this many generations without >1% gain
    int replace_min_evals = 20;     // m: evidence needed before replacing a gene
    double replace_threshold = 0.2; // theta: mean reward below this is "poorly matched"
    std::uint64_t seed = 1;
    AttributeBounds bounds;
    double dt = 0.1;
    double time_limit = 900.0;
};

struct GenerationLog {
    int population = 0;
    int generation = 0;
    double best_t = 0.0;
    int best_c = 0;
    double best_cost = 0.0;
    double mean_cost = 0.0;
};

// Runs one greedy single-set episode with the individual's own genes (no
// immune network during evolution), recording (t, c) and per-gene rewards.
Individual evaluate(Individual individual, const World& world, const PlatformProfile& profile,
                    std::uint64_t seed, double dt = 0.1, double time_limit = 900.0);

// Same normalization as the immune layer, exposed under the GA vocabulary.
std::vector<double> population_fitness(const std::vector<std::pair<double, double>>& evals,
                                       double rho);

// Index drawn with probability proportional to its weight.
int roulette_select(const std::vector<double>& weights, Rng& rng);

// Uniform per-attribute crossover followed by per-attribute mutation within
// bounds (the behaviour type mutates within its antigen's restriction table).
// The child's gene statistics start fresh.
Individual breed(const Individual& parent_a, const Individual& parent_b,
                 const EvolutionConfig& cfg, Rng& rng);

// Replaces every gene whose accumulated evidence marks it poorly matched
// (evaluations >= m and mean reward < theta) with a fresh random gene.
Individual rl_replace(Individual individual, const EvolutionConfig& cfg, Rng& rng);

// The full long-term-learning phase: per population, evaluate, keep the best
// unchanged, refill via roulette parents + breeding + replacement, until the
// generation cap or a fitness plateau; emits one gene set per population.
Genome evolve(const WorldTemplate& world, const PlatformProfile& profile,
              const EvolutionConfig& cfg, std::vector<GenerationLog>* log = nullptr);

} // namespace idiobot
