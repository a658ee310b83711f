#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "idiobot/genome.hpp"
#include "idiobot/perception.hpp"
#include "idiobot/platform.hpp"
#include "idiobot/world.hpp"

namespace idiobot {

enum class SelectionMode { Idiotypic, Greedy };

// Tunables of the short-term-learning layer. The defaults are the reference
// configuration; every run of a given configuration is deterministic.
struct AisConfig {
    double rho = 8.0;          // collision weighting in the relative fitness
    double k_stim = 0.25;      // idiotypic stimulation gain
    double k_supp = 0.25;      // idiotypic suppression gain
    double c_init = 1.0;       // initial antibody concentration
    double c_min = 0.1;
    double c_max = 10.0;
    double c_boost = 0.05;     // added to the selected antibody's concentration
    double c_decay = 0.99;     // global per-tick decay
    double learning_rate = 0.05; // lambda of the reinforcement update
};

// Runtime immune state over n behaviour sets x 8 antigens. P holds the
// reinforcement strengths (paratope), I marks each antigen's weakest antibody
// (idiotope, fixed after construction), C the concentrations.
struct AisState {
    std::vector<std::array<double, 8>> P;
    std::vector<std::array<double, 8>> I;
    std::vector<double> C;
    std::optional<std::pair<int, int>> last; // (set index, antigen column) executed last tick
    SelectionMode mode = SelectionMode::Idiotypic;
    AisConfig cfg;

    int n() const { return static_cast<int>(P.size()); }
};

// Normalized relative fitness mu_i = (t_i + rho*c_i)^-1 / sum_k (t_k + rho*c_k)^-1.
std::vector<double> relative_fitness(const std::vector<std::pair<double, double>>& time_collisions,
                                     double rho);

// Builds P, I and C from a genome: mu from each set's recorded (t, c) with the
// config rho, P_ij = clamp((score_ij/100) * mu_i * n, 0, 1), I_ij = 1 at each
// column minimum of P (ties to the lowest set).
AisState build_matrices(const Genome& genome, SelectionMode mode, const AisConfig& cfg = {});

// Picks the behaviour set answering the antigen. Greedy: argmax_i P_ij.
// Idiotypic: the provisional winner w = argmax_i P_ij*C_i stimulates sets
// whose strengths align with its idiotope and suppresses sets whose idiotopes
// point at its strengths:
//   a_i = C_i * (P_ij + k_stim * sum_j' P_ij' I_wj' - k_supp * sum_j' I_ij' P_wj')
// and the highest activation wins. Ties resolve to the lowest set index.
int select_antibody(const AisState& state, Antigen antigen);

// Reward for having executed a behaviour under `previous` when the world then
// presented `outcome`: collision 0.0, obstacle 0.4, target seen 1.0, escape
// back to target-unseen 0.8, target-unseen otherwise the neutral 0.5.
double reward_for(Antigen previous, Antigen outcome);

// Applies the reinforcement update P_ij += lambda * (r - 0.5), clamped to
// [0, 1], to the executed (set, antigen column) entry only.
void reinforce(AisState& state, std::pair<int, int> executed, Antigen outcome);

// Boosts the selected set's concentration, decays all, clamps to [c_min, c_max].
void update_concentrations(AisState& state, int selected);

struct WheelSpeeds {
    double left = 0.0;  // psi/s
    double right = 0.0; // psi/s
};

// Decodes a gene into this tick's wheel speeds. Wander types draw their
// turn/no-turn (and for type 2, right/left) decisions from rng; tracking
// steers toward the blob zone and drives straight when no blob is visible.
WheelSpeeds execute_behaviour(const BehaviourGene& gene, std::optional<BlobZone> blob, Rng& rng);

struct EpisodeConfig {
    SelectionMode mode = SelectionMode::Idiotypic;
    std::uint64_t seed = 1;
    double dt = 0.1;
    double time_limit = 900.0;
    AisConfig ais;
};

struct TrailPoint {
    std::int64_t tick = 0;
    Pose pose;
};

struct TracePoint {
    std::int64_t tick = 0;
    int antigen = 0;
    int selected_set = 0;
    double left = 0.0;
    double right = 0.0;
    double linear = 0.0;
    double angular = 0.0;
};

struct EpisodeSinks {
    std::vector<TrailPoint>* trail = nullptr;
    std::vector<TracePoint>* trace = nullptr;
};

struct EpisodeResult {
    double t = 0.0;     // seconds, capped at the time limit
    int collisions = 0;
    bool completed = false;
};

// Runs one full control episode: sense, classify, score the previous
// behaviour, select, update concentrations, execute, step, until the task
// completes or the time limit passes. Wheel speeds are converted to the
// executing platform through the epuck reference kinematics.
EpisodeResult run_episode(const World& world, const PlatformProfile& profile,
                          const Genome& genome, const EpisodeConfig& cfg,
                          EpisodeSinks sinks = {});

} // namespace idiobot
