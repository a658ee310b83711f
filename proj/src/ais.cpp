#include "idiobot/ais.hpp"

#include <algorithm>
#include <cmath>

#include "idiobot/errors.hpp"

namespace idiobot {

std::vector<double> relative_fitness(const std::vector<std::pair<double, double>>& time_collisions,
                                     double rho) {
    if (time_collisions.size() < 2)
        throw ValidationError("relative fitness needs at least two (t, c) pairs");
    std::vector<double> inv(time_collisions.size());
    double total = 0.0;
    for (std::size_t i = 0; i < time_collisions.size(); ++i) {
        const auto [t, c] = time_collisions[i];
        if (t <= 0.0) throw ValidationError("relative fitness requires t > 0");
        inv[i] = 1.0 / (t + rho * c);
        total += inv[i];
    }
    for (double& v : inv) v /= total;
    return inv;
}

AisState build_matrices(const Genome& genome, SelectionMode mode, const AisConfig& cfg) {
    const int n = static_cast<int>(genome.sets.size());
    if (n < 2) throw ValidationError("the immune network needs at least two behaviour sets");

    std::vector<std::pair<double, double>> tc;
    tc.reserve(static_cast<std::size_t>(n));
    for (const GeneSet& set : genome.sets)
        tc.emplace_back(static_cast<double>(set.task_time_s), static_cast<double>(set.collisions));
    const std::vector<double> mu = relative_fitness(tc, cfg.rho);

    AisState state;
    state.mode = mode;
    state.cfg = cfg;
    state.P.assign(static_cast<std::size_t>(n), {});
    state.I.assign(static_cast<std::size_t>(n), {});
    state.C.assign(static_cast<std::size_t>(n), cfg.c_init);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < 8; ++j) {
            const double score = genome.sets[static_cast<std::size_t>(i)]
                                     .genes[static_cast<std::size_t>(j)]
                                     .score / 100.0;
            // rescaled by n so a uniform genome lands near score/100
            state.P[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                std::clamp(score * mu[static_cast<std::size_t>(i)] * n, 0.0, 1.0);
        }
    }
    for (int j = 0; j < 8; ++j) {
        int weakest = 0;
        for (int i = 1; i < n; ++i) {
            if (state.P[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] <
                state.P[static_cast<std::size_t>(weakest)][static_cast<std::size_t>(j)])
                weakest = i;
        }
        state.I[static_cast<std::size_t>(weakest)][static_cast<std::size_t>(j)] = 1.0;
    }
    return state;
}

namespace {

int argmax_lowest(const std::vector<double>& values) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(values.size()); ++i)
        if (values[static_cast<std::size_t>(i)] > values[static_cast<std::size_t>(best)]) best = i;
    return best;
}

} // namespace

int select_antibody(const AisState& state, Antigen antigen) {
    const int n = state.n();
    const auto j = static_cast<std::size_t>(antigen.code - 1);

    std::vector<double> score(static_cast<std::size_t>(n));
    if (state.mode == SelectionMode::Greedy) {
        for (int i = 0; i < n; ++i)
            score[static_cast<std::size_t>(i)] = state.P[static_cast<std::size_t>(i)][j];
        return argmax_lowest(score);
    }

    for (int i = 0; i < n; ++i)
        score[static_cast<std::size_t>(i)] =
            state.P[static_cast<std::size_t>(i)][j] * state.C[static_cast<std::size_t>(i)];
    const auto w = static_cast<std::size_t>(argmax_lowest(score));

    for (int i = 0; i < n; ++i) {
        const auto& Pi = state.P[static_cast<std::size_t>(i)];
        const auto& Ii = state.I[static_cast<std::size_t>(i)];
        double stim = 0.0, supp = 0.0;
        for (std::size_t k = 0; k < 8; ++k) {
            stim += Pi[k] * state.I[w][k];
            supp += Ii[k] * state.P[w][k];
        }
        score[static_cast<std::size_t>(i)] =
            state.C[static_cast<std::size_t>(i)] *
            (Pi[j] + state.cfg.k_stim * stim - state.cfg.k_supp * supp);
    }
    return argmax_lowest(score);
}

double reward_for(Antigen previous, Antigen outcome) {
    if (outcome.code >= kAntigenCollisionRight) return 0.0;
    if (outcome.code >= kAntigenObstacleRight) return 0.4;
    if (outcome.code == kAntigenTargetSeen) return 1.0;
    // back to target-unseen: reward the escape if we were in trouble
    return previous.code >= kAntigenObstacleRight ? 0.8 : 0.5;
}

void reinforce(AisState& state, std::pair<int, int> executed, Antigen outcome) {
    const auto [i, j] = executed;
    if (i < 0 || i >= state.n() || j < 0 || j > 7)
        throw ValidationError("reinforce: executed (set, antigen) out of range");
    const double r = reward_for(Antigen{j + 1}, outcome);
    double& p = state.P[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    p = std::clamp(p + state.cfg.learning_rate * (r - 0.5), 0.0, 1.0);
}

void update_concentrations(AisState& state, int selected) {
    if (selected < 0 || selected >= state.n())
        throw ValidationError("update_concentrations: set index out of range");
    state.C[static_cast<std::size_t>(selected)] += state.cfg.c_boost;
    for (double& c : state.C) c = std::clamp(c * state.cfg.c_decay, state.cfg.c_min, state.cfg.c_max);
}

WheelSpeeds execute_behaviour(const BehaviourGene& gene, std::optional<BlobZone> blob, Rng& rng) {
    const double full = static_cast<double>(gene.speed);
    const double cut = full * (1.0 - gene.turn_angle / 100.0);
    const bool left_side = gene.direction == 1;

    switch (gene.type) {
    case 1: // wander, single turn direction
        if (rng.chance(gene.turn_frequency / 100.0))
            return left_side ? WheelSpeeds{cut, full} : WheelSpeeds{full, cut};
        return {full, full};
    case 2: // wander, both turn directions
        if (rng.chance(gene.turn_frequency / 100.0)) {
            if (rng.chance(gene.right_turn_frequency / 100.0))
                return {full, full * (1.0 - gene.right_turn_angle / 100.0)};
            return {cut, full};
        }
        return {full, full};
    case 3: // steady forward arc
        return left_side ? WheelSpeeds{cut, full} : WheelSpeeds{full, cut};
    case 4: { // spin on the spot
        const double m = full * gene.turn_angle / 100.0;
        return left_side ? WheelSpeeds{-m, m} : WheelSpeeds{m, -m};
    }
    case 5: { // reverse arc
        const double back_cut = -full * (1.0 - gene.turn_angle / 100.0);
        return left_side ? WheelSpeeds{back_cut, -full} : WheelSpeeds{-full, back_cut};
    }
    case 6: // track the blob
        if (!blob) return {full, full};
        switch (*blob) {
        case BlobZone::Centre: return {full, full};
        case BlobZone::Left: return {cut, full};
        case BlobZone::Right: return {full, cut};
        }
        break;
    default:
        break;
    }
    throw ValidationError("behaviour type " + std::to_string(gene.type) + " out of range 1-6");
}

EpisodeResult run_episode(const World& world, const PlatformProfile& profile,
                          const Genome& genome, const EpisodeConfig& cfg, EpisodeSinks sinks) {
    AisState ais = build_matrices(genome, cfg.mode, cfg.ais);
    Rng rng(Rng::mix(cfg.seed, 0xc0ffee11u));
    RobotState state = initial_state(world);
    const auto max_ticks = static_cast<std::int64_t>(std::llround(cfg.time_limit / cfg.dt));

    if (sinks.trail) sinks.trail->push_back({0, state.pose});

    EpisodeResult result;
    while (state.tick < max_ticks) {
        const SensorFrame frame = sense(world, state, profile);
        const Antigen antigen = classify_antigen(frame, profile);
        if (ais.last) reinforce(ais, *ais.last, antigen);

        const int selected = select_antibody(ais, antigen);
        update_concentrations(ais, selected);

        const BehaviourGene& gene = genome.sets[static_cast<std::size_t>(selected)]
                                        .genes[static_cast<std::size_t>(antigen.code - 1)];
        std::optional<BlobZone> zone;
        if (frame.blob) zone = blob_zone(frame.blob->bearing, profile);
        const WheelSpeeds wheels = execute_behaviour(gene, zone, rng);
        const SpeedCommand cmd =
            wheel_speeds_to_command(wheels.left, wheels.right, profile, epuck_profile());

        state = step(world, state, cmd, profile, cfg.dt);
        ais.last = {selected, antigen.code - 1};

        if (sinks.trail) sinks.trail->push_back({state.tick, state.pose});
        if (sinks.trace)
            sinks.trace->push_back({state.tick, antigen.code, selected, wheels.left, wheels.right,
                                    cmd.linear, cmd.angular});

        if (task_complete(world, state, profile)) {
            result.completed = true;
            break;
        }
    }
    result.collisions = state.collisions;
    result.t = result.completed ? state.elapsed : cfg.time_limit;
    return result;
}

} // namespace idiobot
