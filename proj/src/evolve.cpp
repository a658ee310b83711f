#include "idiobot/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "idiobot/errors.hpp"

namespace idiobot {

Individual evaluate(Individual individual, const World& world, const PlatformProfile& profile,
                    std::uint64_t seed, double dt, double time_limit) {
    Rng rng(Rng::mix(seed, 0xe7a111u));
    RobotState state = initial_state(world);
    const auto max_ticks = static_cast<std::int64_t>(std::llround(time_limit / dt));

    std::optional<int> last_antigen; // column executed on the previous tick
    bool completed = false;
    while (state.tick < max_ticks) {
        const SensorFrame frame = sense(world, state, profile);
        const Antigen antigen = classify_antigen(frame, profile);
        if (last_antigen) {
            GeneStats& st = individual.stats[static_cast<std::size_t>(*last_antigen)];
            const double r = reward_for(Antigen{*last_antigen + 1}, antigen);
            ++st.evaluations;
            st.mean_reward += (r - st.mean_reward) / st.evaluations;
        }

        const BehaviourGene& gene = individual.genes[static_cast<std::size_t>(antigen.code - 1)];
        std::optional<BlobZone> zone;
        if (frame.blob) zone = blob_zone(frame.blob->bearing, profile);
        const WheelSpeeds wheels = execute_behaviour(gene, zone, rng);
        const SpeedCommand cmd =
            wheel_speeds_to_command(wheels.left, wheels.right, profile, epuck_profile());
        state = step(world, state, cmd, profile, dt);
        last_antigen = antigen.code - 1;

        if (task_complete(world, state, profile)) {
            completed = true;
            break;
        }
    }
    individual.t = completed ? state.elapsed : time_limit;
    individual.c = state.collisions;
    individual.evaluated = true;
    return individual;
}

std::vector<double> population_fitness(const std::vector<std::pair<double, double>>& evals,
                                       double rho) {
    if (evals.empty()) throw ValidationError("population fitness over an empty population");
    if (evals.size() == 1) return {1.0};
    return relative_fitness(evals, rho);
}

int roulette_select(const std::vector<double>& weights, Rng& rng) {
    if (weights.empty()) throw ValidationError("roulette over an empty weight vector");
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw ValidationError("roulette weights must be non-negative");
        total += w;
    }
    if (total <= 0.0) return rng.uniform_int(0, static_cast<int>(weights.size()) - 1);
    double target = rng.uniform01() * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        target -= weights[i];
        if (target < 0.0) return static_cast<int>(i);
    }
    return static_cast<int>(weights.size()) - 1;
}

namespace {

// Attribute accessors shared by crossover and mutation. The antigen index and
// score are not evolvable.
using AttrRef = int BehaviourGene::*;
constexpr AttrRef kEvolvable[] = {
    &BehaviourGene::type,           &BehaviourGene::speed,
    &BehaviourGene::turn_frequency, &BehaviourGene::turn_angle,
    &BehaviourGene::direction,      &BehaviourGene::right_turn_frequency,
    &BehaviourGene::right_turn_angle,
};

int mutate_attribute(AttrRef attr, int antigen_index, const AttributeBounds& bounds, Rng& rng) {
    if (attr == &BehaviourGene::type) {
        const auto types = allowed_types(antigen_index);
        return types[static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<int>(types.size()) - 1))];
    }
    if (attr == &BehaviourGene::speed) return rng.uniform_int(bounds.speed_min, bounds.speed_max);
    if (attr == &BehaviourGene::direction) return rng.uniform_int(1, 2);
    return rng.uniform_int(bounds.percent_min, bounds.percent_max);
}

} // namespace

Individual breed(const Individual& parent_a, const Individual& parent_b,
                 const EvolutionConfig& cfg, Rng& rng) {
    Individual child;
    for (int antigen = 0; antigen < 8; ++antigen) {
        BehaviourGene gene;
        gene.antigen_index = antigen;
        gene.score = 50;
        const BehaviourGene& a = parent_a.genes[static_cast<std::size_t>(antigen)];
        const BehaviourGene& b = parent_b.genes[static_cast<std::size_t>(antigen)];
        for (AttrRef attr : kEvolvable) {
            gene.*attr = rng.chance(0.5) ? a.*attr : b.*attr;
            if (rng.chance(cfg.mutation_rate))
                gene.*attr = mutate_attribute(attr, antigen, cfg.bounds, rng);
        }
        child.genes[static_cast<std::size_t>(antigen)] = gene;
    }
    return child;
}

Individual rl_replace(Individual individual, const EvolutionConfig& cfg, Rng& rng) {
    for (int antigen = 0; antigen < 8; ++antigen) {
        const GeneStats& st = individual.stats[static_cast<std::size_t>(antigen)];
        if (st.evaluations >= cfg.replace_min_evals && st.mean_reward < cfg.replace_threshold) {
            individual.genes[static_cast<std::size_t>(antigen)] =
                random_gene(antigen, rng, cfg.bounds);
            individual.stats[static_cast<std::size_t>(antigen)] = GeneStats{};
        }
    }
    return individual;
}

namespace {

Individual random_individual(Rng& rng, const AttributeBounds& bounds) {
    Individual ind;
    for (int antigen = 0; antigen < 8; ++antigen)
        ind.genes[static_cast<std::size_t>(antigen)] = random_gene(antigen, rng, bounds);
    return ind;
}

GeneSet to_gene_set(const Individual& ind) {
    GeneSet set;
    set.genes = ind.genes;
    for (int antigen = 0; antigen < 8; ++antigen) {
        BehaviourGene& g = set.genes[static_cast<std::size_t>(antigen)];
        const GeneStats& st = ind.stats[static_cast<std::size_t>(antigen)];
        // never-executed genes keep the neutral score
        g.score = st.evaluations > 0
                      ? std::clamp(static_cast<int>(std::lround(100.0 * st.mean_reward)), 0, 100)
                      : 50;
    }
    set.task_time_s = std::max(1, static_cast<int>(std::lround(ind.t)));
    set.collisions = ind.c;
    return set;
}

} // namespace

Genome evolve(const WorldTemplate& world, const PlatformProfile& profile,
              const EvolutionConfig& cfg, std::vector<GenerationLog>* log) {
    if (cfg.population_size < 2 || cfg.populations < 2)
        throw ValidationError("evolution needs populations >= 2 and population_size >= 2");
    if (cfg.mutation_rate < 0.0 || cfg.mutation_rate > 1.0)
        throw ValidationError("mutation rate must be in [0, 1]");

    Genome genome;
    for (int pop = 0; pop < cfg.populations; ++pop) {
        // populations never interbreed: each owns an isolated random stream
        Rng rng(Rng::mix(cfg.seed, 0x9090u, static_cast<std::uint64_t>(pop)));

        std::vector<Individual> population;
        population.reserve(static_cast<std::size_t>(cfg.population_size));
        for (int i = 0; i < cfg.population_size; ++i)
            population.push_back(random_individual(rng, cfg.bounds));

        Individual best;
        double best_cost = std::numeric_limits<double>::infinity();
        int stale = 0;

        for (int gen = 0; gen < cfg.max_generations; ++gen) {
            const World scenario = instantiate(
                world, Rng::mix(cfg.seed, 0x5ce9u, static_cast<std::uint64_t>(pop),
                                static_cast<std::uint64_t>(gen)));
            for (int i = 0; i < cfg.population_size; ++i) {
                Individual& ind = population[static_cast<std::size_t>(i)];
                if (ind.evaluated) continue; // the carried elite keeps its record
                ind = evaluate(std::move(ind), scenario, profile,
                               Rng::mix(cfg.seed, static_cast<std::uint64_t>(pop),
                                        static_cast<std::uint64_t>(gen),
                                        static_cast<std::uint64_t>(i)),
                               cfg.dt, cfg.time_limit);
            }

            std::vector<std::pair<double, double>> evals;
            evals.reserve(population.size());
            for (const Individual& ind : population)
                evals.emplace_back(ind.t, static_cast<double>(ind.c));
            const std::vector<double> mu = population_fitness(evals, cfg.rho);

            int best_index = 0;
            double generation_best = std::numeric_limits<double>::infinity();
            double cost_sum = 0.0;
            for (int i = 0; i < cfg.population_size; ++i) {
                population[static_cast<std::size_t>(i)].fitness = mu[static_cast<std::size_t>(i)];
                const double cost = population[static_cast<std::size_t>(i)].cost(cfg.rho);
                cost_sum += cost;
                if (cost < generation_best) {
                    generation_best = cost;
                    best_index = i;
                }
            }
            if (log)
                log->push_back({pop, gen, population[static_cast<std::size_t>(best_index)].t,
                                population[static_cast<std::size_t>(best_index)].c,
                                generation_best, cost_sum / cfg.population_size});

            if (generation_best < best_cost) {
                best = population[static_cast<std::size_t>(best_index)];
                // plateau detection: require a > 1% improvement to reset
                if (best_cost == std::numeric_limits<double>::infinity() ||
                    best_cost - generation_best > 0.01 * best_cost)
                    stale = 0;
                else
                    ++stale;
                best_cost = generation_best;
            } else {
                ++stale;
            }
            if (gen + 1 >= cfg.max_generations || stale >= cfg.plateau_window) break;

            // repair poorly matched genes in the pool (the elite copy is safe),
            // then refill the generation around the elite
            for (Individual& ind : population) ind = rl_replace(std::move(ind), cfg, rng);

            std::vector<Individual> next;
            next.reserve(population.size());
            next.push_back(best);
            while (static_cast<int>(next.size()) < cfg.population_size) {
                const int a = roulette_select(mu, rng);
                int b = a;
                while (b == a) b = roulette_select(mu, rng);
                next.push_back(breed(population[static_cast<std::size_t>(a)],
                                     population[static_cast<std::size_t>(b)], cfg, rng));
            }
            population = std::move(next);
        }
        genome.sets.push_back(to_gene_set(best));
    }
    return genome;
}

} // namespace idiobot
