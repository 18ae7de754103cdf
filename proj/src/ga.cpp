#include "gabp/ga.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace gabp {

std::vector<double> roulette_probabilities(std::span<const double> fitnesses) {
    if (fitnesses.empty()) throw NonPositiveFitness("no fitness values");
    double total = 0.0;
    for (double f : fitnesses) {
        if (!(f > 0.0)) throw NonPositiveFitness("fitness " + std::to_string(f) + " is not strictly positive");
        total += f;
    }
    std::vector<double> probs(fitnesses.size());
    for (std::size_t i = 0; i < fitnesses.size(); ++i) probs[i] = fitnesses[i] / total;
    return probs;
}

std::size_t roulette_select(std::span<const double> probs, Rng& rng) {
    const double u = uniform_unit(rng);
    double cumulative = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        cumulative += probs[i];
        if (u < cumulative) return i;
    }
    return probs.size() - 1;  // rounding slack
}

std::pair<BitChromosome, BitChromosome> one_point_crossover(const BitChromosome& a, const BitChromosome& b,
                                                            std::size_t point) {
    if (a.size() != b.size())
        throw LengthMismatch("parents of length " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
    if (point > a.size()) throw PointOutOfRange("crossover point " + std::to_string(point));
    BitChromosome off1(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(point));
    off1.insert(off1.end(), a.begin() + static_cast<std::ptrdiff_t>(point), a.end());
    BitChromosome off2(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(point));
    off2.insert(off2.end(), b.begin() + static_cast<std::ptrdiff_t>(point), b.end());
    return {std::move(off1), std::move(off2)};
}

BitChromosome bit_mutate(const BitChromosome& c, double p_per_gene, Rng& rng) {
    BitChromosome out = c;
    for (auto& gene : out)
        if (uniform_unit(rng) < p_per_gene) gene ^= 1;
    return out;
}

double onemax_fitness(const BitChromosome& x) {
    return static_cast<double>(std::accumulate(x.begin(), x.end(), 0L));
}

double exp_weight(double fitness, double temperature) {
    return std::exp(fitness / temperature);
}

double decode_scalar(const BitChromosome& x, double lo, double hi) {
    if (x.empty()) throw EmptyChromosome{};
    double value = 0.0;
    for (auto bit : x) value = value * 2.0 + bit;
    const double max_value = std::ldexp(1.0, static_cast<int>(x.size())) - 1.0;
    return lo + value / max_value * (hi - lo);
}

double neg_square_fitness(const BitChromosome& x, double lo, double hi) {
    const double v = decode_scalar(x, lo, hi);
    return -v * v;
}

std::vector<BitChromosome> random_population(int population_size, std::size_t length, Rng& rng) {
    std::vector<BitChromosome> population(static_cast<std::size_t>(population_size));
    for (auto& member : population) {
        member.resize(length);
        for (auto& gene : member) gene = static_cast<std::uint8_t>(uniform_below(rng, 2));
    }
    return population;
}

namespace {

void validate(const GaConfig& cfg, const std::vector<BitChromosome>& init) {
    if (cfg.population_size < 2) throw InvalidConfig("population size must be >= 2");
    if (cfg.max_generations < 1) throw InvalidConfig("max_generations must be >= 1");
    if (cfg.elitism < 0 || cfg.elitism >= cfg.population_size)
        throw InvalidConfig("elitism must be in [0, population_size)");
    if (cfg.p_crossover < 0.0 || cfg.p_crossover > 1.0 || cfg.p_mutation_per_gene < 0.0 ||
        cfg.p_mutation_per_gene > 1.0)
        throw InvalidConfig("operator probabilities must be in [0,1]");
    if (static_cast<int>(init.size()) != cfg.population_size)
        throw InvalidConfig("initial population size " + std::to_string(init.size()) + " != P");
    for (const auto& member : init)
        if (member.size() != init.front().size()) throw LengthMismatch("initial population lengths differ");
}

}  // namespace

GaHistory run_ga(const GaConfig& cfg, const FitnessFn& fitness, std::vector<BitChromosome> init,
                 const WeightFn& weight) {
    validate(cfg, init);
    const std::size_t length = init.front().size();
    Rng rng(cfg.seed);

    GaHistory history;
    std::vector<BitChromosome> population = std::move(init);
    std::vector<double> scores(population.size());
    bool have_best = false;

    for (int gen = 1; gen <= cfg.max_generations; ++gen) {
        ScoredPopulation scored;
        scored.generation = gen;
        scored.members.reserve(population.size());
        for (std::size_t i = 0; i < population.size(); ++i) {
            scores[i] = fitness(population[i]);
            scored.members.emplace_back(std::move(population[i]), scores[i]);
        }

        std::size_t gen_best = 0;
        double mean = 0.0;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            mean += scores[i];
            if (scores[i] > scores[gen_best]) gen_best = i;
        }
        mean /= static_cast<double>(scores.size());
        history.generations.push_back({gen, scores[gen_best], mean});
        if (!have_best || scores[gen_best] > history.best_fitness) {
            history.best = scored.members[gen_best].first;
            history.best_fitness = scores[gen_best];
            have_best = true;
        }

        if (cfg.target_fitness && scores[gen_best] >= *cfg.target_fitness) break;
        if (gen == cfg.max_generations) break;

        std::vector<double> weights(scores.size());
        for (std::size_t i = 0; i < scores.size(); ++i) weights[i] = weight ? weight(scores[i]) : scores[i];
        const auto probs = roulette_probabilities(weights);

        // Elite members carry over untouched; ranking ties keep the lower index.
        std::vector<std::size_t> order(scores.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

        std::vector<BitChromosome> next;
        next.reserve(population.size());
        for (int e = 0; e < cfg.elitism; ++e) next.push_back(scored.members[order[static_cast<std::size_t>(e)]].first);

        while (next.size() < scored.members.size()) {
            const auto& parent1 = scored.members[roulette_select(probs, rng)].first;
            const auto& parent2 = scored.members[roulette_select(probs, rng)].first;
            BitChromosome child1 = parent1;
            BitChromosome child2 = parent2;
            if (uniform_unit(rng) < cfg.p_crossover && length >= 2) {
                const std::size_t point = 1 + uniform_below(rng, length - 1);
                std::tie(child1, child2) = one_point_crossover(parent1, parent2, point);
            }
            next.push_back(bit_mutate(child1, cfg.p_mutation_per_gene, rng));
            if (next.size() < scored.members.size())
                next.push_back(bit_mutate(child2, cfg.p_mutation_per_gene, rng));
        }
        population = std::move(next);
    }
    return history;
}

void write_history_csv(std::ostream& out, const GaHistory& history) {
    out << "generation,best_fitness,mean_fitness\n";
    const auto previous = out.precision(12);
    for (const auto& row : history.generations)
        out << row.generation << ',' << row.best_fitness << ',' << row.mean_fitness << '\n';
    out.precision(previous);
}

}  // namespace gabp
