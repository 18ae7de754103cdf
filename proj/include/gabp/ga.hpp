// Classic binary GA: roulette-wheel selection over strictly positive
// weights, one-point crossover, independent per-gene bit mutation, elitist
// generational replacement. Also carries the two textbook demo objectives
// (OneMax and -x^2 over a decoded scalar).
#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gabp/errors.hpp"
#include "gabp/rng.hpp"

namespace gabp {

using BitChromosome = std::vector<std::uint8_t>;

struct GaConfig {
    int population_size = 100;
    double p_crossover = 0.8;
    double p_mutation_per_gene = 0.01;
    int max_generations = 200;
    std::uint64_t seed = 1;
    int elitism = 1;
    // Halt once the best raw fitness reaches this value.
    std::optional<double> target_fitness;
};

struct ScoredPopulation {
    std::vector<std::pair<BitChromosome, double>> members;
    int generation = 1;
};

struct GaGenerationStats {
    int generation;
    double best_fitness;
    double mean_fitness;

    bool operator==(const GaGenerationStats&) const = default;
};

struct GaHistory {
    std::vector<GaGenerationStats> generations;
    BitChromosome best;
    double best_fitness = 0.0;

    bool operator==(const GaHistory&) const = default;
};

using FitnessFn = std::function<double(const BitChromosome&)>;
// Maps a raw fitness value to a strictly positive selection weight.
using WeightFn = std::function<double(double)>;

// p_i = f_i / sum(f). Throws NonPositiveFitness unless every f_i > 0; the
// caller is responsible for transforming shifted or negative objectives.
std::vector<double> roulette_probabilities(std::span<const double> fitnesses);

std::size_t roulette_select(std::span<const double> probs, Rng& rng);

// offspring1 = b[0,point) ++ a[point,L); offspring2 = a[0,point) ++ b[point,L).
// point may be 0 or L (both no-ops as a pair).
std::pair<BitChromosome, BitChromosome> one_point_crossover(const BitChromosome& a, const BitChromosome& b,
                                                            std::size_t point);

BitChromosome bit_mutate(const BitChromosome& c, double p_per_gene, Rng& rng);

double onemax_fitness(const BitChromosome& x);

// Exponential scaling for roulette weights: exp(fitness / temperature).
// Strictly positive for any real objective, and keeps selection pressure
// alive when absolute fitness differences are small next to their magnitude
// (where raw proportional selection degenerates to uniform sampling).
// Callers keep |fitness| / temperature well under 700 to stay finite.
double exp_weight(double fitness, double temperature);

// Big-endian integer value of x mapped affinely onto [lo, hi]:
// all-zeros -> lo, all-ones -> hi.
double decode_scalar(const BitChromosome& x, double lo, double hi);

double neg_square_fitness(const BitChromosome& x, double lo, double hi);

std::vector<BitChromosome> random_population(int population_size, std::size_t length, Rng& rng);

// Generational loop. Raw fitness drives elitism, history and the halt
// target; selection runs on weight(fitness) (identity when no WeightFn is
// given). Random crossover points are drawn from [1, L-1]; chromosomes of
// length < 2 are cloned.
GaHistory run_ga(const GaConfig& cfg, const FitnessFn& fitness, std::vector<BitChromosome> init,
                 const WeightFn& weight = {});

// Header "generation,best_fitness,mean_fitness".
void write_history_csv(std::ostream& out, const GaHistory& history);

}  // namespace gabp
