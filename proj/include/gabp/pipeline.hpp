// The selection experiment: score each being by training a fresh network
// (identical initial weights for every being) on its glyphs until all are
// recognized, then testing the trained net against the full corpus. The
// max residual error over the corpus is the being's fitness, minimized by
// an elitist GA with roulette selection over 1/(error + epsilon).
#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <vector>

#include "gabp/being.hpp"
#include "gabp/corpus.hpp"
#include "gabp/ga.hpp"
#include "gabp/network.hpp"

namespace gabp {

struct SelectionConfig {
    // At the being level p_mutation_per_gene applies per chromosome: a hit
    // flips one pixel of that glyph. Population size always follows the
    // corpus (generation one is the pure tribe); run_selection overrides
    // ga.population_size with n_variants.
    GaConfig ga{.population_size = 9,
                .p_crossover = 0.25,
                .p_mutation_per_gene = 0.1,
                .max_generations = 40,
                .seed = 1,
                .elitism = 1};
    TrainConfig train;
    NetworkShape shape;
    double selection_epsilon = 1e-3;
    double penalty_base = 1.0;
    bool halt_on_tolerance = false;
    int workers = 1;  // 0 = hardware concurrency; output is identical for any value
};

struct EvaluatedBeing {
    Being being;
    // Residual error to minimize: in [0,1] when training converged, in
    // [penalty_base, penalty_base+1] when it did not, so every convergent
    // being outranks every non-convergent one.
    double residual_error = 0.0;
    int train_epochs = 0;
    bool train_converged = false;

    bool operator==(const EvaluatedBeing&) const = default;
};

struct GenerationRecord {
    int generation;
    double best_error;
    double mean_error;
    bool best_is_pure;

    bool operator==(const GenerationRecord&) const = default;
};

struct RunHistory {
    std::uint64_t seed = 0;
    std::vector<GenerationRecord> generations;
    EvaluatedBeing best;

    bool operator==(const RunHistory&) const = default;
};

// The network every evaluation starts from; a pure function of cfg.
Network initial_network(const SelectionConfig& cfg);

// Train on the being's glyphs (slot order), then test against the whole
// corpus. Deterministic: the same being always yields the same result.
EvaluatedBeing evaluate_being(const Being& being, const Corpus& corpus, const SelectionConfig& cfg);

// Positive, strictly decreasing transform bridging minimized errors to
// roulette's positive-fitness requirement: 1 / (error + epsilon).
double selection_weight(double residual_error, double epsilon);

// on_generation fires right after each generation is recorded (progress
// reporting); it must not mutate anything the run depends on.
RunHistory run_selection(const Corpus& corpus, const SelectionConfig& cfg,
                         const std::function<void(const GenerationRecord&)>& on_generation = {});

// history.csv ("# seed=<n>" comment, then
// generation,best_error,mean_error,best_is_pure) plus best_being/slotXX.pbm.
void export_history(const RunHistory& history, const std::filesystem::path& out_dir);
void write_history_csv(std::ostream& out, const RunHistory& history);

}  // namespace gabp
