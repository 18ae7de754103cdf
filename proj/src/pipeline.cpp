#include "gabp/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <numeric>
#include <thread>

namespace gabp {

namespace {

void check_shapes(const Corpus& corpus, const NetworkShape& shape) {
    if (shape.n_input != BitPattern::kGenes)
        throw ShapeMismatch("network input size " + std::to_string(shape.n_input) + " != " +
                            std::to_string(BitPattern::kGenes));
    if (shape.n_output < 1 || shape.n_output > 30 || corpus.n_classes() > (1 << shape.n_output))
        throw ShapeMismatch(std::to_string(corpus.n_classes()) + " classes do not fit in " +
                            std::to_string(shape.n_output) + " output bits");
}

void validate(const Corpus& corpus, const SelectionConfig& cfg) {
    if (corpus.size() == 0) throw EmptyCorpus{};
    check_shapes(corpus, cfg.shape);
    if (cfg.ga.p_crossover < 0.0 || cfg.ga.p_crossover > 1.0 || cfg.ga.p_mutation_per_gene < 0.0 ||
        cfg.ga.p_mutation_per_gene > 1.0)
        throw InvalidConfig("operator probabilities must be in [0,1]");
    if (cfg.ga.max_generations < 1) throw InvalidConfig("max_generations must be >= 1");
    if (cfg.ga.elitism < 0) throw InvalidConfig("elitism must be >= 0");
    if (!(cfg.selection_epsilon > 0.0)) throw InvalidConfig("selection_epsilon must be > 0");
    if (!(cfg.penalty_base >= 1.0)) throw InvalidConfig("penalty_base must be >= 1 to outrank residual errors");
}

std::vector<TrainingPattern> training_patterns(const Being& being, int n_output) {
    std::vector<TrainingPattern> patterns;
    patterns.reserve(static_cast<std::size_t>(being.n_slots()));
    for (int slot = 0; slot < being.n_slots(); ++slot)
        patterns.push_back({to_input(being.chromosomes[static_cast<std::size_t>(slot)]),
                            to_target(class_code(slot, n_output))});
    return patterns;
}

// Evaluates every being of the tribe, in index order regardless of worker
// count: results land in a pre-sized vector, so scheduling cannot reorder
// or change anything.
std::vector<EvaluatedBeing> evaluate_tribe(const Tribe& tribe, const Corpus& corpus,
                                           const SelectionConfig& cfg) {
    std::vector<EvaluatedBeing> evaluated(tribe.beings.size());
    unsigned workers = cfg.workers > 0 ? static_cast<unsigned>(cfg.workers)
                                       : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(tribe.beings.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < tribe.beings.size(); ++i)
            evaluated[i] = evaluate_being(tribe.beings[i], corpus, cfg);
        return evaluated;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tribe.beings.size() || failed.load()) return;
            try {
                evaluated[i] = evaluate_being(tribe.beings[i], corpus, cfg);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return evaluated;
}

}  // namespace

Network initial_network(const SelectionConfig& cfg) {
    return init_network(cfg.shape, cfg.train.init_seed, cfg.train.init_range);
}

EvaluatedBeing evaluate_being(const Being& being, const Corpus& corpus, const SelectionConfig& cfg) {
    if (being.n_slots() != corpus.n_classes())
        throw ShapeMismatch("being has " + std::to_string(being.n_slots()) + " chromosomes for " +
                            std::to_string(corpus.n_classes()) + " classes");
    check_shapes(corpus, cfg.shape);
    const auto patterns = training_patterns(being, cfg.shape.n_output);
    const TrainResult trained = train_until_recognized(initial_network(cfg), patterns, cfg.train);

    EvaluatedBeing result;
    result.being = being;
    result.train_epochs = trained.epochs;
    result.train_converged = trained.converged;
    result.residual_error = trained.converged ? residual_fitness(trained.net, corpus)
                                              : cfg.penalty_base + trained.best_max_error;
    return result;
}

double selection_weight(double residual_error, double epsilon) {
    return 1.0 / (residual_error + epsilon);
}

RunHistory run_selection(const Corpus& corpus, const SelectionConfig& cfg,
                         const std::function<void(const GenerationRecord&)>& on_generation) {
    validate(corpus, cfg);
    Tribe tribe = pure_beings_from_corpus(corpus);
    const std::size_t population = tribe.beings.size();
    const int elite_count = static_cast<int>(std::min<std::size_t>(
        population, static_cast<std::size_t>(std::max(cfg.ga.elitism, 0))));
    Rng rng(cfg.ga.seed);

    RunHistory history;
    history.seed = cfg.ga.seed;
    bool have_best = false;

    for (int gen = 1; gen <= cfg.ga.max_generations; ++gen) {
        const auto evaluated = evaluate_tribe(tribe, corpus, cfg);

        std::size_t best = 0;
        double mean = 0.0;
        for (std::size_t i = 0; i < evaluated.size(); ++i) {
            mean += evaluated[i].residual_error;
            if (evaluated[i].residual_error < evaluated[best].residual_error) best = i;
        }
        mean /= static_cast<double>(evaluated.size());
        history.generations.push_back(
            {gen, evaluated[best].residual_error, mean, is_pure(evaluated[best].being, corpus)});
        if (on_generation) on_generation(history.generations.back());
        if (!have_best || evaluated[best].residual_error < history.best.residual_error) {
            history.best = evaluated[best];
            have_best = true;
        }

        if (cfg.halt_on_tolerance && evaluated[best].residual_error < cfg.train.tolerance) break;
        if (gen == cfg.ga.max_generations) break;

        std::vector<double> weights(evaluated.size());
        for (std::size_t i = 0; i < evaluated.size(); ++i)
            weights[i] = selection_weight(evaluated[i].residual_error, cfg.selection_epsilon);
        const auto probs = roulette_probabilities(weights);

        std::vector<std::size_t> order(evaluated.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return evaluated[a].residual_error < evaluated[b].residual_error;
        });

        Tribe next;
        next.generation = gen + 1;
        next.beings.reserve(population);
        for (int e = 0; e < elite_count; ++e)
            next.beings.push_back(evaluated[order[static_cast<std::size_t>(e)]].being);

        const int genome = tribe.beings.front().genome_length();
        while (next.beings.size() < population) {
            const Being& parent1 = evaluated[roulette_select(probs, rng)].being;
            const Being& parent2 = evaluated[roulette_select(probs, rng)].being;
            Being child1 = parent1;
            Being child2 = parent2;
            if (uniform_unit(rng) < cfg.ga.p_crossover && genome >= 2) {
                const int point = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(genome - 1)));
                std::tie(child1, child2, std::ignore) = being_crossover(parent1, parent2, point);
            }
            next.beings.push_back(mutate_being(child1, cfg.ga.p_mutation_per_gene, rng));
            if (next.beings.size() < population)
                next.beings.push_back(mutate_being(child2, cfg.ga.p_mutation_per_gene, rng));
        }
        tribe = std::move(next);
    }
    return history;
}

void write_history_csv(std::ostream& out, const RunHistory& history) {
    out << "# seed=" << history.seed << '\n';
    out << "generation,best_error,mean_error,best_is_pure\n";
    const auto previous = out.precision(12);
    for (const auto& row : history.generations)
        out << row.generation << ',' << row.best_error << ',' << row.mean_error << ','
            << (row.best_is_pure ? 1 : 0) << '\n';
    out.precision(previous);
}

void export_history(const RunHistory& history, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::ofstream csv(out_dir / "history.csv");
    if (!csv) throw IoFailure("cannot write history.csv in " + out_dir.string());
    write_history_csv(csv, history);
    if (!csv) throw IoFailure("write failed: history.csv");
    save_being(history.best.being, out_dir / "best_being");
}

}  // namespace gabp
