// Command-line front end. Exit codes: 0 success, 1 data error (bad corpus,
// unreadable files), 2 usage error (unknown flags, out-of-range values).
#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gabp/being.hpp"
#include "gabp/corpus.hpp"
#include "gabp/errors.hpp"
#include "gabp/ga.hpp"
#include "gabp/network.hpp"
#include "gabp/pbm.hpp"
#include "gabp/pipeline.hpp"

namespace {

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<gabp::TrainingPattern> full_corpus_patterns(const gabp::Corpus& corpus, int n_output) {
    std::vector<gabp::TrainingPattern> patterns;
    patterns.reserve(static_cast<std::size_t>(corpus.size()));
    for (int c = 0; c < corpus.n_classes(); ++c)
        for (int v = 0; v < corpus.n_variants(); ++v)
            patterns.push_back({gabp::to_input(corpus.pattern(c, v)),
                                gabp::to_target(gabp::class_code(c, n_output))});
    return patterns;
}

int run_onemax(int bits, const gabp::GaConfig& cfg) {
    gabp::Rng rng(cfg.seed);
    auto init = gabp::random_population(cfg.population_size, static_cast<std::size_t>(bits), rng);
    // Exponential scaling keeps the wheel selective near the optimum, where
    // raw bit counts are all but equal (and handles the all-zero string).
    const auto history = gabp::run_ga(cfg, gabp::onemax_fitness, std::move(init),
                                      [](double f) { return gabp::exp_weight(f, 3.0); });
    gabp::write_history_csv(std::cout, history);
    return 0;
}

int run_quad(int bits, double lo, double hi, const gabp::GaConfig& cfg) {
    gabp::Rng rng(cfg.seed);
    auto init = gabp::random_population(cfg.population_size, static_cast<std::size_t>(bits), rng);
    const double shift = std::max(lo * lo, hi * hi) + 1e-9;
    const auto history = gabp::run_ga(
        cfg, [&](const gabp::BitChromosome& x) { return gabp::neg_square_fitness(x, lo, hi); },
        std::move(init), [&](double f) { return f + shift; });
    gabp::write_history_csv(std::cout, history);
    std::cout << "# best_x=" << gabp::decode_scalar(history.best, lo, hi) << '\n';
    return 0;
}

int run_gen_corpus(std::uint64_t seed, int classes, int variants, const std::string& out) {
    const auto corpus = gabp::generate_synthetic(seed, classes, variants);
    gabp::save_corpus(corpus, out);
    std::cout << "wrote " << corpus.size() << " patterns to " << out << '\n';
    return 0;
}

int run_select(const std::string& corpus_dir, const std::string& out_dir,
               const gabp::SelectionConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    const auto corpus = gabp::load_corpus(corpus_dir);
    auto run_cfg = cfg;
    run_cfg.ga.population_size = corpus.n_variants();
    const auto history =
        gabp::run_selection(corpus, run_cfg, [&](const gabp::GenerationRecord& rec) {
            std::cerr << "gen " << rec.generation << "  best " << rec.best_error << "  mean "
                      << rec.mean_error << (rec.best_is_pure ? "  pure" : "") << '\n';
        });
    gabp::export_history(history, out_dir);
    std::cout << "generations: " << history.generations.size() << '\n'
              << "best_error: " << history.best.residual_error << '\n'
              << "best_converged: " << (history.best.train_converged ? "yes" : "no") << '\n'
              << "seconds: " << elapsed_seconds(start) << '\n'
              << "output: " << out_dir << '\n';
    return 0;
}

int run_train_full(const std::string& corpus_dir, const gabp::SelectionConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    const auto corpus = gabp::load_corpus(corpus_dir);
    const auto patterns = full_corpus_patterns(corpus, cfg.shape.n_output);
    const auto result =
        gabp::train_until_recognized(gabp::initial_network(cfg), patterns, cfg.train);

    int correct = 0;
    for (int c = 0; c < corpus.n_classes(); ++c)
        for (int v = 0; v < corpus.n_variants(); ++v)
            if (gabp::recall_class(result.net, corpus.pattern(c, v), corpus.n_classes()) == c)
                ++correct;

    std::cout << "patterns: " << patterns.size() << '\n'
              << "epochs: " << result.epochs << '\n'
              << "converged: " << (result.converged ? "yes" : "no") << '\n'
              << "max_residual_error: " << gabp::residual_fitness(result.net, corpus) << '\n'
              << "recall_accuracy: " << static_cast<double>(correct) / corpus.size() << '\n'
              << "seconds: " << elapsed_seconds(start) << '\n';
    return 0;
}

int run_dump_being(const std::string& run_dir, int slot) {
    namespace fs = std::filesystem;
    fs::path dir = run_dir;
    if (fs::exists(dir / "best_being" / gabp::slot_filename(0))) dir /= "best_being";
    const auto being = gabp::load_being(dir);
    if (slot >= being.n_slots())
        throw gabp::IndexOutOfRange("slot " + std::to_string(slot) + " of " +
                                    std::to_string(being.n_slots()));
    const int first = slot < 0 ? 0 : slot;
    const int last = slot < 0 ? being.n_slots() : slot + 1;
    for (int i = first; i < last; ++i)
        gabp::write_pbm(std::cout, being.chromosomes[static_cast<std::size_t>(i)]);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Training-set selection for a bitmap-glyph recognizer: GA demos, corpus tools, "
                 "and the being-level selection experiment."};
    app.require_subcommand(1);

    int onemax_bits = 100;
    gabp::GaConfig onemax_ga;
    int quad_bits = 12;
    double lo = -2.0, hi = 2.0;
    gabp::GaConfig quad_ga;
    std::string corpus_dir, out_dir, run_dir;
    int slot = -1;
    std::uint64_t corpus_seed = 1;
    int classes = 12, variants = 9;
    gabp::SelectionConfig sel;
    gabp::SelectionConfig full;

    auto* onemax = app.add_subcommand("onemax", "All-ones GA demo; history CSV on stdout");
    onemax->add_option("--bits", onemax_bits, "Chromosome length")->capture_default_str()->check(CLI::PositiveNumber);
    onemax->add_option("--pop", onemax_ga.population_size, "Population size")->capture_default_str()->check(CLI::Range(2, 1000000));
    onemax->add_option("--pc", onemax_ga.p_crossover, "Crossover probability")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    onemax->add_option("--pm", onemax_ga.p_mutation_per_gene, "Per-gene mutation probability")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    onemax->add_option("--generations", onemax_ga.max_generations, "Generation limit")->capture_default_str()->check(CLI::PositiveNumber);
    onemax->add_option("--seed", onemax_ga.seed, "Run seed")->capture_default_str();

    auto* quad = app.add_subcommand("quad", "Maximize -x^2 over a decoded scalar; CSV on stdout");
    quad->add_option("--bits", quad_bits, "Chromosome length")->capture_default_str()->check(CLI::PositiveNumber);
    quad->add_option("--lo", lo, "Interval lower end")->capture_default_str();
    quad->add_option("--hi", hi, "Interval upper end")->capture_default_str();
    quad->add_option("--pop", quad_ga.population_size, "Population size")->capture_default_str()->check(CLI::Range(2, 1000000));
    quad->add_option("--pc", quad_ga.p_crossover, "Crossover probability")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    quad->add_option("--pm", quad_ga.p_mutation_per_gene, "Per-gene mutation probability")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    quad->add_option("--generations", quad_ga.max_generations, "Generation limit")->capture_default_str()->check(CLI::PositiveNumber);
    quad->add_option("--seed", quad_ga.seed, "Run seed")->capture_default_str();

    auto* gen = app.add_subcommand("gen-corpus", "Write a synthetic glyph corpus");
    gen->add_option("--seed", corpus_seed, "Corpus seed")->capture_default_str();
    gen->add_option("--classes", classes, "Character classes")->capture_default_str()->check(CLI::Range(1, 16));
    gen->add_option("--variants", variants, "Variants per class")->capture_default_str()->check(CLI::PositiveNumber);
    gen->add_option("--out", out_dir, "Output directory")->required();

    auto* select = app.add_subcommand("select", "Evolve the best training set for a corpus");
    select->add_option("--corpus", corpus_dir, "Corpus directory")->required();
    select->add_option("--out", out_dir, "Output directory")->required();
    select->add_option("--seed", sel.ga.seed, "Run seed")->capture_default_str();
    select->add_option("--generations", sel.ga.max_generations, "Generation limit")->capture_default_str()->check(CLI::PositiveNumber);
    select->add_option("--pc", sel.ga.p_crossover, "Being crossover probability")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    select->add_option("--pm", sel.ga.p_mutation_per_gene, "Per-chromosome mutation probability")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    select->add_option("--tolerance", sel.train.tolerance, "Recognition tolerance")->capture_default_str()->check(CLI::Range(1e-9, 1.0));
    select->add_option("--lr", sel.train.learning_rate, "Learning rate")->capture_default_str()->check(CLI::PositiveNumber);
    select->add_option("--max-epochs", sel.train.max_epochs, "Per-evaluation epoch limit")->capture_default_str()->check(CLI::NonNegativeNumber);
    select->add_option("--init-seed", sel.train.init_seed, "Weight initialization seed")->capture_default_str();
    select->add_flag("--halt-on-tolerance", sel.halt_on_tolerance, "Stop once the best being tests below tolerance");
    select->add_option("--workers", sel.workers, "Evaluation threads (0 = hardware)")->capture_default_str()->check(CLI::NonNegativeNumber);

    auto* train = app.add_subcommand("train-full", "Train one network on the whole corpus");
    train->add_option("--corpus", corpus_dir, "Corpus directory")->required();
    train->add_option("--seed", full.train.init_seed, "Weight initialization seed")->capture_default_str();
    train->add_option("--tolerance", full.train.tolerance, "Recognition tolerance")->capture_default_str()->check(CLI::Range(1e-9, 1.0));
    train->add_option("--lr", full.train.learning_rate, "Learning rate")->capture_default_str()->check(CLI::PositiveNumber);
    train->add_option("--max-epochs", full.train.max_epochs, "Epoch limit")->capture_default_str()->check(CLI::NonNegativeNumber);

    auto* dump = app.add_subcommand("dump-being", "Print a stored being as PBM text");
    dump->add_option("--run", run_dir, "Run output (or being) directory")->required();
    dump->add_option("--slot", slot, "Single slot to print (default: all)")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
        if (*onemax) return run_onemax(onemax_bits, onemax_ga);
        if (*quad) return run_quad(quad_bits, lo, hi, quad_ga);
        if (*gen) return run_gen_corpus(corpus_seed, classes, variants, out_dir);
        if (*select) return run_select(corpus_dir, out_dir, sel);
        if (*train) return run_train_full(corpus_dir, full);
        if (*dump) return run_dump_being(run_dir, slot);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const gabp::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
