#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "gabp/errors.hpp"
#include "gabp/ga.hpp"
#include "gabp/rng.hpp"

using namespace gabp;

namespace {

BitChromosome bits(const std::string& s) {
    BitChromosome c;
    for (char ch : s) c.push_back(ch == '1');
    return c;
}

int hamming(const BitChromosome& a, const BitChromosome& b) {
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

}  // namespace

TEST_CASE("roulette_probabilities reproduces the four-chromosome wheel") {
    const std::vector<double> f{169.0, 576.0, 64.0, 361.0};
    const auto probs = roulette_probabilities(f);
    REQUIRE(probs.size() == 4);
    CHECK(std::abs(probs[0] - 0.144) <= 0.001);
    CHECK(std::abs(probs[1] - 0.492) <= 0.001);
    CHECK(std::abs(probs[2] - 0.055) <= 0.001);
    CHECK(std::abs(probs[3] - 0.309) <= 0.001);
}

TEST_CASE("roulette_probabilities normalizes, preserves order and rejects non-positive input") {
    const auto uniform = roulette_probabilities(std::vector<double>{3.5, 3.5, 3.5, 3.5});
    for (double p : uniform) CHECK(p == doctest::Approx(0.25));
    CHECK(roulette_probabilities(std::vector<double>{7.0}) == std::vector<double>{1.0});

    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> f(1 + uniform_below(rng, 20));
        for (auto& x : f) x = uniform_real(rng, 1e-6, 100.0);
        const auto probs = roulette_probabilities(f);
        double sum = 0.0;
        for (double p : probs) sum += p;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        for (std::size_t i = 0; i + 1 < f.size(); ++i)
            CHECK((f[i] < f[i + 1]) == (probs[i] < probs[i + 1]));
    }

    CHECK_THROWS_AS(roulette_probabilities(std::vector<double>{1.0, 0.0}), NonPositiveFitness);
    CHECK_THROWS_AS(roulette_probabilities(std::vector<double>{-1.0}), NonPositiveFitness);
    CHECK_THROWS_AS(roulette_probabilities(std::vector<double>{}), NonPositiveFitness);
}

TEST_CASE("roulette_select matches its distribution") {
    Rng rng(99);
    CHECK(roulette_select(std::vector<double>{1.0}, rng) == 0);

    std::vector<int> counts(2, 0);
    const std::vector<double> half{0.5, 0.5};
    for (int i = 0; i < 10000; ++i) ++counts[roulette_select(half, rng)];
    CHECK(counts[0] >= 4700);
    CHECK(counts[0] <= 5300);

    const auto wheel = roulette_probabilities(std::vector<double>{169.0, 576.0, 64.0, 361.0});
    std::vector<int> wheel_counts(4, 0);
    const int n = 100000;
    for (int i = 0; i < n; ++i) ++wheel_counts[roulette_select(wheel, rng)];
    const double expected[] = {0.144, 0.492, 0.055, 0.309};
    for (int k = 0; k < 4; ++k)
        CHECK(std::abs(static_cast<double>(wheel_counts[k]) / n - expected[k]) < 0.01);
}

TEST_CASE("one_point_crossover reproduces the worked example at point 4") {
    const auto a = bits("11010111101");
    const auto b = bits("10100000100");
    const auto [off1, off2] = one_point_crossover(a, b, 4);
    CHECK(off1 == bits("10100111101"));
    CHECK(off2 == bits("11010000100"));
}

TEST_CASE("one_point_crossover endpoints and degenerate parents") {
    const auto a = bits("11010111101");
    const auto b = bits("10100000100");
    CHECK(one_point_crossover(a, b, 0) == std::pair{a, b});
    CHECK(one_point_crossover(a, b, a.size()) == std::pair{b, a});
    CHECK(one_point_crossover(a, a, 5) == std::pair{a, a});

    CHECK_THROWS_AS(one_point_crossover(a, bits("101"), 1), LengthMismatch);
    CHECK_THROWS_AS(one_point_crossover(a, b, a.size() + 1), PointOutOfRange);
}

TEST_CASE("one_point_crossover conserves alleles positionwise") {
    Rng rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t length = 1 + uniform_below(rng, 40);
        BitChromosome a(length), b(length);
        for (auto& g : a) g = static_cast<std::uint8_t>(uniform_below(rng, 2));
        for (auto& g : b) g = static_cast<std::uint8_t>(uniform_below(rng, 2));
        const std::size_t point = uniform_below(rng, length + 1);
        const auto [off1, off2] = one_point_crossover(a, b, point);
        for (std::size_t i = 0; i < length; ++i) {
            CHECK(std::minmax(off1[i], off2[i]) == std::minmax(a[i], b[i]));
        }
    }
}

TEST_CASE("bit_mutate endpoints") {
    Rng rng(23);
    const auto c = bits("1100101");
    CHECK(bit_mutate(c, 0.0, rng) == c);
    CHECK(bit_mutate(c, 1.0, rng) == bits("0011010"));
}

TEST_CASE("bit_mutate flip counts follow the binomial oracle") {
    // L=100, p=0.01: mean 1.0, sd 0.995; 10,000 trials put the sample mean
    // within 0.1 of the expectation with overwhelming probability.
    Rng rng(31);
    const BitChromosome zeroes(100, 0);
    long total = 0;
    for (int trial = 0; trial < 10000; ++trial)
        total += hamming(zeroes, bit_mutate(zeroes, 0.01, rng));
    const double mean = static_cast<double>(total) / 10000.0;
    CHECK(mean > 0.9);
    CHECK(mean < 1.1);
}

TEST_CASE("onemax_fitness counts ones") {
    CHECK(onemax_fitness(BitChromosome(100, 0)) == 0.0);
    CHECK(onemax_fitness(BitChromosome(100, 1)) == 100.0);
    BitChromosome alternating;
    for (int i = 0; i < 100; ++i) alternating.push_back(i % 2 == 0);
    CHECK(onemax_fitness(alternating) == 50.0);
}

TEST_CASE("exp_weight is positive and strictly increasing") {
    CHECK(exp_weight(0.0, 3.0) == doctest::Approx(1.0));
    CHECK(exp_weight(3.0, 3.0) == doctest::Approx(std::exp(1.0)));
    CHECK(exp_weight(-300.0, 3.0) > 0.0);
    CHECK(exp_weight(95.0, 3.0) > exp_weight(94.0, 3.0));
}

TEST_CASE("decode_scalar maps the bit range onto the interval") {
    CHECK(decode_scalar(BitChromosome(12, 0), -1.0, 1.0) == doctest::Approx(-1.0));
    CHECK(decode_scalar(BitChromosome(12, 1), -1.0, 1.0) == doctest::Approx(1.0));
    CHECK(decode_scalar(bits("01"), 0.0, 3.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(decode_scalar(BitChromosome{}, 0.0, 1.0), EmptyChromosome);
}

TEST_CASE("neg_square_fitness is minus the decoded square") {
    CHECK(neg_square_fitness(BitChromosome(12, 1), -2.0, 2.0) == doctest::Approx(-4.0));
    CHECK(neg_square_fitness(BitChromosome(12, 1), -1.0, 1.0) == doctest::Approx(-1.0));
    // The decoded midpoint of a symmetric interval sits near 0.
    CHECK(std::abs(neg_square_fitness(bits("100000000000"), -2.0, 2.0)) <= 1e-5);
}

TEST_CASE("random_population is deterministic per seed") {
    Rng a(3), b(3), c(4);
    CHECK(random_population(10, 20, a) == random_population(10, 20, b));
    CHECK(random_population(10, 20, c) != random_population(10, 20, a));
}

TEST_CASE("run_ga validates its inputs") {
    GaConfig cfg;
    cfg.population_size = 4;
    Rng rng(1);
    auto init = random_population(4, 8, rng);

    GaConfig bad = cfg;
    bad.population_size = 1;
    CHECK_THROWS_AS(run_ga(bad, onemax_fitness, {init[0]}), InvalidConfig);
    bad = cfg;
    bad.elitism = 4;
    CHECK_THROWS_AS(run_ga(bad, onemax_fitness, init), InvalidConfig);
    bad = cfg;
    bad.p_crossover = 1.5;
    CHECK_THROWS_AS(run_ga(bad, onemax_fitness, init), InvalidConfig);
    bad = cfg;
    bad.max_generations = 0;
    CHECK_THROWS_AS(run_ga(bad, onemax_fitness, init), InvalidConfig);
    CHECK_THROWS_AS(run_ga(cfg, onemax_fitness, random_population(3, 8, rng)), InvalidConfig);

    auto ragged = init;
    ragged[2].pop_back();
    CHECK_THROWS_AS(run_ga(cfg, onemax_fitness, ragged), LengthMismatch);

    // All-zero chromosomes make raw OneMax weights hit zero on the wheel.
    GaConfig two = cfg;
    two.population_size = 2;
    two.max_generations = 3;
    CHECK_THROWS_AS(run_ga(two, onemax_fitness, {BitChromosome(8, 0), BitChromosome(8, 0)}),
                    NonPositiveFitness);
}

TEST_CASE("run_ga without variation keeps the best constant") {
    GaConfig cfg;
    cfg.population_size = 20;
    cfg.p_crossover = 0.0;
    cfg.p_mutation_per_gene = 0.0;
    cfg.max_generations = 15;
    Rng rng(8);
    const auto history =
        run_ga(cfg, onemax_fitness, random_population(20, 30, rng), [](double f) { return f + 1.0; });
    REQUIRE(history.generations.size() == 15);
    for (const auto& row : history.generations)
        CHECK(row.best_fitness == history.generations.front().best_fitness);
}

TEST_CASE("a homogeneous population with pm=0 never changes") {
    // Crossover between identical parents regenerates them, so best and
    // mean stay frozen no matter how often the operator fires.
    GaConfig cfg;
    cfg.population_size = 10;
    cfg.p_crossover = 0.9;
    cfg.p_mutation_per_gene = 0.0;
    cfg.max_generations = 12;
    const BitChromosome member = bits("110100111010");
    const auto history = run_ga(cfg, onemax_fitness,
                                std::vector<BitChromosome>(10, member));
    for (const auto& row : history.generations) {
        CHECK(row.best_fitness == 7.0);
        CHECK(row.mean_fitness == doctest::Approx(7.0));
    }
    CHECK(history.best == member);
}

TEST_CASE("elitism makes best fitness non-decreasing") {
    GaConfig cfg;
    cfg.population_size = 30;
    cfg.max_generations = 60;
    cfg.seed = 5;
    Rng rng(5);
    const auto history = run_ga(cfg, onemax_fitness, random_population(30, 40, rng),
                                [](double f) { return exp_weight(f, 3.0); });
    for (std::size_t i = 1; i < history.generations.size(); ++i)
        CHECK(history.generations[i].best_fitness >= history.generations[i - 1].best_fitness);
    CHECK(history.best_fitness == history.generations.back().best_fitness);
}

TEST_CASE("run_ga is a pure function of its inputs") {
    GaConfig cfg;
    cfg.population_size = 16;
    cfg.max_generations = 25;
    cfg.seed = 12;
    Rng rng_a(2), rng_b(2);
    const auto weight = [](double f) { return f + 1.0; };
    const auto a = run_ga(cfg, onemax_fitness, random_population(16, 24, rng_a), weight);
    const auto b = run_ga(cfg, onemax_fitness, random_population(16, 24, rng_b), weight);
    CHECK(a == b);
}

TEST_CASE("run_ga halts once the target fitness is reached") {
    GaConfig cfg;
    cfg.population_size = 50;
    cfg.max_generations = 500;
    cfg.seed = 9;
    cfg.target_fitness = 30.0;
    Rng rng(9);
    const auto history = run_ga(cfg, onemax_fitness, random_population(50, 40, rng),
                                [](double f) { return exp_weight(f, 3.0); });
    CHECK(history.best_fitness >= 30.0);
    CHECK(history.generations.size() < 500);
    CHECK(history.generations.back().best_fitness >= 30.0);
}

TEST_CASE("OneMax reaches 95 of 100 within 200 generations on sample seeds") {
    for (std::uint64_t seed : {1, 2, 3}) {
        GaConfig cfg;
        cfg.seed = seed;
        cfg.target_fitness = 95.0;
        Rng rng(seed);
        const auto history = run_ga(cfg, onemax_fitness, random_population(100, 100, rng),
                                    [](double f) { return exp_weight(f, 3.0); });
        CHECK(history.best_fitness >= 95.0);
        CHECK(history.generations.size() <= 200);
    }
}

TEST_CASE("the quadratic demo finds the vertex on most seeds") {
    // Maximize -x^2 over [-2, 2]; weights use the shifted parabola with a
    // hair of slack so boundary strings stay strictly positive.
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        GaConfig cfg;
        cfg.seed = seed;
        cfg.max_generations = 100;
        Rng rng(seed);
        const auto history = run_ga(
            cfg, [](const BitChromosome& x) { return neg_square_fitness(x, -2.0, 2.0); },
            random_population(100, 12, rng), [](double f) { return f + 4.0 + 1e-9; });
        if (std::abs(decode_scalar(history.best, -2.0, 2.0)) < 0.05) ++hits;
    }
    CHECK(hits >= 8);
}

TEST_CASE("history CSV has the pinned header and one row per generation") {
    GaHistory history;
    history.generations = {{1, 5.0, 2.5}, {2, 6.0, 3.25}};
    history.best = bits("111");
    history.best_fitness = 6.0;
    std::ostringstream out;
    write_history_csv(out, history);
    CHECK(out.str() == "generation,best_fitness,mean_fitness\n1,5,2.5\n2,6,3.25\n");
}
