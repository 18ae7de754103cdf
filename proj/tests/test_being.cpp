#include <algorithm>
#include <vector>

#include <doctest.h>

#include "gabp/being.hpp"
#include "gabp/corpus.hpp"
#include "gabp/errors.hpp"
#include "gabp/ga.hpp"
#include "gabp/rng.hpp"
#include "temp_dir.hpp"

using namespace gabp;

namespace {

Being random_being(int n_slots, Rng& rng) {
    Being being;
    being.chromosomes.resize(static_cast<std::size_t>(n_slots));
    for (auto& chromosome : being.chromosomes)
        for (auto& bit : chromosome.bits) bit = static_cast<std::uint8_t>(uniform_below(rng, 2));
    return being;
}

BitChromosome flatten(const Being& being) {
    BitChromosome flat;
    flat.reserve(static_cast<std::size_t>(being.genome_length()));
    for (const auto& chromosome : being.chromosomes)
        flat.insert(flat.end(), chromosome.bits.begin(), chromosome.bits.end());
    return flat;
}

int hamming(const Being& a, const Being& b) {
    int d = 0;
    for (std::size_t s = 0; s < a.chromosomes.size(); ++s)
        for (int g = 0; g < BitPattern::kGenes; ++g)
            d += a.chromosomes[s].bits[static_cast<std::size_t>(g)] !=
                 b.chromosomes[s].bits[static_cast<std::size_t>(g)];
    return d;
}

}  // namespace

TEST_CASE("being geometry") {
    Rng rng(1);
    const Being being = random_being(12, rng);
    CHECK(being.n_slots() == 12);
    CHECK(being.genome_length() == 3072);
    CHECK(Tribe{}.generation == 1);
}

TEST_CASE("being_crossover matches flat one-point crossover gene for gene") {
    // Independent oracle: concatenate both genomes and run the bit-level
    // operator from the GA layer at the same point.
    Rng rng(2);
    for (int trial = 0; trial < 400; ++trial) {
        const int n_slots = 1 + static_cast<int>(uniform_below(rng, 12));
        const Being a = random_being(n_slots, rng);
        const Being b = random_being(n_slots, rng);
        const int point = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(a.genome_length()) + 1));

        const auto [off1, off2, kind] = being_crossover(a, b, point);
        const auto [flat1, flat2] = one_point_crossover(flatten(a), flatten(b), static_cast<std::size_t>(point));
        CHECK(flatten(off1) == flat1);
        CHECK(flatten(off2) == flat2);
        CHECK(kind.slot == point / 256);
        CHECK(kind.offset == point % 256);
        CHECK(kind.is_boundary() == (point % 256 == 0));
    }
}

TEST_CASE("boundary crossover swaps whole chromosomes") {
    Rng rng(3);
    const Being a = random_being(4, rng);
    const Being b = random_being(4, rng);
    const auto [off1, off2, kind] = being_crossover(a, b, 2 * 256);
    CHECK(kind == CrossoverKind{2, 0});
    CHECK(kind.is_boundary());
    CHECK(off1.chromosomes[0] == b.chromosomes[0]);
    CHECK(off1.chromosomes[1] == b.chromosomes[1]);
    CHECK(off1.chromosomes[2] == a.chromosomes[2]);
    CHECK(off1.chromosomes[3] == a.chromosomes[3]);
    CHECK(off2.chromosomes[0] == a.chromosomes[0]);
    CHECK(off2.chromosomes[1] == a.chromosomes[1]);
    CHECK(off2.chromosomes[2] == b.chromosomes[2]);
    CHECK(off2.chromosomes[3] == b.chromosomes[3]);
}

TEST_CASE("in-chromosome crossover splices exactly one hybrid slot") {
    Rng rng(4);
    const Being a = random_being(3, rng);
    const Being b = random_being(3, rng);
    const int point = 256 + 100;  // slot 1, offset 100
    const auto [off1, off2, kind] = being_crossover(a, b, point);
    CHECK(kind == CrossoverKind{1, 100});
    CHECK_FALSE(kind.is_boundary());
    CHECK(off1.chromosomes[0] == b.chromosomes[0]);
    CHECK(off2.chromosomes[0] == a.chromosomes[0]);
    CHECK(off1.chromosomes[2] == a.chromosomes[2]);
    CHECK(off2.chromosomes[2] == b.chromosomes[2]);
    for (int g = 0; g < BitPattern::kGenes; ++g) {
        const auto& donor1 = g < 100 ? b : a;
        const auto& donor2 = g < 100 ? a : b;
        CHECK(off1.chromosomes[1].bits[static_cast<std::size_t>(g)] ==
              donor1.chromosomes[1].bits[static_cast<std::size_t>(g)]);
        CHECK(off2.chromosomes[1].bits[static_cast<std::size_t>(g)] ==
              donor2.chromosomes[1].bits[static_cast<std::size_t>(g)]);
    }
}

TEST_CASE("being_crossover endpoints and errors") {
    Rng rng(5);
    const Being a = random_being(3, rng);
    const Being b = random_being(3, rng);

    auto [at0_1, at0_2, at0_kind] = being_crossover(a, b, 0);
    CHECK(at0_1 == a);
    CHECK(at0_2 == b);
    CHECK(at0_kind == CrossoverKind{0, 0});

    auto [full_1, full_2, full_kind] = being_crossover(a, b, 3 * 256);
    CHECK(full_1 == b);
    CHECK(full_2 == a);
    CHECK(full_kind == CrossoverKind{3, 0});

    CHECK_THROWS_AS(being_crossover(a, random_being(2, rng), 10), ShapeMismatch);
    CHECK_THROWS_AS(being_crossover(a, b, -1), PointOutOfRange);
    CHECK_THROWS_AS(being_crossover(a, b, 3 * 256 + 1), PointOutOfRange);
}

TEST_CASE("boundary crossover of pure parents keeps offspring pure") {
    const Corpus corpus = generate_synthetic(13, 5, 4);
    const Tribe tribe = pure_beings_from_corpus(corpus);
    for (int slot = 0; slot <= 5; ++slot) {
        const auto [off1, off2, kind] =
            being_crossover(tribe.beings[0], tribe.beings[3], slot * 256);
        REQUIRE(kind.is_boundary());
        CHECK(is_pure(off1, corpus));
        CHECK(is_pure(off2, corpus));
    }
}

TEST_CASE("mutate_being endpoints") {
    Rng rng(6);
    const Being being = random_being(12, rng);
    CHECK(mutate_being(being, 0.0, rng) == being);

    // p = 1: every chromosome gets exactly one flipped pixel.
    const Being flipped = mutate_being(being, 1.0, rng);
    for (std::size_t s = 0; s < being.chromosomes.size(); ++s) {
        int d = 0;
        for (int g = 0; g < BitPattern::kGenes; ++g)
            d += flipped.chromosomes[s].bits[static_cast<std::size_t>(g)] !=
                 being.chromosomes[s].bits[static_cast<std::size_t>(g)];
        CHECK(d == 1);
    }
}

TEST_CASE("mutate_being flip counts follow the per-chromosome binomial") {
    // 12 chromosomes, p = 0.1: total flips ~ Binomial(12, 0.1), mean 1.2.
    Rng rng(7);
    const Being being = random_being(12, rng);
    long total = 0;
    int max_per_chromosome = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const Being mutated = mutate_being(being, 0.1, rng);
        total += hamming(being, mutated);
        for (std::size_t s = 0; s < being.chromosomes.size(); ++s) {
            int d = 0;
            for (int g = 0; g < BitPattern::kGenes; ++g)
                d += mutated.chromosomes[s].bits[static_cast<std::size_t>(g)] !=
                     being.chromosomes[s].bits[static_cast<std::size_t>(g)];
            max_per_chromosome = std::max(max_per_chromosome, d);
        }
    }
    const double mean = static_cast<double>(total) / 10000.0;
    CHECK(mean > 1.1);
    CHECK(mean < 1.3);
    CHECK(max_per_chromosome <= 1);
}

TEST_CASE("pure_beings_from_corpus builds one being per variant") {
    const Corpus corpus = generate_synthetic(7, 12, 9);
    const Tribe tribe = pure_beings_from_corpus(corpus);
    CHECK(tribe.generation == 1);
    REQUIRE(tribe.beings.size() == 9);
    for (int v = 0; v < 9; ++v) {
        REQUIRE(tribe.beings[static_cast<std::size_t>(v)].n_slots() == 12);
        for (int c = 0; c < 12; ++c)
            CHECK(tribe.beings[static_cast<std::size_t>(v)].chromosomes[static_cast<std::size_t>(c)] ==
                  corpus.pattern(c, v));
        CHECK(is_pure(tribe.beings[static_cast<std::size_t>(v)], corpus));
    }
}

TEST_CASE("is_pure spots foreign and cross-slot chromosomes") {
    const Corpus corpus = generate_synthetic(11, 6, 4);
    const Tribe tribe = pure_beings_from_corpus(corpus);
    Being being = tribe.beings[1];
    REQUIRE(is_pure(being, corpus));

    // One flipped pixel is no longer any variant of that class.
    being.chromosomes[2].bits[17] ^= 1;
    CHECK_FALSE(is_pure(being, corpus));

    // A glyph of class 0 sitting in slot 3 is impure even though the bits
    // exist elsewhere in the corpus; all patterns are mutually distinct.
    being = tribe.beings[1];
    being.chromosomes[3] = corpus.pattern(0, 0);
    CHECK_FALSE(is_pure(being, corpus));

    // Swapping variants within the same class keeps purity.
    being = tribe.beings[1];
    being.chromosomes[4] = corpus.pattern(4, 3);
    CHECK(is_pure(being, corpus));

    Rng rng(1);
    CHECK_THROWS_AS(is_pure(random_being(5, rng), corpus), ShapeMismatch);
}

TEST_CASE("being save/load round-trips through slot files") {
    TempDir dir("being-roundtrip");
    Rng rng(8);
    const Being being = random_being(5, rng);
    save_being(being, dir.path / "best_being");
    CHECK(load_being(dir.path / "best_being") == being);

    CHECK(slot_filename(0) == "slot00.pbm");
    CHECK(slot_filename(11) == "slot11.pbm");

    CHECK_THROWS_AS(load_being(dir.path / "nowhere"), MissingPattern);
}
