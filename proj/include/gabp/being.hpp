// Beings: one level above chromosomes. A being carries one 16x16 glyph
// chromosome per character class (slot i always encodes class i) and is the
// unit that competes in selection. Crossover runs over the concatenated
// genome, so a single cut point either swaps whole glyphs (boundary) or
// splices two glyphs of the same class into a hybrid (in-chromosome).
#pragma once

#include <filesystem>
#include <tuple>
#include <vector>

#include "gabp/corpus.hpp"
#include "gabp/pattern.hpp"
#include "gabp/rng.hpp"

namespace gabp {

struct Being {
    std::vector<BitPattern> chromosomes;

    int n_slots() const { return static_cast<int>(chromosomes.size()); }
    int genome_length() const { return n_slots() * BitPattern::kGenes; }

    bool operator==(const Being&) const = default;
};

struct Tribe {
    std::vector<Being> beings;
    int generation = 1;
};

// Where a global crossover point fell: slot = point / 256, offset = point % 256.
// offset == 0 means the cut sits on a chromosome boundary.
struct CrossoverKind {
    int slot = 0;
    int offset = 0;

    bool is_boundary() const { return offset == 0; }
    bool operator==(const CrossoverKind&) const = default;
};

// One-point crossover over the flat genome, same offspring labeling as
// ga_core: offspring1 takes parent b's prefix. point ranges over
// [0, n_slots * 256]. Throws ShapeMismatch / PointOutOfRange.
std::tuple<Being, Being, CrossoverKind> being_crossover(const Being& a, const Being& b, int point);

// Pixel-noise mutation: each chromosome independently, with probability
// p_mutation, gets exactly one uniformly chosen gene flipped.
Being mutate_being(const Being& x, double p_mutation, Rng& rng);

// Generation one: being v holds variant v of every class.
Tribe pure_beings_from_corpus(const Corpus& corpus);

// True iff every chromosome bit-exactly matches some variant of its slot's
// class. Throws ShapeMismatch when slot count != corpus classes.
bool is_pure(const Being& x, const Corpus& corpus);

// slotXX.pbm per chromosome inside dir (created if needed).
void save_being(const Being& being, const std::filesystem::path& dir);
Being load_being(const std::filesystem::path& dir);

std::string slot_filename(int slot);

}  // namespace gabp
