// Pattern corpus: the full (class x variant) array of glyphs a recognizer is
// judged against. Immutable after construction; safe to share across threads.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gabp/pattern.hpp"

namespace gabp {

class Corpus {
public:
    Corpus(int n_classes, int n_variants);

    int n_classes() const { return n_classes_; }
    int n_variants() const { return n_variants_; }
    int size() const { return n_classes_ * n_variants_; }

    const BitPattern& pattern(int class_index, int variant) const;
    BitPattern& pattern(int class_index, int variant);

    const std::string& label(int class_index) const { return labels_[static_cast<std::size_t>(class_index)]; }
    void set_label(int class_index, std::string text);

    bool operator==(const Corpus&) const = default;

private:
    int n_classes_;
    int n_variants_;
    std::vector<BitPattern> patterns_;  // class-major
    std::vector<std::string> labels_;
};

// Directory layout: manifest.txt ("classes=<n>", "variants=<n>", optional
// "label <XX> <text>" lines) plus one P1 file cXX_vYY.pbm per cell. Images
// that are not 16x16 go through normalize_pattern on load.
// Throws MissingPattern / MalformedPBM / InconsistentManifest.
Corpus load_corpus(const std::filesystem::path& dir);
void save_corpus(const Corpus& corpus, const std::filesystem::path& dir);

std::string pattern_filename(int class_index, int variant);

// Deterministic synthetic corpus: per class a distinct stroke-built base
// glyph (variant 0), further variants derived by 1-pixel translation,
// optional stroke thickening and up to 5 flipped pixels. Pure function of
// its arguments; all patterns are mutually distinct.
// Throws InvalidShape unless 1 <= n_classes <= 16 and n_variants >= 1.
Corpus generate_synthetic(std::uint64_t seed, int n_classes, int n_variants);

}  // namespace gabp
