#include "gabp/being.hpp"

#include <iomanip>
#include <sstream>

#include "gabp/errors.hpp"
#include "gabp/pbm.hpp"

namespace gabp {

std::tuple<Being, Being, CrossoverKind> being_crossover(const Being& a, const Being& b, int point) {
    if (a.n_slots() != b.n_slots())
        throw ShapeMismatch("beings with " + std::to_string(a.n_slots()) + " and " +
                            std::to_string(b.n_slots()) + " chromosomes");
    if (point < 0 || point > a.genome_length())
        throw PointOutOfRange("crossover point " + std::to_string(point) + " outside [0, " +
                              std::to_string(a.genome_length()) + "]");

    const CrossoverKind kind{point / BitPattern::kGenes, point % BitPattern::kGenes};
    Being off1 = a;
    Being off2 = b;
    for (int slot = 0; slot < kind.slot; ++slot) {
        off1.chromosomes[static_cast<std::size_t>(slot)] = b.chromosomes[static_cast<std::size_t>(slot)];
        off2.chromosomes[static_cast<std::size_t>(slot)] = a.chromosomes[static_cast<std::size_t>(slot)];
    }
    if (kind.offset != 0) {
        auto& hybrid1 = off1.chromosomes[static_cast<std::size_t>(kind.slot)];
        auto& hybrid2 = off2.chromosomes[static_cast<std::size_t>(kind.slot)];
        for (int g = 0; g < kind.offset; ++g) {
            hybrid1.bits[static_cast<std::size_t>(g)] = b.chromosomes[static_cast<std::size_t>(kind.slot)].bits[static_cast<std::size_t>(g)];
            hybrid2.bits[static_cast<std::size_t>(g)] = a.chromosomes[static_cast<std::size_t>(kind.slot)].bits[static_cast<std::size_t>(g)];
        }
    }
    return {std::move(off1), std::move(off2), kind};
}

Being mutate_being(const Being& x, double p_mutation, Rng& rng) {
    Being out = x;
    for (auto& chromosome : out.chromosomes) {
        if (uniform_unit(rng) < p_mutation) {
            const auto gene = uniform_below(rng, BitPattern::kGenes);
            chromosome.bits[gene] ^= 1;
        }
    }
    return out;
}

Tribe pure_beings_from_corpus(const Corpus& corpus) {
    if (corpus.size() == 0) throw EmptyCorpus{};
    Tribe tribe;
    tribe.generation = 1;
    tribe.beings.resize(static_cast<std::size_t>(corpus.n_variants()));
    for (int v = 0; v < corpus.n_variants(); ++v) {
        auto& being = tribe.beings[static_cast<std::size_t>(v)];
        being.chromosomes.resize(static_cast<std::size_t>(corpus.n_classes()));
        for (int c = 0; c < corpus.n_classes(); ++c)
            being.chromosomes[static_cast<std::size_t>(c)] = corpus.pattern(c, v);
    }
    return tribe;
}

bool is_pure(const Being& x, const Corpus& corpus) {
    if (x.n_slots() != corpus.n_classes())
        throw ShapeMismatch("being has " + std::to_string(x.n_slots()) + " chromosomes, corpus has " +
                            std::to_string(corpus.n_classes()) + " classes");
    for (int c = 0; c < corpus.n_classes(); ++c) {
        bool matched = false;
        for (int v = 0; v < corpus.n_variants() && !matched; ++v)
            matched = x.chromosomes[static_cast<std::size_t>(c)] == corpus.pattern(c, v);
        if (!matched) return false;
    }
    return true;
}

std::string slot_filename(int slot) {
    std::ostringstream name;
    name << "slot" << std::setw(2) << std::setfill('0') << slot << ".pbm";
    return name.str();
}

void save_being(const Being& being, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (int slot = 0; slot < being.n_slots(); ++slot)
        write_pbm_file(dir / slot_filename(slot), being.chromosomes[static_cast<std::size_t>(slot)]);
}

Being load_being(const std::filesystem::path& dir) {
    Being being;
    for (int slot = 0;; ++slot) {
        const auto path = dir / slot_filename(slot);
        if (!std::filesystem::exists(path)) break;
        const PixelGrid grid = read_pbm_file(path);
        if (grid.width != BitPattern::kSide || grid.height != BitPattern::kSide)
            throw MalformedPBM(path.string() + ": being slots must be 16x16");
        BitPattern pattern;
        std::copy(grid.bits.begin(), grid.bits.end(), pattern.bits.begin());
        being.chromosomes.push_back(pattern);
    }
    if (being.chromosomes.empty()) throw MissingPattern("no slot files found in " + dir.string());
    return being;
}

}  // namespace gabp
