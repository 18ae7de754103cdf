#include "gabp/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "gabp/pbm.hpp"
#include "gabp/rng.hpp"

namespace gabp {

Corpus::Corpus(int n_classes, int n_variants) : n_classes_(n_classes), n_variants_(n_variants) {
    if (n_classes < 1 || n_variants < 1 || n_classes > 1024)
        throw InvalidShape("corpus shape " + std::to_string(n_classes) + "x" + std::to_string(n_variants));
    patterns_.resize(static_cast<std::size_t>(n_classes) * n_variants);
    labels_.resize(static_cast<std::size_t>(n_classes));
}

const BitPattern& Corpus::pattern(int class_index, int variant) const {
    if (class_index < 0 || class_index >= n_classes_ || variant < 0 || variant >= n_variants_)
        throw IndexOutOfRange("pattern (" + std::to_string(class_index) + "," + std::to_string(variant) + ")");
    return patterns_[static_cast<std::size_t>(class_index) * n_variants_ + variant];
}

BitPattern& Corpus::pattern(int class_index, int variant) {
    return const_cast<BitPattern&>(std::as_const(*this).pattern(class_index, variant));
}

void Corpus::set_label(int class_index, std::string text) {
    if (class_index < 0 || class_index >= n_classes_)
        throw IndexOutOfRange("label index " + std::to_string(class_index));
    labels_[static_cast<std::size_t>(class_index)] = std::move(text);
}

std::string pattern_filename(int class_index, int variant) {
    std::ostringstream name;
    name << 'c' << std::setw(2) << std::setfill('0') << class_index << "_v" << std::setw(2) << variant << ".pbm";
    return name.str();
}

namespace {

struct Manifest {
    int n_classes = 0;
    int n_variants = 0;
    std::vector<std::pair<int, std::string>> labels;
};

int parse_count(const std::string& line, const std::string& key) {
    if (line.rfind(key + "=", 0) != 0)
        throw InconsistentManifest("manifest.txt: expected '" + key + "=<n>', got '" + line + "'");
    try {
        return std::stoi(line.substr(key.size() + 1));
    } catch (const std::exception&) {
        throw InconsistentManifest("manifest.txt: bad count in '" + line + "'");
    }
}

Manifest read_manifest(const std::filesystem::path& dir) {
    std::ifstream in(dir / "manifest.txt");
    if (!in) throw InconsistentManifest("missing manifest.txt in " + dir.string());
    Manifest m;
    std::string line;
    if (!std::getline(in, line)) throw InconsistentManifest("manifest.txt: empty file");
    m.n_classes = parse_count(line, "classes");
    if (!std::getline(in, line)) throw InconsistentManifest("manifest.txt: missing variants line");
    m.n_variants = parse_count(line, "variants");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string keyword;
        int index = -1;
        fields >> keyword >> index;
        if (keyword != "label" || fields.fail())
            throw InconsistentManifest("manifest.txt: bad line '" + line + "'");
        if (index < 0 || index >= m.n_classes)
            throw InconsistentManifest("manifest.txt: label index " + std::to_string(index) + " out of range");
        std::string text;
        std::getline(fields >> std::ws, text);
        m.labels.emplace_back(index, std::move(text));
    }
    return m;
}

}  // namespace

Corpus load_corpus(const std::filesystem::path& dir) {
    const Manifest m = read_manifest(dir);
    if (m.n_classes < 1 || m.n_variants < 1)
        throw InconsistentManifest("manifest.txt: non-positive corpus shape");
    Corpus corpus(m.n_classes, m.n_variants);
    for (const auto& [index, text] : m.labels) corpus.set_label(index, text);
    for (int c = 0; c < m.n_classes; ++c) {
        for (int v = 0; v < m.n_variants; ++v) {
            const auto path = dir / pattern_filename(c, v);
            if (!std::filesystem::exists(path))
                throw MissingPattern("missing " + pattern_filename(c, v) + " in " + dir.string());
            const PixelGrid grid = read_pbm_file(path);
            if (grid.width == BitPattern::kSide && grid.height == BitPattern::kSide) {
                std::copy(grid.bits.begin(), grid.bits.end(), corpus.pattern(c, v).bits.begin());
            } else {
                corpus.pattern(c, v) = normalize_pattern(grid);
            }
        }
    }
    return corpus;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::ofstream manifest(dir / "manifest.txt");
    if (!manifest) throw IoFailure("cannot write manifest.txt in " + dir.string());
    manifest << "classes=" << corpus.n_classes() << "\nvariants=" << corpus.n_variants() << '\n';
    for (int c = 0; c < corpus.n_classes(); ++c)
        if (!corpus.label(c).empty()) manifest << "label " << c << ' ' << corpus.label(c) << '\n';
    for (int c = 0; c < corpus.n_classes(); ++c)
        for (int v = 0; v < corpus.n_variants(); ++v)
            write_pbm_file(dir / pattern_filename(c, v), corpus.pattern(c, v));
}

namespace {

void draw_hstroke(BitPattern& glyph, int row, int col, int len) {
    for (int i = 0; i < len; ++i) glyph.at(row, col + i) = 1;
}

void draw_vstroke(BitPattern& glyph, int row, int col, int len) {
    for (int i = 0; i < len; ++i) glyph.at(row + i, col) = 1;
}

void draw_diagonal(BitPattern& glyph, int row, int col, int dc, int len) {
    for (int i = 0; i < len; ++i) glyph.at(row + i, col + i * dc) = 1;
}

void draw_stroke(BitPattern& glyph, Rng& rng) {
    const int side = BitPattern::kSide;
    switch (uniform_below(rng, 3)) {
        case 0: {
            const int len = 6 + static_cast<int>(uniform_below(rng, 7));
            draw_hstroke(glyph, static_cast<int>(uniform_below(rng, side)),
                         static_cast<int>(uniform_below(rng, side - len + 1)), len);
            break;
        }
        case 1: {
            const int len = 6 + static_cast<int>(uniform_below(rng, 7));
            draw_vstroke(glyph, static_cast<int>(uniform_below(rng, side - len + 1)),
                         static_cast<int>(uniform_below(rng, side)), len);
            break;
        }
        default: {
            const int len = 5 + static_cast<int>(uniform_below(rng, 6));
            const int dc = uniform_below(rng, 2) ? 1 : -1;
            const int row = static_cast<int>(uniform_below(rng, side - len + 1));
            const int col = dc > 0 ? static_cast<int>(uniform_below(rng, side - len + 1))
                                   : len - 1 + static_cast<int>(uniform_below(rng, side - len + 1));
            draw_diagonal(glyph, row, col, dc, len);
            break;
        }
    }
}

BitPattern draw_base_glyph(Rng& rng) {
    BitPattern glyph;
    int strokes = 0;
    while (strokes < 3 || (glyph.popcount() < 22 && strokes < 8)) {
        draw_stroke(glyph, rng);
        ++strokes;
    }
    return glyph;
}

BitPattern translate(const BitPattern& src, int dr, int dc) {
    BitPattern out;
    for (int r = 0; r < BitPattern::kSide; ++r) {
        for (int c = 0; c < BitPattern::kSide; ++c) {
            const int sr = r - dr, sc = c - dc;
            if (sr >= 0 && sr < BitPattern::kSide && sc >= 0 && sc < BitPattern::kSide)
                out.at(r, c) = src.at(sr, sc);
        }
    }
    return out;
}

BitPattern thicken(const BitPattern& src, int dr, int dc) {
    BitPattern out = src;
    for (int r = 0; r < BitPattern::kSide; ++r) {
        for (int c = 0; c < BitPattern::kSide; ++c) {
            if (!src.at(r, c)) continue;
            const int tr = r + dr, tc = c + dc;
            if (tr >= 0 && tr < BitPattern::kSide && tc >= 0 && tc < BitPattern::kSide) out.at(tr, tc) = 1;
        }
    }
    return out;
}

BitPattern distort(const BitPattern& base, Rng& rng) {
    const int dr = static_cast<int>(uniform_below(rng, 3)) - 1;
    const int dc = static_cast<int>(uniform_below(rng, 3)) - 1;
    BitPattern glyph = translate(base, dr, dc);
    if (uniform_unit(rng) < 0.5) glyph = uniform_below(rng, 2) ? thicken(glyph, 1, 0) : thicken(glyph, 0, 1);
    const int flips = 1 + static_cast<int>(uniform_below(rng, 5));
    for (int i = 0; i < flips; ++i) {
        const auto gene = uniform_below(rng, BitPattern::kGenes);
        glyph.bits[gene] ^= 1;
    }
    return glyph;
}

}  // namespace

Corpus generate_synthetic(std::uint64_t seed, int n_classes, int n_variants) {
    if (n_classes < 1 || n_classes > 16 || n_variants < 1)
        throw InvalidShape("synthetic corpus shape " + std::to_string(n_classes) + "x" +
                           std::to_string(n_variants));
    Corpus corpus(n_classes, n_variants);
    for (int c = 0; c < n_classes; ++c) {
        Rng base_rng(mix_seed(seed, static_cast<std::uint64_t>(c)));
        const BitPattern base = draw_base_glyph(base_rng);
        corpus.pattern(c, 0) = base;
        for (int v = 1; v < n_variants; ++v) {
            Rng variant_rng(mix_seed(seed, static_cast<std::uint64_t>(c), static_cast<std::uint64_t>(v)));
            corpus.pattern(c, v) = distort(base, variant_rng);
        }
    }
    // Distinctness guarantee: nudge any duplicate by deterministic pixel flips.
    std::vector<const BitPattern*> seen;
    for (int c = 0; c < n_classes; ++c) {
        for (int v = 0; v < n_variants; ++v) {
            BitPattern& glyph = corpus.pattern(c, v);
            Rng nudge_rng(mix_seed(seed ^ 0xABCDEFULL, static_cast<std::uint64_t>(c),
                                   static_cast<std::uint64_t>(v)));
            auto duplicate = [&] {
                return std::any_of(seen.begin(), seen.end(), [&](const BitPattern* p) { return *p == glyph; });
            };
            while (duplicate()) glyph.bits[uniform_below(nudge_rng, BitPattern::kGenes)] ^= 1;
            seen.push_back(&glyph);
        }
    }
    return corpus;
}

}  // namespace gabp
