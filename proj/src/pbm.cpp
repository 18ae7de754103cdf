#include "gabp/pbm.hpp"

#include <fstream>
#include <sstream>

namespace gabp {
namespace {

// Next character that is not whitespace or part of a # comment.
int next_token_char(std::istream& in) {
    int ch = in.get();
    while (ch != EOF) {
        if (ch == '#') {
            while (ch != EOF && ch != '\n') ch = in.get();
        } else if (!std::isspace(ch)) {
            return ch;
        }
        ch = in.get();
    }
    return EOF;
}

int read_int(std::istream& in, const std::string& name, const char* what) {
    int ch = next_token_char(in);
    if (ch == EOF || !std::isdigit(ch)) throw MalformedPBM(name + ": expected " + what);
    long value = 0;
    while (ch != EOF && std::isdigit(ch)) {
        value = value * 10 + (ch - '0');
        if (value > 1 << 20) throw MalformedPBM(name + ": absurd " + std::string(what));
        ch = in.get();
    }
    return static_cast<int>(value);
}

}  // namespace

PixelGrid read_pbm(std::istream& in, const std::string& name) {
    if (in.get() != 'P' || in.get() != '1') throw MalformedPBM(name + ": missing P1 magic");
    PixelGrid grid;
    grid.width = read_int(in, name, "width");
    grid.height = read_int(in, name, "height");
    if (grid.width < 1 || grid.height < 1) throw MalformedPBM(name + ": empty image");
    grid.bits.resize(static_cast<std::size_t>(grid.width) * grid.height);
    for (auto& bit : grid.bits) {
        const int ch = next_token_char(in);
        if (ch != '0' && ch != '1') throw MalformedPBM(name + ": expected pixel digit");
        bit = static_cast<std::uint8_t>(ch - '0');
    }
    return grid;
}

PixelGrid read_pbm_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw MalformedPBM(path.string() + ": cannot open");
    return read_pbm(in, path.filename().string());
}

void write_pbm(std::ostream& out, const BitPattern& pattern) {
    out << "P1\n" << BitPattern::kSide << ' ' << BitPattern::kSide << '\n';
    for (int r = 0; r < BitPattern::kSide; ++r) {
        for (int c = 0; c < BitPattern::kSide; ++c) out << char('0' + pattern.at(r, c));
        out << '\n';
    }
}

void write_pbm_file(const std::filesystem::path& path, const BitPattern& pattern) {
    std::ofstream out(path);
    if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
    write_pbm(out, pattern);
    if (!out) throw IoFailure("write failed: " + path.string());
}

}  // namespace gabp
