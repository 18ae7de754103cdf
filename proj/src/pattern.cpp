#include "gabp/pattern.hpp"

#include <algorithm>

namespace gabp {

int BitPattern::popcount() const {
    int n = 0;
    for (auto b : bits) n += b;
    return n;
}

BitPattern normalize_pattern(const PixelGrid& raw) {
    int r0 = raw.height, r1 = -1, c0 = raw.width, c1 = -1;
    for (int r = 0; r < raw.height; ++r) {
        for (int c = 0; c < raw.width; ++c) {
            if (raw.at(r, c)) {
                r0 = std::min(r0, r);
                r1 = std::max(r1, r);
                c0 = std::min(c0, c);
                c1 = std::max(c1, c);
            }
        }
    }
    if (r1 < 0) throw AllWhiteInput{};

    const int box_h = r1 - r0 + 1;
    const int box_w = c1 - c0 + 1;
    BitPattern out;
    for (int r = 0; r < BitPattern::kSide; ++r) {
        const int src_r = r0 + r * box_h / BitPattern::kSide;
        for (int c = 0; c < BitPattern::kSide; ++c) {
            const int src_c = c0 + c * box_w / BitPattern::kSide;
            out.at(r, c) = raw.at(src_r, src_c);
        }
    }
    return out;
}

std::vector<std::uint8_t> class_code(int class_index, int n_outputs) {
    if (n_outputs < 1 || n_outputs > 30 || class_index < 0 || class_index >= (1 << n_outputs))
        throw IndexOutOfRange("class index " + std::to_string(class_index) + " does not fit in " +
                              std::to_string(n_outputs) + " bits");
    std::vector<std::uint8_t> code(static_cast<std::size_t>(n_outputs));
    for (int k = 0; k < n_outputs; ++k)
        code[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>((class_index >> (n_outputs - 1 - k)) & 1);
    return code;
}

}  // namespace gabp
