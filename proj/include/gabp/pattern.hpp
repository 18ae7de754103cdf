// Bitmap glyph types and normalization. A BitPattern is the unit every other
// module works with: a 16x16 binary image, one bit per pixel, 1 = black.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gabp/errors.hpp"

namespace gabp {

// Arbitrary-size binary raster, row-major, values 0/1. Input to normalization.
struct PixelGrid {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;  // size = width * height

    std::uint8_t at(int row, int col) const { return bits[static_cast<std::size_t>(row) * width + col]; }
    std::uint8_t& at(int row, int col) { return bits[static_cast<std::size_t>(row) * width + col]; }
};

// Normalized 16x16 glyph: 256 genes in row-major order.
struct BitPattern {
    static constexpr int kSide = 16;
    static constexpr int kGenes = kSide * kSide;

    std::array<std::uint8_t, kGenes> bits{};

    std::uint8_t at(int row, int col) const { return bits[static_cast<std::size_t>(row) * kSide + col]; }
    std::uint8_t& at(int row, int col) { return bits[static_cast<std::size_t>(row) * kSide + col]; }

    int popcount() const;

    bool operator==(const BitPattern&) const = default;
};

// Crops the input to the bounding box of its black pixels, then rescales to
// 16x16 with nearest-neighbor sampling: output (r,c) reads the box pixel at
// (floor(r*Hb/16), floor(c*Wb/16)). Throws AllWhiteInput when no pixel is set.
BitPattern normalize_pattern(const PixelGrid& raw);

// Big-endian binary expansion of class_index, n_outputs bits.
// Throws IndexOutOfRange unless 0 <= class_index < 2^n_outputs.
std::vector<std::uint8_t> class_code(int class_index, int n_outputs = 4);

}  // namespace gabp
