// Plain (ASCII) PBM "P1" reader/writer for 16x16 glyphs.
#pragma once

#include <filesystem>
#include <iosfwd>

#include "gabp/pattern.hpp"

namespace gabp {

// Reads a P1 image. Non-16x16 images are accepted and returned as a grid;
// callers that need a BitPattern normalize afterwards. Comments (# ...) and
// arbitrary whitespace between tokens are allowed, as are packed digit rows.
// Throws MalformedPBM on anything that is not a well-formed P1 file.
PixelGrid read_pbm(std::istream& in, const std::string& name = "<stream>");
PixelGrid read_pbm_file(const std::filesystem::path& path);

// Writes a P1 image, one packed digit row per line.
void write_pbm(std::ostream& out, const BitPattern& pattern);
void write_pbm_file(const std::filesystem::path& path, const BitPattern& pattern);

}  // namespace gabp
