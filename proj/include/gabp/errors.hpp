// Error types shared across the library. Every failure mode callers are
// expected to handle has its own type so tests and the CLI can match on it.
#pragma once

#include <stdexcept>
#include <string>

namespace gabp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// corpus
struct AllWhiteInput : Error {
    AllWhiteInput() : Error("input grid has no black pixel; bounding box undefined") {}
};
struct IndexOutOfRange : Error {
    using Error::Error;
};
struct MissingPattern : Error {
    using Error::Error;
};
struct MalformedPBM : Error {
    using Error::Error;
};
struct InconsistentManifest : Error {
    using Error::Error;
};
struct InvalidShape : Error {
    using Error::Error;
};

// bpn
struct DimensionMismatch : Error {
    using Error::Error;
};

// ga_core
struct NonPositiveFitness : Error {
    using Error::Error;
};
struct LengthMismatch : Error {
    using Error::Error;
};
struct PointOutOfRange : Error {
    using Error::Error;
};
struct EmptyChromosome : Error {
    EmptyChromosome() : Error("chromosome has no genes") {}
};

// beings / pipeline
struct ShapeMismatch : Error {
    using Error::Error;
};
struct EmptyCorpus : Error {
    EmptyCorpus() : Error("corpus has no patterns") {}
};
struct InvalidConfig : Error {
    using Error::Error;
};
struct IoFailure : Error {
    using Error::Error;
};

}  // namespace gabp
