#pragma once

#include <cstdint>
#include <vector>

#include "qmeix/meixner.hpp"

namespace qmeix::meix {

// Deterministic sampler: identical (spec, n, seed) triples produce identical
// output. Gamma by Marsaglia-Tsang (with the shape < 1 boost), NegBinomial by
// Poisson mixing over a Gamma intensity (valid for non-integer r), MeixnerV
// by rejection against a Cauchy envelope.
std::vector<double> sample(const DistributionSpec& spec, std::size_t n, std::uint64_t seed);

}  // namespace qmeix::meix
