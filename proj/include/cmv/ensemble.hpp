#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "cmv/coefficients.hpp"

namespace cmv {

enum class Distribution { UniformDisk, FixedRadius };

struct EnsembleSpec {
    int m = 1;
    int k_min = -20;
    int k_max = 20;
    std::uint64_t seed = 7;
    double radius_max = 0.8;
    Distribution distribution = Distribution::UniformDisk;
};

using Rng = std::mt19937_64;

// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases of diag(R) removed.
Mat random_unitary(int m, Rng& rng);
// Complex Gaussian matrix rescaled to spectral norm `norm`.
Mat random_with_norm(int m, double norm, Rng& rng);
// Norm drawn per `dist`: r * sqrt(u) for UniformDisk, r for FixedRadius.
Mat random_contraction(int m, double radius_max, Distribution dist, Rng& rng);

// Interior coefficients sampled per `spec`; both boundary coefficients are the identity.
VerblunskySequence generate(const EnsembleSpec& spec);

Distribution distribution_from_name(const std::string& name);

}  // namespace cmv
