#pragma once

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cmv/ensemble.hpp"

namespace th {

using cmv::cplx;
using cmv::Mat;
inline constexpr double pi = std::numbers::pi;
inline const cplx I1{0.0, 1.0};

inline cmv::VerblunskySequence random_seq(int m, int k_min, int k_max, std::uint64_t seed, double r = 0.8,
                                          bool unitary_edges = true) {
    cmv::EnsembleSpec spec{m, k_min, k_max, seed, r, cmv::Distribution::UniformDisk};
    cmv::VerblunskySequence s = cmv::generate(spec);
    if (!unitary_edges) return s;
    cmv::Rng rng(seed + 1000);
    return s.with(k_min, cmv::random_unitary(m, rng)).with(k_max, cmv::random_unitary(m, rng));
}

inline cmv::VerblunskySequence free_seq(int m, int k_min, int k_max) {
    std::vector<Mat> v(static_cast<std::size_t>(k_max - k_min + 1), Mat::Zero(m, m));
    v.front() = cmv::eye(m);
    v.back() = cmv::eye(m);
    return {m, k_min, std::move(v)};
}

inline Mat scalar(cplx v) { return Mat::Constant(1, 1, v); }

inline double diff(const Mat& a, const Mat& b) { return (a - b).norm(); }

}  // namespace th
