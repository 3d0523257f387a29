#include "cmv/ensemble.hpp"

#include <cmath>
#include <numbers>

namespace cmv {

static Mat gaussian(int m, Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Mat a(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) a(i, j) = cplx(n(rng), n(rng));
    return a;
}

Mat random_unitary(int m, Rng& rng) {
    const Eigen::HouseholderQR<Mat> qr(gaussian(m, rng));
    Mat q = qr.householderQ() * Mat::Identity(m, m);
    const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < m; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag > 0) q.col(j) *= r(j, j) / mag;
    }
    return q;
}

Mat random_with_norm(int m, double norm, Rng& rng) {
    if (m == 1) {
        std::uniform_real_distribution<double> ph(0.0, 2.0 * std::numbers::pi);
        return Mat::Constant(1, 1, std::polar(norm, ph(rng)));
    }
    const Mat g = gaussian(m, rng);
    return g * (norm / op_norm(g));
}

Mat random_contraction(int m, double radius_max, Distribution dist, Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = dist == Distribution::FixedRadius ? radius_max : radius_max * std::sqrt(u(rng));
    return random_with_norm(m, r, rng);
}

VerblunskySequence generate(const EnsembleSpec& spec) {
    if (spec.m < 1) throw Error(ErrorCode::DimensionMismatch, "m must be positive");
    if (!(spec.radius_max > 0.0 && spec.radius_max <= 1.0 - kContractionTol))
        throw Error(ErrorCode::NotContractive, "radius_max must lie in (0, 1 - 1e-8]");
    if (spec.k_max - spec.k_min < 2) throw Error(ErrorCode::WindowTooSmall, "window needs an interior site");
    Rng rng(spec.seed);
    std::vector<Mat> vals;
    vals.push_back(eye(spec.m));
    for (int k = spec.k_min + 1; k < spec.k_max; ++k)
        vals.push_back(random_contraction(spec.m, spec.radius_max, spec.distribution, rng));
    vals.push_back(eye(spec.m));
    return {spec.m, spec.k_min, std::move(vals)};
}

Distribution distribution_from_name(const std::string& name) {
    if (name == "uniform" || name == "uniform-disk") return Distribution::UniformDisk;
    if (name == "fixed" || name == "fixed-radius") return Distribution::FixedRadius;
    throw Error(ErrorCode::ParseError, "unknown distribution " + name);
}

}  // namespace cmv
