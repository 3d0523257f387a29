#include "cmv/decoupling.hpp"

#include <cmath>
#include <numbers>

namespace cmv {

Mat local_block(const Mat& alpha, const Mat& gamma1, const Mat& gamma2) {
    const Eigen::Index m = alpha.rows();
    const DefectPair d = is_unitary(alpha, kUnitaryTol) ? DefectPair{Mat::Zero(m, m), Mat::Zero(m, m)}
                                                       : defect_matrices(alpha);
    Mat b(2 * m, 2 * m);
    b << -alpha + gamma1, d.rho_tilde, d.rho, alpha.adjoint() - gamma2.adjoint();
    return b;
}

Mat local_block(const VerblunskySequence& seq, int k0, const Mat& gamma1, const Mat& gamma2) {
    if (k0 <= seq.k_min() || k0 >= seq.k_max()) throw Error(ErrorCode::SplitOutOfWindow, "local_block");
    return local_block(seq.alpha(k0), gamma1, gamma2);
}

// JacobiSVD rather than BDCSVD: Eigen 3.4.0's divide-and-conquer path returns NaN on some
// exactly rank-deficient complex differences U - U_split.
Eigen::VectorXd singular_values(const Mat& a) {
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Mat>(a).singularValues();
    if (!sv.allFinite()) throw Error(ErrorCode::SingularSolve, "SVD returned non-finite singular values");
    return sv;
}

int numerical_rank(const Mat& a, double rtol) {
    if (a.size() == 0) return 0;
    const Eigen::VectorXd sv = singular_values(a);
    if (sv(0) == 0.0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > rtol * sv(0)) ++r;
    return r;
}

static double wrap_2pi(double x) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(x, two_pi);
    if (r < 0) r += two_pi;
    if (r >= two_pi - 1e-15) r = 0.0;
    return r;
}

PhaseSolution phases_to_gammas(const Mat& alpha_k0, const std::vector<double>& s, const std::vector<double>& t) {
    const auto m = static_cast<std::size_t>(alpha_k0.rows());
    if (s.size() != m || t.size() != m) throw Error(ErrorCode::DimensionMismatch, "phase vectors");
    const UnitaryFactorization f = factorize_svd(alpha_k0);
    Vec th1(static_cast<Eigen::Index>(m)), th2(static_cast<Eigen::Index>(m));
    for (std::size_t j = 0; j < m; ++j) {
        th1(static_cast<Eigen::Index>(j)) = std::polar(1.0, t[j]);
        th2(static_cast<Eigen::Index>(j)) = std::polar(1.0, s[j]);
    }
    PhaseSolution p;
    p.s = s;
    p.t = t;
    p.gamma1 = f.sigma * th1.asDiagonal() * f.tau.adjoint();
    p.gamma2 = f.sigma * th2.asDiagonal() * f.tau.adjoint();
    return p;
}

PhaseSolution minimal_phases(const Mat& alpha_k0, const std::vector<double>& s) {
    if (!(op_norm(alpha_k0) <= 1.0 - kContractionTol)) throw Error(ErrorCode::NotContractive, "minimal_phases");
    const auto m = static_cast<std::size_t>(alpha_k0.rows());
    if (s.size() != m) throw Error(ErrorCode::DimensionMismatch, "s must have m entries");
    const UnitaryFactorization f = factorize_svd(alpha_k0);
    const cplx i(0.0, 1.0);
    std::vector<double> t(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double beta = f.beta(static_cast<Eigen::Index>(j));
        const cplx w = i * (beta * std::exp(-i * s[j] / 2.0) - std::exp(i * s[j] / 2.0));
        t[j] = wrap_2pi(2.0 * std::arg(w));
    }
    return phases_to_gammas(alpha_k0, s, t);
}

double scalar_minimal_t1(cplx alpha, double t2) {
    const cplx i(0.0, 1.0);
    return wrap_2pi(2.0 * std::arg(i * (alpha * std::exp(-i * t2 / 2.0) - std::exp(i * t2 / 2.0))));
}

cplx det_criterion(cplx alpha, double t1, double t2) {
    const cplx i(0.0, 1.0);
    return std::exp(i * t1) * std::conj(alpha) + std::exp(-i * t2) * alpha - std::exp(i * (t1 - t2)) - 1.0;
}

std::vector<cplx> default_z_samples() {
    std::vector<cplx> z;
    for (double r : {0.5, 2.0})
        for (int j = 0; j < 4; ++j) z.push_back(std::polar(r, 0.3 + j * std::numbers::pi / 2.0));
    return z;
}

DecouplingReport decoupling_report(const VerblunskySequence& seq, int k0, const Mat& gamma1, const Mat& gamma2,
                                   const std::vector<cplx>& z_samples, double rtol) {
    DecouplingReport rep;
    rep.local_block = local_block(seq, k0, gamma1, gamma2);
    rep.singular_values = singular_values(rep.local_block);
    const CmvOperatorSet full = assemble(seq);
    const CmvOperatorSet split = assemble_split(seq, {k0, gamma1, gamma2});
    rep.op_rank = numerical_rank(full.U - split.U, rtol);
    const auto n = full.U.rows();
    const Mat id = Mat::Identity(n, n);
    for (cplx z : z_samples) {
        if (std::abs(std::abs(z) - 1.0) < 1e-6) throw Error(ErrorCode::ZOnUnitCircle, "decoupling z sample");
        const Mat r1 = checked_inverse(full.U - z * id, ErrorCode::SingularSolve, "full resolvent", 1e-13);
        const Mat r2 = checked_inverse(split.U - z * id, ErrorCode::SingularSolve, "split resolvent", 1e-13);
        rep.resolvent_ranks.push_back({z, numerical_rank(r1 - r2, rtol)});
    }
    rep.minimal = rep.op_rank == seq.m();
    return rep;
}

}  // namespace cmv
