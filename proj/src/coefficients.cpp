#include "cmv/coefficients.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace cmv {

Mat UnitaryFactorization::reconstruct() const {
    return sigma * beta.cast<cplx>().asDiagonal() * tau.adjoint();
}

Mat hermitian_sqrt(const Mat& h) {
    Mat hs = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(hs);
    Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * w.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

Mat hermitian_inv_sqrt(const Mat& h) {
    Mat hs = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(hs);
    const Eigen::VectorXd& ev = es.eigenvalues();
    if (ev.size() && !(ev.minCoeff() > 0.0)) throw Error(ErrorCode::SingularFactor, "defect matrix not invertible");
    Eigen::VectorXd w = ev.cwiseSqrt().cwiseInverse();
    return es.eigenvectors() * w.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

static void require_square(const Mat& a, const char* what) {
    if (a.rows() != a.cols() || a.rows() == 0) throw Error(ErrorCode::DimensionMismatch, what);
}

static void require_contractive(const Mat& alpha) {
    double n = op_norm(alpha);
    if (!(n <= 1.0 - kContractionTol))
        throw Error(ErrorCode::NotContractive, "norm " + std::to_string(n));
}

DefectPair defect_matrices(const Mat& alpha) {
    require_square(alpha, "defect_matrices");
    require_contractive(alpha);
    const Mat id = eye(static_cast<int>(alpha.rows()));
    return {hermitian_sqrt(id - alpha.adjoint() * alpha), hermitian_sqrt(id - alpha * alpha.adjoint())};
}

DefectPair inverse_defects(const Mat& alpha) {
    require_square(alpha, "inverse_defects");
    require_contractive(alpha);
    const Mat id = eye(static_cast<int>(alpha.rows()));
    return {hermitian_inv_sqrt(id - alpha.adjoint() * alpha), hermitian_inv_sqrt(id - alpha * alpha.adjoint())};
}

SumDiffPair sum_diff(const Mat& alpha) {
    const Mat id = eye(static_cast<int>(alpha.rows()));
    return {id + alpha, id - alpha};
}

Mat theta_block(const Mat& alpha, const DefectPair& d) {
    const Eigen::Index m = alpha.rows();
    if (alpha.cols() != m || d.rho.rows() != m || d.rho_tilde.rows() != m || d.rho.cols() != m ||
        d.rho_tilde.cols() != m)
        throw Error(ErrorCode::DimensionMismatch, "theta_block");
    Mat t(2 * m, 2 * m);
    t << -alpha, d.rho_tilde, d.rho, alpha.adjoint();
    return t;
}

Mat theta_block(const Mat& alpha) {
    require_square(alpha, "theta_block");
    if (is_unitary(alpha, kUnitaryTol)) return split_block(alpha, alpha);
    return theta_block(alpha, defect_matrices(alpha));
}

Mat split_block(const Mat& gamma_left, const Mat& gamma_right) {
    const Eigen::Index m = gamma_left.rows();
    if (gamma_right.rows() != m) throw Error(ErrorCode::DimensionMismatch, "split_block");
    Mat t = Mat::Zero(2 * m, 2 * m);
    t.topLeftCorner(m, m) = -gamma_left;
    t.bottomRightCorner(m, m) = gamma_right.adjoint();
    return t;
}

UnitaryFactorization factorize_svd(const Mat& alpha) {
    require_square(alpha, "factorize_svd");
    Eigen::JacobiSVD<Mat> svd(alpha, Eigen::ComputeFullU | Eigen::ComputeFullV);
    UnitaryFactorization f{svd.matrixU(), svd.singularValues(), svd.matrixV()};
    // Fix the column phases so that repeated runs (and repeated singular values)
    // produce the same factors: first non-negligible entry of each left column real positive.
    for (Eigen::Index j = 0; j < f.sigma.cols(); ++j) {
        Eigen::Index i = 0;
        while (i + 1 < f.sigma.rows() && std::abs(f.sigma(i, j)) < 1e-12) ++i;
        cplx a = f.sigma(i, j);
        if (std::abs(a) == 0.0) continue;
        cplx ph = std::conj(a) / std::abs(a);
        f.sigma.col(j) *= ph;
        f.tau.col(j) *= ph;
    }
    return f;
}

Mat principal_unitary_sqrt(const Mat& gamma) {
    require_square(gamma, "principal_unitary_sqrt");
    if (!is_unitary(gamma, 1e-9)) throw Error(ErrorCode::NotUnitary, "principal_unitary_sqrt");
    Eigen::ComplexSchur<Mat> cs(gamma);
    const Mat& t = cs.matrixT();
    const Eigen::Index m = gamma.rows();
    Vec d(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        double th = std::arg(t(i, i));
        if (th <= -std::numbers::pi + 1e-14) th = std::numbers::pi;
        d(i) = std::polar(1.0, th / 2.0);
    }
    const Mat& z = cs.matrixU();
    return z * d.asDiagonal() * z.adjoint();
}

VerblunskySequence::VerblunskySequence(int m, int k_min, std::vector<Mat> alphas)
    : m_(m), k_min_(k_min), k_max_(k_min + static_cast<int>(alphas.size()) - 1), alphas_(std::move(alphas)) {
    validate_and_cache();
}

void VerblunskySequence::validate_and_cache() {
    if (m_ <= 0) throw Error(ErrorCode::DimensionMismatch, "block dimension must be positive");
    if (alphas_.size() < 2) throw Error(ErrorCode::WindowTooSmall, "need at least two boundary sites");
    defects_.assign(alphas_.size(), {});
    inv_defects_.assign(alphas_.size(), {});
    for (std::size_t i = 0; i < alphas_.size(); ++i) {
        const int k = k_min_ + static_cast<int>(i);
        const Mat& a = alphas_[i];
        if (a.rows() != m_ || a.cols() != m_)
            throw Error(ErrorCode::DimensionMismatch, "site " + std::to_string(k));
        if (!a.allFinite()) throw Error(ErrorCode::ParseError, "non-finite entry at site " + std::to_string(k));
        if (is_boundary(k)) {
            if (!is_unitary(a, kUnitaryTol))
                throw Error(ErrorCode::InvalidBoundary, "site " + std::to_string(k) + " is not unitary");
            defects_[i] = {Mat::Zero(m_, m_), Mat::Zero(m_, m_)};
            inv_defects_[i] = defects_[i];
        } else {
            try {
                defects_[i] = defect_matrices(a);
                inv_defects_[i] = inverse_defects(a);
            } catch (const Error& e) {
                throw Error(e.code(), "site " + std::to_string(k) + ": " + e.what());
            }
        }
    }
}

const Mat& VerblunskySequence::alpha(int k) const {
    if (!contains(k)) throw Error(ErrorCode::PathLeavesWindow, "site " + std::to_string(k) + " outside window");
    return alphas_[static_cast<std::size_t>(k - k_min_)];
}

CoefficientKind VerblunskySequence::kind(int k) const {
    return is_boundary(k) ? CoefficientKind::Unitary : CoefficientKind::Contractive;
}

const DefectPair& VerblunskySequence::defects(int k) const {
    if (!contains(k)) throw Error(ErrorCode::PathLeavesWindow, "site " + std::to_string(k) + " outside window");
    return defects_[static_cast<std::size_t>(k - k_min_)];
}

const DefectPair& VerblunskySequence::inv_defects(int k) const {
    if (!contains(k) || is_boundary(k))
        throw Error(ErrorCode::PathLeavesWindow, "no contractive coefficient at site " + std::to_string(k));
    return inv_defects_[static_cast<std::size_t>(k - k_min_)];
}

VerblunskySequence VerblunskySequence::restrict(int a, int b, const std::vector<std::pair<int, Mat>>& overrides) const {
    if (a < k_min_ || b > k_max_ || b <= a) throw Error(ErrorCode::SplitOutOfWindow, "restrict");
    std::vector<Mat> v(alphas_.begin() + (a - k_min_), alphas_.begin() + (b - k_min_) + 1);
    for (const auto& [k, val] : overrides) {
        if (k < a || k > b) throw Error(ErrorCode::SplitOutOfWindow, "override outside sub-window");
        v[static_cast<std::size_t>(k - a)] = val;
    }
    return VerblunskySequence(m_, a, std::move(v));
}

VerblunskySequence VerblunskySequence::with(int k, const Mat& value) const {
    return restrict(k_min_, k_max_, {{k, value}});
}

VerblunskySequence gauge_transform(const VerblunskySequence& seq, const Mat& sigma, const Mat& tau) {
    if (sigma.rows() != seq.m() || tau.rows() != seq.m()) throw Error(ErrorCode::DimensionMismatch, "gauge_transform");
    if (!is_unitary(sigma, 1e-9) || !is_unitary(tau, 1e-9)) throw Error(ErrorCode::NotUnitary, "gauge_transform");
    std::vector<Mat> v;
    v.reserve(seq.values().size());
    for (const Mat& a : seq.values()) v.push_back(sigma * a * tau.adjoint());
    return VerblunskySequence(seq.m(), seq.k_min(), std::move(v));
}

}  // namespace cmv
