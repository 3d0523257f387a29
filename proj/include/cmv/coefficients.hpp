#pragma once

#include <vector>

#include "cmv/types.hpp"

namespace cmv {

// Interior coefficients must satisfy ||alpha|| <= 1 - kContractionTol.
inline constexpr double kContractionTol = 1e-8;
inline constexpr double kUnitaryTol = 1e-10;

enum class CoefficientKind { Contractive, Unitary };

struct DefectPair {
    Mat rho;        // (I - a* a)^{1/2}
    Mat rho_tilde;  // (I - a a*)^{1/2}
};

struct SumDiffPair {
    Mat a;  // I + alpha
    Mat b;  // I - alpha
};

struct UnitaryFactorization {
    Mat sigma;
    Eigen::VectorXd beta;
    Mat tau;
    Mat reconstruct() const;
};

// Unique positive square root of a Hermitian positive semidefinite matrix.
Mat hermitian_sqrt(const Mat& h);
// Inverse of the positive square root; throws SingularFactor when h is not definite.
Mat hermitian_inv_sqrt(const Mat& h);

DefectPair defect_matrices(const Mat& alpha);
// Inverses of rho and rho_tilde, needed by the transfer matrices.
DefectPair inverse_defects(const Mat& alpha);
SumDiffPair sum_diff(const Mat& alpha);

Mat theta_block(const Mat& alpha, const DefectPair& d);
Mat theta_block(const Mat& alpha);
// Diagonal remnant diag(-g1, g2*) that replaces a Theta block at a cut.
Mat split_block(const Mat& gamma_left, const Mat& gamma_right);

UnitaryFactorization factorize_svd(const Mat& alpha);

// Eigenphases e^{i th}, th in (-pi, pi], are mapped to e^{i th/2}.
Mat principal_unitary_sqrt(const Mat& gamma);

struct Coefficient {
    Mat value;
    CoefficientKind kind = CoefficientKind::Contractive;
};

class VerblunskySequence {
public:
    VerblunskySequence() = default;
    // Boundary entries of `alphas` (first and last) must be unitary, the rest strict contractions.
    VerblunskySequence(int m, int k_min, std::vector<Mat> alphas);

    int m() const { return m_; }
    int k_min() const { return k_min_; }
    int k_max() const { return k_max_; }
    // Number of lattice sites carried by the assembled operator: k_min .. k_max-1.
    int sites() const { return k_max_ - k_min_; }
    bool contains(int k) const { return k >= k_min_ && k <= k_max_; }
    bool is_boundary(int k) const { return k == k_min_ || k == k_max_; }

    const Mat& alpha(int k) const;
    CoefficientKind kind(int k) const;
    const DefectPair& defects(int k) const;
    const DefectPair& inv_defects(int k) const;

    // Sub-window [a, b]; a and b must already hold unitary values or be overridden.
    VerblunskySequence restrict(int a, int b, const std::vector<std::pair<int, Mat>>& overrides = {}) const;
    VerblunskySequence with(int k, const Mat& value) const;

    const std::vector<Mat>& values() const { return alphas_; }

private:
    void validate_and_cache();

    int m_ = 0;
    int k_min_ = 0;
    int k_max_ = -1;
    std::vector<Mat> alphas_;
    std::vector<DefectPair> defects_;
    std::vector<DefectPair> inv_defects_;
};

// alpha'_k = sigma alpha_k tau*; boundary values stay unitary.
VerblunskySequence gauge_transform(const VerblunskySequence& seq, const Mat& sigma, const Mat& tau);

}  // namespace cmv
