#include "cmv/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cmv {

AtomicMeasure::AtomicMeasure(int m, std::vector<Atom> atoms, Mat C) : m_(m), atoms_(std::move(atoms)), C_(std::move(C)) {
    if (C_.rows() != m || C_.cols() != m) throw Error(ErrorCode::DimensionMismatch, "C must be m x m");
    if ((C_ - C_.adjoint()).norm() > 1e-12 * std::max(1.0, C_.norm()))
        throw Error(ErrorCode::DimensionMismatch, "C must be Hermitian");
    for (const Atom& a : atoms_) {
        if (a.weight.rows() != m || a.weight.cols() != m) throw Error(ErrorCode::DimensionMismatch, "atom weight size");
        if (std::abs(std::abs(a.zeta) - 1.0) > 1e-12) throw Error(ErrorCode::DimensionMismatch, "atom off the circle");
        Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (a.weight + a.weight.adjoint()), Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -kPsdTol) throw Error(ErrorCode::DimensionMismatch, "atom weight not PSD");
    }
}

Mat AtomicMeasure::total_mass() const {
    Mat s = Mat::Zero(m_, m_);
    for (const Atom& a : atoms_) s += a.weight;
    return s;
}

Mat herglotz_eval(const AtomicMeasure& mu, cplx z) {
    const cplx i(0.0, 1.0);
    Mat f = i * mu.C();
    for (const Atom& a : mu.atoms()) {
        if (std::abs(a.zeta - z) < 1e-14) throw Error(ErrorCode::ZAtAtom, "z coincides with an atom");
        f += a.weight * ((a.zeta + z) / (a.zeta - z));
    }
    return f;
}

static double min_herm_eig(const Mat& f) {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (f + f.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

template <class F>
static ValidityReport validity(const std::vector<FunctionSample>& samples, double tol, F margin) {
    ValidityReport r;
    r.worst = samples.empty() ? 0.0 : margin(samples.front().F);
    for (const FunctionSample& s : samples) {
        const double v = margin(s.F);
        r.min_values.push_back(v);
        r.worst = std::min(r.worst, v);
    }
    r.valid = r.worst >= -tol;
    return r;
}

ValidityReport is_caratheodory(const std::vector<FunctionSample>& samples, double tol) {
    return validity(samples, tol, min_herm_eig);
}

ValidityReport is_schur(const std::vector<FunctionSample>& samples, double tol) {
    return validity(samples, tol, [](const Mat& f) { return 1.0 - op_norm(f); });
}

Mat cayley(const Mat& F) {
    const Mat id = eye(static_cast<int>(F.rows()));
    return (F - id) * checked_inverse(F + id, ErrorCode::SingularFactor, "F + I");
}

Mat inverse_cayley(const Mat& phi) {
    const Mat id = eye(static_cast<int>(phi.rows()));
    return checked_inverse(id - phi, ErrorCode::SingularFactor, "I - Phi") * (id + phi);
}

FunctionSample reflect(const FunctionSample& s) { return {1.0 / std::conj(s.z), -s.F.adjoint()}; }

std::vector<FunctionSample> reflect(const std::vector<FunctionSample>& inside) {
    std::vector<FunctionSample> out;
    out.reserve(inside.size());
    for (const FunctionSample& s : inside) out.push_back(reflect(s));
    return out;
}

cplx lebesgue_herglotz_quadrature(cplx z, int nodes) {
    cplx sum = 0.0;
    for (int j = 0; j < nodes; ++j) {
        const cplx zeta = std::polar(1.0, 2.0 * std::numbers::pi * j / nodes);
        sum += (zeta + z) / (zeta - z);
    }
    return sum / static_cast<double>(nodes);
}

AtomicMeasure lebesgue_atoms(int m, int nodes) {
    std::vector<Atom> atoms;
    atoms.reserve(static_cast<std::size_t>(nodes));
    for (int j = 0; j < nodes; ++j)
        atoms.push_back({std::polar(1.0, 2.0 * std::numbers::pi * j / nodes), eye(m) / static_cast<double>(nodes)});
    return {m, std::move(atoms), Mat::Zero(m, m)};
}

}  // namespace cmv
