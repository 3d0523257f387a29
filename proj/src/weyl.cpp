#include "cmv/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cmv {

namespace {

void require_off_circle(cplx z) {
    if (std::abs(std::abs(z) - 1.0) < 1e-10) throw Error(ErrorCode::ZOnUnitCircle, "z on the unit circle");
}

// Far edge of the window: site and matrix B with U = B V there.
struct Edge {
    int site;
    Mat B;
};

Edge far_edge(const VerblunskySequence& seq, cplx z, Side side) {
    if (side == Side::Plus) {
        const int k = seq.k_max() - 1;
        const Mat& g = seq.alpha(seq.k_max());
        return {k, parity(k) == 1 ? Mat(-g) : Mat(-z * g.adjoint())};
    }
    const int k = seq.k_min();
    const Mat& g = seq.alpha(seq.k_min());
    return {k, parity(k) == 1 ? Mat(z * g) : Mat(g.adjoint())};
}

}  // namespace

VerblunskySequence half_lattice_sequence(const VerblunskySequence& seq, int k0, const Mat& gamma, Side side) {
    if (side == Side::Plus) {
        if (k0 <= seq.k_min() || k0 + 4 > seq.k_max())
            throw Error(ErrorCode::SplitOutOfWindow, "right half-lattice at " + std::to_string(k0));
        return seq.restrict(k0, seq.k_max(), {{k0, gamma}});
    }
    if (k0 + 1 >= seq.k_max() || k0 + 1 - 4 < seq.k_min())
        throw Error(ErrorCode::SplitOutOfWindow, "left half-lattice at " + std::to_string(k0));
    return seq.restrict(seq.k_min(), k0 + 1, {{k0 + 1, gamma}});
}

Mat m_function(const VerblunskySequence& seq, int k0, const Mat& gamma, cplx z, Side side) {
    require_off_circle(z);
    const VerblunskySequence half = half_lattice_sequence(seq, k0, gamma, side);
    const CmvOperatorSet ops = assemble(half);
    const int m = seq.m();
    const auto n = ops.U.rows();
    const int row = (k0 - ops.offset) * m;
    Mat e = Mat::Zero(n, m);
    e.middleRows(row, m) = eye(m);
    const Mat x = checked_solve(ops.U - z * Mat::Identity(n, n), e, ErrorCode::SingularSolve, "half-lattice resolvent");
    // (U + z)(U - z)^{-1} = I + 2z (U - z)^{-1}
    const Mat g = x.middleRows(row, m);
    return sign_of(side) * (eye(m) + 2.0 * z * g);
}

Mat weyl_coefficient(const Mat& m, const Mat& gamma, int k0) {
    const Mat h = principal_unitary_sqrt(gamma);
    return parity(k0) == 0 ? Mat(h * m * h.adjoint()) : Mat(h.adjoint() * m * h);
}

Mat M_minus_from_m_minus(const Mat& mm, cplx z) {
    const Mat id = eye(static_cast<int>(mm.rows()));
    const Mat num = mm + id - z * (mm - id);
    const Mat den = mm + id + z * (mm - id);
    return num * checked_inverse(den, ErrorCode::SingularFactor, "M_minus_from_m_minus");
}

Mat m_minus_from_M_minus(const Mat& M, cplx z) {
    const Mat id = eye(static_cast<int>(M.rows()));
    const Mat num = z * (M + id) - (M - id);
    const Mat den = z * (M + id) + (M - id);
    return num * checked_inverse(den, ErrorCode::SingularFactor, "m_minus_from_M_minus");
}

Mat M_minus_from_shifted(const Mat& c_prev, const Mat& gamma, const Mat& alpha_k0, cplx z, int k0) {
    const ConnectionCoefficients c = connection(gamma, gamma, alpha_k0, z == cplx(0.0, 0.0) ? cplx(1.0, 0.0) : z, k0);
    return (c.D3 + c.D4 * c_prev) *
           checked_inverse(c.C3 + c.C4 * c_prev, ErrorCode::SingularFactor, "M_minus_from_shifted");
}

Mat M_minus_at_zero(const Mat& alpha, const Mat& gamma) {
    const Mat h = principal_unitary_sqrt(gamma);
    return h.adjoint() * (alpha + gamma) * checked_inverse(alpha - gamma, ErrorCode::SingularFactor, "alpha - gamma") * h;
}

Mat M_plus(const VerblunskySequence& seq, int k0, const Mat& gamma, cplx z) {
    return weyl_coefficient(m_function(seq, k0, gamma, z, Side::Plus), gamma, k0);
}

Mat M_minus(const VerblunskySequence& seq, int k0, const Mat& gamma, cplx z) {
    // Near z = 0 the direct map loses digits (m_- -> -I), so the shifted form is used there;
    // it involves m_-(z, k0-1) and is regular at the origin.
    if (std::abs(z) < 1e-3) {
        const Mat prev = weyl_coefficient(m_function(seq, k0 - 1, gamma, z, Side::Minus), gamma, k0 - 1);
        return M_minus_from_shifted(prev, gamma, seq.alpha(k0), z, k0);
    }
    return M_minus_from_m_minus(weyl_coefficient(m_function(seq, k0, gamma, z, Side::Minus), gamma, k0), z);
}

Mat M_function(const VerblunskySequence& seq, int k0, const Mat& gamma, cplx z, Side side) {
    return side == Side::Plus ? M_plus(seq, k0, gamma, z) : M_minus(seq, k0, gamma, z);
}

Mat M_boundary(const VerblunskySequence& seq, int k0, const Mat& gamma, cplx z, Side side) {
    require_off_circle(z);
    const SolutionFamily f = solution_family(seq, gamma, z, k0);
    const Edge e = far_edge(seq, z, side);
    const Pair& P = f.p_plus.at(e.site);
    const Pair& Q = f.q_plus.at(e.site);
    return checked_solve(P.u - e.B * P.v, -(Q.u - e.B * Q.v), ErrorCode::SingularSolve, "boundary matching");
}

Mat schur_from_M(const Mat& M) {
    const Mat id = eye(static_cast<int>(M.rows()));
    return (M - id) * checked_inverse(M + id, ErrorCode::SingularFactor, "M + I");
}

Mat M_from_schur(const Mat& phi) {
    const Mat id = eye(static_cast<int>(phi.rows()));
    return checked_inverse(id - phi, ErrorCode::SingularFactor, "I - Phi") * (id + phi);
}

Mat m_minus_from_schur(const Mat& phi, cplx z) {
    const Mat id = eye(static_cast<int>(phi.rows()));
    return checked_inverse(z * id + phi, ErrorCode::SingularFactor, "z I + Phi") * (z * id - phi);
}

Mat M_gamma_transform(const Mat& M1, const Mat& gamma1, const Mat& gamma2) {
    const Mat h1 = principal_unitary_sqrt(gamma1), h2 = principal_unitary_sqrt(gamma2);
    const Mat a = h2.adjoint() * h1;
    const Mat b = h2 * h1.adjoint();
    return ((a + b) * M1 + (a - b)) * checked_inverse((a - b) * M1 + (a + b), ErrorCode::SingularFactor, "M gamma law");
}

Mat schur_gamma_transform(const Mat& phi1, const Mat& gamma1, const Mat& gamma2) {
    const Mat h1 = principal_unitary_sqrt(gamma1), h2 = principal_unitary_sqrt(gamma2);
    return h2 * h1.adjoint() * phi1 * h1.adjoint() * h2;
}

Solution weyl_solution(const SolutionFamily& fam, const Mat& M) { return fam.q_plus.plus(fam.p_plus.times(M)); }

Solution weyl_solution(const VerblunskySequence& seq, int k0, const Mat& gamma, cplx z, Side side) {
    const SolutionFamily f = solution_family(seq, gamma, z, k0);
    return weyl_solution_from_edge(seq, f, M_function(seq, k0, gamma, z, side), side);
}

Solution edge_solution(const VerblunskySequence& seq, cplx z, int k0, const Pair& at_k0, Side side) {
    const Edge e = far_edge(seq, z, side);
    const Solution y = propagate(seq, z, e.site, {e.B, eye(seq.m())}, seq.k_min(), seq.k_max() - 1);
    return y.times(y.at(k0).stacked().colPivHouseholderQr().solve(at_k0.stacked()));
}

Solution weyl_solution_from_edge(const VerblunskySequence& seq, const SolutionFamily& fam, const Mat& M, Side side) {
    const Pair& q = fam.q_plus.at(fam.k0);
    const Pair& p = fam.p_plus.at(fam.k0);
    return edge_solution(seq, fam.z, fam.k0, {q.u + p.u * M, q.v + p.v * M}, side);
}

double boundary_residual(const VerblunskySequence& seq, const Solution& sol, cplx z, Side side) {
    const Edge e = far_edge(seq, z, side);
    const Pair& p = sol.at(e.site);
    return (p.u - e.B * p.v).norm() / std::max(1e-300, p.u.norm() + (e.B * p.v).norm());
}

Mat schur_parity_formula(const VerblunskySequence& seq, int k0, const Mat& gamma, cplx z, int k, Side side) {
    const Solution sol = weyl_solution(seq, k0, gamma, z, side);
    const Pair& p = sol.at(k);
    const Mat h = principal_unitary_sqrt(gamma);
    if (parity(k) == 1)
        return z * h * p.v * checked_inverse(p.u, ErrorCode::SingularSolutionValue, "U(k)") * h;
    return h * p.u * checked_inverse(p.v, ErrorCode::SingularSolutionValue, "V(k)") * h;
}

double hermitian_part_min_eig(const Mat& f) {
    const Mat h = 0.5 * (f + f.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

SpectralSample spectral_sample(const VerblunskySequence& seq, int k0, const Mat& gamma, cplx z, double tol) {
    SpectralSample s;
    s.z = z;
    s.m_plus = m_function(seq, k0, gamma, z, Side::Plus);
    s.m_minus = m_function(seq, k0, gamma, z, Side::Minus);
    s.M_plus = weyl_coefficient(s.m_plus, gamma, k0);
    s.M_minus = M_minus(seq, k0, gamma, z);
    s.Phi_plus = schur_from_M(s.M_plus);
    s.Phi_minus = schur_from_M(s.M_minus);
    const bool inside = std::abs(z) < 1.0;
    const double sgn = inside ? 1.0 : -1.0;
    s.caratheodory_plus = sgn * hermitian_part_min_eig(s.m_plus) >= -tol;
    s.anti_caratheodory_minus = sgn * hermitian_part_min_eig(-s.m_minus) >= -tol;
    const Eigen::VectorXd sp = Eigen::JacobiSVD<Mat>(s.Phi_plus).singularValues();
    const Eigen::VectorXd sm = Eigen::JacobiSVD<Mat>(s.Phi_minus).singularValues();
    s.schur_plus = inside ? sp(0) <= 1.0 + tol : sp(sp.size() - 1) >= 1.0 - tol;
    s.anti_schur_minus = inside ? sm(sm.size() - 1) >= 1.0 - tol : sm(0) <= 1.0 + tol;
    return s;
}

Mat gamma_from_phase(double t, int m) { return std::polar(1.0, t) * eye(m); }

}  // namespace cmv
