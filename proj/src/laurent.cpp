#include "cmv/laurent.hpp"

#include <algorithm>
#include <string>

namespace cmv {

Mat Pair::stacked() const {
    Mat s(u.rows() + v.rows(), u.cols());
    s << u, v;
    return s;
}

static void require_nonzero(cplx z) {
    if (z == cplx(0.0, 0.0)) throw Error(ErrorCode::ZeroZ, "transfer matrices need z != 0");
}

Mat transfer(const VerblunskySequence& seq, cplx z, int k) {
    require_nonzero(z);
    const Mat& a = seq.alpha(k);
    const DefectPair& inv = seq.inv_defects(k);
    const auto m = a.rows();
    Mat t(2 * m, 2 * m);
    if (parity(k) == 1)
        t << inv.rho_tilde * a, z * inv.rho_tilde, inv.rho / z, inv.rho * a.adjoint();
    else
        t << inv.rho * a.adjoint(), inv.rho, inv.rho_tilde, inv.rho_tilde * a;
    return t;
}

Mat transfer_inverse(const VerblunskySequence& seq, cplx z, int k) {
    require_nonzero(z);
    const Mat& a = seq.alpha(k);
    const DefectPair& inv = seq.inv_defects(k);
    const auto m = a.rows();
    Mat t(2 * m, 2 * m);
    if (parity(k) == 1)
        t << -inv.rho * a.adjoint(), z * inv.rho, inv.rho_tilde / z, -inv.rho_tilde * a;
    else
        t << -inv.rho_tilde * a, inv.rho_tilde, inv.rho, -inv.rho * a.adjoint();
    return t;
}

Seeds seed_family(const Mat& gamma, cplx z, int k0) {
    require_nonzero(z);
    const Mat h = principal_unitary_sqrt(gamma);
    const Mat hi = h.adjoint();
    if (parity(k0) == 1) return {{z * h, hi}, {z * h, -hi}, {h, -hi}, {h, hi}};
    return {{hi, h}, {-hi, h}, {-z * hi, h}, {z * hi, h}};
}

const Pair& Solution::at(int k) const {
    if (k < k_lo_ || k > k_hi()) throw Error(ErrorCode::PathLeavesWindow, "solution not stored at site " + std::to_string(k));
    return vals_[static_cast<std::size_t>(k - k_lo_)];
}

Solution Solution::times(const Mat& c) const {
    std::vector<Pair> v;
    v.reserve(vals_.size());
    for (const Pair& p : vals_) v.push_back({p.u * c, p.v * c});
    return {k_lo_, std::move(v)};
}

Solution Solution::plus(const Solution& o) const {
    if (o.k_lo_ != k_lo_ || o.vals_.size() != vals_.size()) throw Error(ErrorCode::DimensionMismatch, "solution ranges");
    std::vector<Pair> v;
    v.reserve(vals_.size());
    for (std::size_t i = 0; i < vals_.size(); ++i) v.push_back({vals_[i].u + o.vals_[i].u, vals_[i].v + o.vals_[i].v});
    return {k_lo_, std::move(v)};
}

Solution propagate(const VerblunskySequence& seq, cplx z, int k0, const Pair& seed, int k_lo, int k_hi) {
    if (k_lo > k0 || k_hi < k0) throw Error(ErrorCode::PathLeavesWindow, "seed site outside the requested range");
    // Forward steps read alpha_{k0+1..k_hi}; backward steps read alpha_{k_lo+1..k0}.
    if (k_hi > k0 && (k_hi >= seq.k_max() || k0 + 1 <= seq.k_min()))
        throw Error(ErrorCode::PathLeavesWindow, "forward path leaves the contractive interior");
    if (k_lo < k0 && (k_lo + 1 <= seq.k_min() || k0 >= seq.k_max()))
        throw Error(ErrorCode::PathLeavesWindow, "backward path leaves the contractive interior");
    const auto m = seed.u.rows();
    std::vector<Pair> vals(static_cast<std::size_t>(k_hi - k_lo + 1));
    vals[static_cast<std::size_t>(k0 - k_lo)] = seed;
    Mat s = seed.stacked();
    for (int k = k0 + 1; k <= k_hi; ++k) {
        s = transfer(seq, z, k) * s;
        vals[static_cast<std::size_t>(k - k_lo)] = {s.topRows(m), s.bottomRows(m)};
    }
    s = seed.stacked();
    for (int k = k0; k > k_lo; --k) {
        s = transfer_inverse(seq, z, k) * s;
        vals[static_cast<std::size_t>(k - 1 - k_lo)] = {s.topRows(m), s.bottomRows(m)};
    }
    return {k_lo, std::move(vals)};
}

Solution propagate(const VerblunskySequence& seq, cplx z, int k0, const Pair& seed) {
    return propagate(seq, z, k0, seed, seq.k_min(), seq.k_max() - 1);
}

double transfer_condition(const VerblunskySequence& seq, cplx z, int from, int to) {
    const int m = seq.m();
    Mat t = Mat::Identity(2 * m, 2 * m);
    for (int k = from + 1; k <= to; ++k) t = transfer(seq, z, k) * t;
    for (int k = from; k > to; --k) t = transfer_inverse(seq, z, k) * t;
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Mat>(t).singularValues();
    return sv(0) / sv(sv.size() - 1);
}

SolutionFamily solution_family(const VerblunskySequence& seq, const Mat& gamma, cplx z, int k0, int k_lo, int k_hi) {
    const Seeds s = seed_family(gamma, z, k0);
    return {z,
            k0,
            gamma,
            propagate(seq, z, k0, s.p_plus, k_lo, k_hi),
            propagate(seq, z, k0, s.q_plus, k_lo, k_hi),
            propagate(seq, z, k0, s.p_minus, k_lo, k_hi),
            propagate(seq, z, k0, s.q_minus, k_lo, k_hi)};
}

SolutionFamily solution_family(const VerblunskySequence& seq, const Mat& gamma, cplx z, int k0) {
    return solution_family(seq, gamma, z, k0, seq.k_min(), seq.k_max() - 1);
}

ConnectionCoefficients connection(const Mat& gamma1, const Mat& gamma2, const Mat& alpha, cplx z, int k0) {
    require_nonzero(z);
    const Mat h1 = principal_unitary_sqrt(gamma1), h1i = h1.adjoint();
    const Mat h2 = principal_unitary_sqrt(gamma2), h2i = h2.adjoint();
    const DefectPair inv = inverse_defects(alpha);
    ConnectionCoefficients c;
    c.C1 = 0.5 * (h1i * h2 + h1 * h2i);
    c.D1 = 0.5 * (h1i * h2 - h1 * h2i);
    const cplx e = parity(k0) == 1 ? 2.0 * z : cplx(2.0, 0.0);
    c.C2 = (h1i * h2 - z * h1 * h2i) / e;
    c.D2 = (h1i * h2 + z * h1 * h2i) / e;
    const Mat x = h1i * inv.rho_tilde * alpha * h2i;
    const Mat y = h1 * inv.rho * alpha.adjoint() * h2;
    const Mat a = h1i * inv.rho_tilde * h2;
    const Mat b = h1 * inv.rho * h2i;
    c.C3 = 0.5 * (x - y) + 0.5 * (a - b);
    c.D3 = 0.5 * (x + y) + 0.5 * (a + b);
    c.C4 = -0.5 * (x + y) + 0.5 * (a + b);
    c.D4 = -0.5 * (x - y) + 0.5 * (a - b);
    return c;
}

double ConnectionResiduals::max() const {
    return std::max({same_sign_q, same_sign_p, minus_from_plus_q, minus_from_plus_p, shifted_q, shifted_p});
}

namespace {

// || lhs - (A c1 + B c2) || relative to the size of the right-hand ingredients.
double combo_residual(const Solution& lhs, const Solution& a, const Mat& c1, const Solution& b, const Mat& c2, int k_lo,
                      int k_hi) {
    double worst = 0.0;
    for (int k = k_lo; k <= k_hi; ++k) {
        const Mat l = lhs.at(k).stacked();
        const Mat sa = a.at(k).stacked(), sb = b.at(k).stacked();
        const double scale = std::max(1e-300, sa.norm() * std::max(1.0, c1.norm()) + sb.norm() * std::max(1.0, c2.norm()));
        worst = std::max(worst, (l - sa * c1 - sb * c2).norm() / scale);
    }
    return worst;
}

}  // namespace

ConnectionResiduals connection_residuals(const VerblunskySequence& seq, const Mat& gamma1, const Mat& gamma2, cplx z,
                                         int k0, int k_lo, int k_hi) {
    const ConnectionCoefficients c = connection(gamma1, gamma2, seq.alpha(k0), z, k0);
    const SolutionFamily f1 = solution_family(seq, gamma1, z, k0, k_lo, k_hi);
    const SolutionFamily f2 = solution_family(seq, gamma2, z, k0, k_lo, k_hi);
    const SolutionFamily f2s = solution_family(seq, gamma2, z, k0 - 1, k_lo, k_hi);
    ConnectionResiduals r;
    r.same_sign_q = std::max(combo_residual(f2.q_plus, f1.q_plus, c.C1, f1.p_plus, c.D1, k_lo, k_hi),
                             combo_residual(f2.q_minus, f1.q_minus, c.C1, f1.p_minus, c.D1, k_lo, k_hi));
    r.same_sign_p = std::max(combo_residual(f2.p_plus, f1.q_plus, c.D1, f1.p_plus, c.C1, k_lo, k_hi),
                             combo_residual(f2.p_minus, f1.q_minus, c.D1, f1.p_minus, c.C1, k_lo, k_hi));
    r.minus_from_plus_q = combo_residual(f2.q_minus, f1.q_plus, c.C2, f1.p_plus, c.D2, k_lo, k_hi);
    r.minus_from_plus_p = combo_residual(f2.p_minus, f1.q_plus, c.D2, f1.p_plus, c.C2, k_lo, k_hi);
    r.shifted_q = combo_residual(f2s.q_minus, f1.q_plus, c.C3, f1.p_plus, c.D3, k_lo, k_hi);
    r.shifted_p = combo_residual(f2s.p_minus, f1.q_plus, c.C4, f1.p_plus, c.D4, k_lo, k_hi);
    return r;
}

double QuadraticResiduals::max() const { return std::max({pq, rs, ps, rq}); }

QuadraticResiduals quadratic_identities(const Solution& p, const Solution& q, const Solution& pb, const Solution& qb,
                                        int k) {
    const Pair& P = p.at(k);
    const Pair& Q = q.at(k);
    const Pair& Pb = pb.at(k);
    const Pair& Qb = qb.at(k);
    const auto m = static_cast<int>(P.u.rows());
    const double sg = parity(k) == 1 ? 1.0 : -1.0;  // (-1)^{k+1}
    QuadraticResiduals r;
    r.pq = (P.u * Qb.u.adjoint() + Q.u * Pb.u.adjoint() - 2.0 * sg * eye(m)).norm();
    r.rs = (P.v * Qb.v.adjoint() + Q.v * Pb.v.adjoint() + 2.0 * sg * eye(m)).norm();
    r.ps = (P.u * Qb.v.adjoint() + Q.u * Pb.v.adjoint()).norm();
    r.rq = (P.v * Qb.u.adjoint() + Q.v * Pb.u.adjoint()).norm();
    return r;
}

double ConjugationResiduals::max() const { return std::max({r_plus, s_plus, r_minus, s_minus}); }

ConjugationResiduals conjugation_symmetry(const SolutionFamily& f, const SolutionFamily& fb, int k) {
    if (f.p_plus.at(k).u.rows() != 1) throw Error(ErrorCode::MatrixCaseUnsupported, "conjugation_symmetry");
    const cplx z = f.z;
    const cplx e0 = parity(f.k0) == 1 ? z : cplx(1.0, 0.0);
    const cplx e1 = parity(f.k0) == 1 ? cplx(1.0, 0.0) : z;
    auto rel = [](cplx a, cplx b) { return std::abs(a - b) / std::max(1e-300, std::abs(a)); };
    auto s = [](const Mat& x) { return x(0, 0); };
    ConjugationResiduals r;
    r.r_plus = rel(s(f.p_plus.at(k).v), e0 * std::conj(s(fb.p_plus.at(k).u)));
    r.s_plus = rel(s(f.q_plus.at(k).v), -e0 * std::conj(s(fb.q_plus.at(k).u)));
    r.r_minus = rel(s(f.p_minus.at(k).v), -e1 * std::conj(s(fb.p_minus.at(k).u)));
    r.s_minus = rel(s(f.q_minus.at(k).v), e1 * std::conj(s(fb.q_minus.at(k).u)));
    return r;
}

}  // namespace cmv
