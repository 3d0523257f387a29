#include "cmv/greens.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace cmv {

Branch branch_of(int k, int kp) { return (k < kp || (k == kp && parity(k) == 1)) ? Branch::UpperOdd : Branch::LowerEven; }

const char* branch_name(Branch b) { return b == Branch::UpperOdd ? "upper-odd" : "lower-even"; }

Mat wronskian(const Pair& a_bar, const Pair& b, int k) {
    const double s = parity(k) == 1 ? 0.5 : -0.5;
    return s * (a_bar.u.adjoint() * b.u - a_bar.v.adjoint() * b.v);
}

static void require_admissible(cplx z) {
    if (z == cplx(0.0, 0.0)) throw Error(ErrorCode::ZeroZ, "Green's formula needs z != 0");
    if (std::abs(std::abs(z) - 1.0) < 1e-10) throw Error(ErrorCode::ZOnUnitCircle, "Green's formula");
}

ResolventOracle::ResolventOracle(const CmvOperatorSet& ops, cplx z) : offset_(ops.offset), m_(ops.m), z_(z) {
    const auto n = ops.U.rows();
    inv_ = checked_inverse(ops.U - z * Mat::Identity(n, n), ErrorCode::SingularSolve, "dense resolvent", 1e-13);
}

Mat ResolventOracle::entry(int k, int kp) const {
    const int n = static_cast<int>(inv_.rows()) / m_;
    if (k < offset_ || kp < offset_ || k >= offset_ + n || kp >= offset_ + n)
        throw Error(ErrorCode::PathLeavesWindow, "resolvent entry outside the window");
    return inv_.block((k - offset_) * m_, (kp - offset_) * m_, m_, m_);
}

ResolventOracle full_oracle(const VerblunskySequence& seq, cplx z) { return {assemble(seq), z}; }

ResolventOracle half_oracle(const VerblunskySequence& seq, int k0, const Mat& gamma, cplx z, Side side) {
    return {assemble(half_lattice_sequence(seq, k0, gamma, side)), z};
}

HalfLatticeGreen::HalfLatticeGreen(const VerblunskySequence& seq, int k0, const Mat& gamma, cplx z, Side side)
    : side_(side), z_(z) {
    require_admissible(z);
    const cplx zb = 1.0 / std::conj(z);
    if (side == Side::Plus) {
        lo_ = k0;
        hi_ = seq.k_max() - 1;
    } else {
        lo_ = seq.k_min();
        hi_ = k0;
    }
    const SolutionFamily f = solution_family(seq, gamma, z, k0, lo_, hi_);
    const SolutionFamily fb = solution_family(seq, gamma, zb, k0, lo_, hi_);
    const Mat c = weyl_coefficient(m_function(seq, k0, gamma, z, side), gamma, k0);
    const Mat cb = weyl_coefficient(m_function(seq, k0, gamma, zb, side), gamma, k0);
    const Solution& p = side == Side::Plus ? f.p_plus : f.p_minus;
    const Solution& q = side == Side::Plus ? f.q_plus : f.q_minus;
    const Solution& pb = side == Side::Plus ? fb.p_plus : fb.p_minus;
    const Solution& qb = side == Side::Plus ? fb.q_plus : fb.q_minus;
    p_ = p;
    p_bar_ = pb;
    // Q + P c is recessive toward the far edge; build it from there (see edge_solution).
    auto hat = [&](const Solution& qq, const Solution& pp, const Mat& cc, cplx zz) {
        const Pair& a = qq.at(k0);
        const Pair& b = pp.at(k0);
        const Solution full = edge_solution(seq, zz, k0, {a.u + b.u * cc, a.v + b.v * cc}, side);
        std::vector<Pair> vals;
        for (int k = lo_; k <= hi_; ++k) vals.push_back(full.at(k));
        return Solution(lo_, std::move(vals));
    };
    hat_ = hat(q, p, c, z);
    hat_bar_ = hat(qb, pb, cb, zb);
}

GreensEntry HalfLatticeGreen::entry(int k, int kp) const {
    if (k < lo_ || k > hi_ || kp < lo_ || kp > hi_) throw Error(ErrorCode::PathLeavesWindow, "pair outside half-lattice");
    GreensEntry e{k, kp, Mat(), branch_of(k, kp)};
    const bool up = e.branch == Branch::UpperOdd;
    if (side_ == Side::Plus)
        e.value = up ? Mat(-p_.at(k).u * hat_bar_.at(kp).u.adjoint()) : Mat(hat_.at(k).u * p_bar_.at(kp).u.adjoint());
    else
        e.value = up ? Mat(-hat_.at(k).u * p_bar_.at(kp).u.adjoint()) : Mat(p_.at(k).u * hat_bar_.at(kp).u.adjoint());
    e.value /= 2.0 * z_;
    return e;
}

FullLatticeGreen::FullLatticeGreen(const VerblunskySequence& seq, int k0, const Mat& gamma, cplx z) : z_(z) {
    require_admissible(z);
    const cplx zb = 1.0 / std::conj(z);
    fam_ = solution_family(seq, gamma, z, k0);
    fam_bar_ = solution_family(seq, gamma, zb, k0);
    Mp_ = cmv::M_plus(seq, k0, gamma, z);
    Mm_ = cmv::M_minus(seq, k0, gamma, z);
    Mpb_ = cmv::M_plus(seq, k0, gamma, zb);
    Mmb_ = cmv::M_minus(seq, k0, gamma, zb);
    W_ = Mp_ - Mm_;
    W_inv_ = checked_inverse(W_, ErrorCode::SingularWronskian, "M+ - M-", 1e-12);
    up_ = weyl_solution_from_edge(seq, fam_, Mp_, Side::Plus);
    um_ = weyl_solution_from_edge(seq, fam_, Mm_, Side::Minus);
    upb_ = weyl_solution_from_edge(seq, fam_bar_, Mpb_, Side::Plus);
    umb_ = weyl_solution_from_edge(seq, fam_bar_, Mmb_, Side::Minus);
}

GreensEntry FullLatticeGreen::entry(int k, int kp) const {
    GreensEntry e{k, kp, Mat(), branch_of(k, kp)};
    if (e.branch == Branch::UpperOdd)
        e.value = um_.at(k).u * W_inv_ * upb_.at(kp).u.adjoint();
    else
        e.value = up_.at(k).u * W_inv_ * umb_.at(kp).u.adjoint();
    e.value /= 2.0 * z_;
    return e;
}

GreensEntry half_lattice_green(const VerblunskySequence& seq, int k0, const Mat& gamma, cplx z, int k, int kp,
                               Side side) {
    return HalfLatticeGreen(seq, k0, gamma, z, side).entry(k, kp);
}

GreensEntry full_lattice_green(const VerblunskySequence& seq, int k0, const Mat& gamma, cplx z, int k, int kp) {
    return FullLatticeGreen(seq, k0, gamma, z).entry(k, kp);
}

Mat full_lattice_green_at_zero(const VerblunskySequence& seq, int k0, const Mat& gamma, int k, int kp, double r, int n) {
    Mat sum = Mat::Zero(seq.m(), seq.m());
    for (int j = 0; j < n; ++j) {
        const cplx z = std::polar(r, 2.0 * std::numbers::pi * (j + 0.5) / n);
        sum += FullLatticeGreen(seq, k0, gamma, z).entry(k, kp).value;
    }
    return sum / static_cast<double>(n);
}

double wronskian_symmetry_check(const Mat& Mp, const Mat& Mm) {
    const Mat wi = checked_inverse(Mp - Mm, ErrorCode::SingularWronskian, "M+ - M-", 1e-12);
    return (Mp * wi * Mm - Mm * wi * Mp).norm();
}

double WronskianReport::max() const {
    return std::max({k_spread, equals_M_diff, pq_identity, symmetry, identity_u, identity_v});
}

WronskianReport wronskian_report(const FullLatticeGreen& g) {
    WronskianReport r;
    const int m = static_cast<int>(g.W().rows());
    const Mat target = g.M_minus() - g.M_plus();
    const Mat wi = g.W().inverse();
    const double nwi = wi.norm();
    // Each identity is a difference of products; floating point can only resolve it relative to
    // the size of those products, which grows geometrically away from k0.
    auto scale = [](const Pair& a, const Pair& b) {
        return std::max(1.0, 0.5 * (a.u.norm() * b.u.norm() + a.v.norm() * b.v.norm()));
    };
    const int k_lo = g.first_site();
    const Mat w0 = wronskian(g.U_plus_bar().at(k_lo), g.U_minus().at(k_lo), k_lo);
    const double s0 = scale(g.U_plus_bar().at(k_lo), g.U_minus().at(k_lo));
    for (int k = k_lo; k <= g.last_site(); ++k) {
        const Pair& up = g.U_plus().at(k);
        const Pair& um = g.U_minus().at(k);
        const Pair& upb = g.U_plus_bar().at(k);
        const Pair& umb = g.U_minus_bar().at(k);
        const Mat w = wronskian(upb, um, k);
        const double sw = scale(upb, um);
        r.k_spread = std::max(r.k_spread, (w - w0).norm() / (sw + s0));
        r.equals_M_diff = std::max(r.equals_M_diff, (w - target).norm() / sw);
        const Pair& pb = g.family_bar().p_plus.at(k);
        const Pair& q = g.family().q_plus.at(k);
        r.pq_identity = std::max(r.pq_identity, (wronskian(pb, q, k) - eye(m)).norm() / scale(pb, q));
        const double sg = parity(k) == 1 ? 2.0 : -2.0;
        const double su = std::max(1.0, nwi * (up.u.norm() * umb.u.norm() + um.u.norm() * upb.u.norm()));
        const double sv = std::max(1.0, nwi * (up.v.norm() * umb.u.norm() + um.v.norm() * upb.u.norm()));
        r.identity_u = std::max(
            r.identity_u, (up.u * wi * umb.u.adjoint() - um.u * wi * upb.u.adjoint() - sg * eye(m)).norm() / su);
        r.identity_v = std::max(r.identity_v, (up.v * wi * umb.u.adjoint() - um.v * wi * upb.u.adjoint()).norm() / sv);
    }
    r.symmetry = wronskian_symmetry_check(g.M_plus(), g.M_minus());
    return r;
}

const char* hat_name(HatChoice h) { return h == HatChoice::SignMatched ? "sign-matched" : "literal"; }

ScalarGreenInputs scalar_green_inputs(const VerblunskySequence& seq, int k0, double t, cplx z) {
    if (seq.m() != 1) throw Error(ErrorCode::MatrixCaseUnsupported, "scalar Green's forms");
    require_admissible(z);
    const cplx zb = 1.0 / std::conj(z);
    const Mat g = gamma_from_phase(t, 1);
    ScalarGreenInputs in{solution_family(seq, g, z, k0), solution_family(seq, g, zb, k0), 0, 0, 0, 0, 0, 0, 0, 0};
    in.m_plus = m_function(seq, k0, g, z, Side::Plus)(0, 0);
    in.m_minus = m_function(seq, k0, g, z, Side::Minus)(0, 0);
    in.m_plus_bar = m_function(seq, k0, g, zb, Side::Plus)(0, 0);
    in.m_minus_bar = m_function(seq, k0, g, zb, Side::Minus)(0, 0);
    in.M_plus = in.m_plus;
    in.M_minus = M_minus(seq, k0, g, z)(0, 0);
    in.M_plus_bar = in.m_plus_bar;
    in.M_minus_bar = M_minus(seq, k0, g, zb)(0, 0);
    return in;
}

namespace {

cplx s(const Mat& x) { return x(0, 0); }

// u- and v-parts of q + c p at site k.
cplx hat_u(const Solution& q, const Solution& p, cplx c, int k) { return s(q.at(k).u) + c * s(p.at(k).u); }
cplx hat_v(const Solution& q, const Solution& p, cplx c, int k) { return s(q.at(k).v) + c * s(p.at(k).v); }

const Solution& hat_q(const SolutionFamily& f, HatChoice h) { return h == HatChoice::SignMatched ? f.q_plus : f.q_minus; }
const Solution& hat_p(const SolutionFamily& f, HatChoice h) { return h == HatChoice::SignMatched ? f.p_plus : f.p_minus; }

cplx z_power(cplx z, int e) { return e == 0 ? cplx(1.0, 0.0) : 1.0 / z; }

}  // namespace

cplx scalar_green_half_plus(const ScalarGreenInputs& in, int k, int kp, HatChoice hat) {
    const cplx z = in.fam.z;
    const Solution& q = hat_q(in.fam, hat);
    const Solution& p = hat_p(in.fam, hat);
    const cplx pre = z_power(z, parity(in.fam.k0)) / (2.0 * z);
    if (branch_of(k, kp) == Branch::UpperOdd) return pre * s(in.fam.p_plus.at(k).u) * hat_v(q, p, in.m_plus, kp);
    return pre * hat_u(q, p, in.m_plus, k) * s(in.fam.p_plus.at(kp).v);
}

cplx scalar_green_half_plus_conj(const ScalarGreenInputs& in, int k, int kp, HatChoice hat) {
    const cplx z = in.fam.z;
    if (branch_of(k, kp) == Branch::UpperOdd) {
        const cplx ub = hat_u(hat_q(in.fam_bar, hat), hat_p(in.fam_bar, hat), in.m_plus_bar, kp);
        return -s(in.fam.p_plus.at(k).u) * std::conj(ub) / (2.0 * z);
    }
    const cplx u = hat_u(hat_q(in.fam, hat), hat_p(in.fam, hat), in.m_plus, k);
    return u * std::conj(s(in.fam_bar.p_plus.at(kp).u)) / (2.0 * z);
}

// Both readings of the hatted solution use the (-) family on the left side, so `hat` has no effect there.
cplx scalar_green_half_minus(const ScalarGreenInputs& in, int k, int kp, HatChoice) {
    const cplx z = in.fam.z;
    const Solution& q = in.fam.q_minus;
    const Solution& p = in.fam.p_minus;
    const cplx pre = z_power(z, parity(in.fam.k0 + 1)) / (2.0 * z);
    if (branch_of(k, kp) == Branch::UpperOdd) return pre * hat_u(q, p, in.m_minus, k) * s(p.at(kp).v);
    return pre * s(p.at(k).u) * hat_v(q, p, in.m_minus, kp);
}

cplx scalar_green_half_minus_conj(const ScalarGreenInputs& in, int k, int kp, HatChoice) {
    const cplx z = in.fam.z;
    const Solution& q = in.fam.q_minus;
    const Solution& p = in.fam.p_minus;
    if (branch_of(k, kp) == Branch::UpperOdd)
        return -hat_u(q, p, in.m_minus, k) * std::conj(s(in.fam_bar.p_minus.at(kp).u)) / (2.0 * z);
    const cplx ub = hat_u(in.fam_bar.q_minus, in.fam_bar.p_minus, in.m_minus_bar, kp);
    return s(p.at(k).u) * std::conj(ub) / (2.0 * z);
}

cplx scalar_green_full(const ScalarGreenInputs& in, int k, int kp) {
    const cplx z = in.fam.z;
    const Solution& q = in.fam.q_plus;
    const Solution& p = in.fam.p_plus;
    const cplx pre = -z_power(z, parity(in.fam.k0)) / (2.0 * z * (in.M_plus - in.M_minus));
    if (branch_of(k, kp) == Branch::UpperOdd) return pre * hat_u(q, p, in.M_minus, k) * hat_v(q, p, in.M_plus, kp);
    return pre * hat_u(q, p, in.M_plus, k) * hat_v(q, p, in.M_minus, kp);
}

cplx scalar_green_full_conj(const ScalarGreenInputs& in, int k, int kp) {
    const cplx z = in.fam.z;
    const Solution& q = in.fam.q_plus;
    const Solution& p = in.fam.p_plus;
    const Solution& qb = in.fam_bar.q_plus;
    const Solution& pb = in.fam_bar.p_plus;
    const cplx den = 2.0 * z * (in.M_plus - in.M_minus);
    if (branch_of(k, kp) == Branch::UpperOdd)
        return hat_u(q, p, in.M_minus, k) * std::conj(hat_u(qb, pb, in.M_plus_bar, kp)) / den;
    return hat_u(q, p, in.M_plus, k) * std::conj(hat_u(qb, pb, in.M_minus_bar, kp)) / den;
}

HatSelection select_scalar_hat(const VerblunskySequence& seq, int k0, double t, cplx z, int reach) {
    const ScalarGreenInputs in = scalar_green_inputs(seq, k0, t, z);
    const ResolventOracle oracle = half_oracle(seq, k0, gamma_from_phase(t, 1), z, Side::Plus);
    const int hi = std::min(k0 + reach, seq.k_max() - 1);
    auto error = [&](HatChoice h) {
        double worst = 0.0;
        for (int k = k0; k <= hi; ++k)
            for (int kp = k0; kp <= hi; ++kp) {
                const cplx ref = oracle.entry(k, kp)(0, 0);
                const double scale = std::max(std::abs(ref), 1e-300);
                worst = std::max({worst, std::abs(scalar_green_half_plus(in, k, kp, h) - ref) / scale,
                                  std::abs(scalar_green_half_plus_conj(in, k, kp, h) - ref) / scale});
            }
        return worst;
    };
    HatSelection sel;
    sel.error_sign_matched = error(HatChoice::SignMatched);
    sel.error_literal = error(HatChoice::Literal);
    sel.chosen = sel.error_literal < sel.error_sign_matched ? HatChoice::Literal : HatChoice::SignMatched;
    std::ostringstream os;
    os << "hatted solution: kept " << hat_name(sel.chosen) << " (rel. error "
       << std::min(sel.error_sign_matched, sel.error_literal) << "), rejected "
       << hat_name(sel.chosen == HatChoice::Literal ? HatChoice::SignMatched : HatChoice::Literal) << " (rel. error "
       << std::max(sel.error_sign_matched, sel.error_literal) << ")";
    sel.note = os.str();
    return sel;
}

}  // namespace cmv
