// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "cmv/analytic.hpp"
#include "cmv/decoupling.hpp"
#include "cmv/ensemble.hpp"
#include "cmv/greens.hpp"

using namespace cmv;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Tracks the worst observed value of one quantity against its bound.
struct Bound {
    std::string label;
    double limit;
    bool upper = true;  // value <= limit, otherwise value >= limit
    double worst;
    explicit Bound(std::string l, double lim, bool up = true)
        : label(std::move(l)), limit(lim), upper(up), worst(up ? 0.0 : INFINITY) {}
    void see(double v) { worst = upper ? std::max(worst, std::isnan(v) ? INFINITY : v) : std::min(worst, v); }
    bool ok() const { return upper ? worst <= limit : worst >= limit; }
};

struct Counter {
    std::string label;
    int bad = 0, total = 0;
    void see(bool good) {
        ++total;
        bad += !good;
    }
};

Outcome summarize(const std::vector<Bound>& bounds, const std::vector<Counter>& counters) {
    Outcome o;
    char buf[160];
    for (const Bound& b : bounds) {
        o.pass = o.pass && b.ok();
        std::snprintf(buf, sizeof buf, "%s%s %.2e (%s %.0e)", o.detail.empty() ? "" : "; ", b.label.c_str(), b.worst,
                      b.upper ? "<=" : ">=", b.limit);
        o.detail += buf;
    }
    for (const Counter& c : counters) {
        o.pass = o.pass && c.bad == 0;
        std::snprintf(buf, sizeof buf, "%s%s %d/%d", o.detail.empty() ? "" : "; ", c.label.c_str(), c.total - c.bad,
                      c.total);
        o.detail += buf;
    }
    return o;
}

VerblunskySequence sample_sequence(int m, int k_min, int k_max, std::uint64_t seed, double radius = 0.8) {
    return generate({m, k_min, k_max, seed, radius, Distribution::UniformDisk});
}

// Dense LU resolvent of an assembled window, indexed by lattice sites.
struct DenseResolvent {
    Mat inv;
    int offset, m;
    DenseResolvent(const CmvOperatorSet& ops, cplx z) : offset(ops.offset), m(ops.m) {
        const auto n = ops.U.rows();
        inv = (ops.U - z * Mat::Identity(n, n)).partialPivLu().inverse();
    }
    Mat at(int k, int kp) const { return inv.block((k - offset) * m, (kp - offset) * m, m, m); }
};

double rel(const Mat& a, const Mat& ref) { return (a - ref).norm() / std::max(1.0, ref.norm()); }

double herm_min(const Mat& f) {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (f + f.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

std::vector<cplx> disk_grid() {
    std::vector<cplx> g;
    for (int i = 1; i <= 5; ++i)
        for (int j = 0; j < 8; ++j) g.push_back(std::polar(0.9 * i / 5.0, 2 * kPi * (j + 0.3) / 8.0));
    return g;
}

// Criterion 1.
Outcome unitarity_and_structure(Rng& rng) {
    Bound unit("||U*U-I||", 1e-10), fact("||U-VW||", 1e-12), diag("scalar diagonal", 1e-12);
    Counter band{"band zeros exact"};
    for (int i = 0; i < 50; ++i) {
        const int m = 1 + i % 3;
        const int half = 10 + static_cast<int>(rng() % 30);
        const VerblunskySequence s = sample_sequence(m, -half, half, rng(), 0.95);
        const CmvOperatorSet ops = assemble(s);
        const auto n = ops.U.rows();
        unit.see((ops.U.adjoint() * ops.U - Mat::Identity(n, n)).norm());
        fact.see((ops.U - ops.V * ops.W).norm());
        bool zeros = true;
        for (Eigen::Index r = 0; r < n; ++r)
            for (Eigen::Index c = 0; c < n; ++c)
                if (std::abs(r / m - c / m) > 2 && ops.U(r, c) != cplx(0.0)) zeros = false;
        band.see(zeros);
        if (m == 1)
            for (int k = s.k_min(); k < s.k_max(); ++k)
                diag.see(std::abs(ops.U(k - s.k_min(), k - s.k_min()) + std::conj(s.alpha(k)(0, 0)) * s.alpha(k + 1)(0, 0)));
    }
    return summarize({unit, fact, diag}, {band});
}

struct ScalarSample {
    VerblunskySequence seq;
    int k0;
    cplx alpha;
    double t1, t2;
};

std::vector<ScalarSample> scalar_samples(Rng& rng) {
    std::vector<ScalarSample> out;
    std::uniform_real_distribution<double> phase(0.0, 2 * kPi);
    std::uniform_int_distribution<int> site(-6, 6);
    for (int i = 0; i < 50; ++i) {
        ScalarSample s{sample_sequence(1, -12, 12, rng(), 0.9), site(rng), 0.0, 0.0, phase(rng)};
        s.alpha = s.seq.alpha(s.k0)(0, 0);
        s.t1 = scalar_minimal_t1(s.alpha, s.t2);
        out.push_back(std::move(s));
    }
    return out;
}

Mat ph(double t) { return Mat::Constant(1, 1, std::polar(1.0, t)); }

// Criterion 2.
Outcome scalar_decoupling(const std::vector<ScalarSample>& samples) {
    Counter minimal{"minimal rank 1"}, resolvent{"resolvent rank 1"}, perturbed{"perturbed rank 2"},
        single{"single-gamma rank 2"};
    const std::vector<cplx> zs = default_z_samples();
    for (const ScalarSample& s : samples) {
        const DecouplingReport r = decoupling_report(s.seq, s.k0, ph(s.t1), ph(s.t2), zs);
        minimal.see(r.op_rank == 1);
        for (const ResolventRank& rr : r.resolvent_ranks) resolvent.see(rr.rank == 1);
        perturbed.see(decoupling_report(s.seq, s.k0, ph(s.t1 + 0.1), ph(s.t2), {}).op_rank == 2);
        single.see(decoupling_report(s.seq, s.k0, ph(s.t2), ph(s.t2), {}).op_rank == 2);
    }
    return summarize({}, {minimal, resolvent, perturbed, single});
}

// Criterion 3.
Outcome matrix_decoupling(Rng& rng) {
    Counter minimal{"minimal rank m"}, resolvent{"resolvent rank m"}, perturbed{"perturbed rank m+1"},
        identity{"gamma=I rank > m"};
    std::uniform_real_distribution<double> phase(0.0, 2 * kPi);
    const std::vector<cplx> zs = default_z_samples();
    for (int i = 0; i < 30; ++i) {
        const int m = 2 + i % 2;
        const VerblunskySequence s = sample_sequence(m, -10, 10, rng(), 0.9);
        const int k0 = -3 + static_cast<int>(rng() % 7);
        std::vector<double> sv(static_cast<std::size_t>(m));
        for (double& x : sv) x = phase(rng);
        const PhaseSolution p = minimal_phases(s.alpha(k0), sv);
        const DecouplingReport r = decoupling_report(s, k0, p.gamma1, p.gamma2, zs);
        minimal.see(r.op_rank == m);
        for (const ResolventRank& rr : r.resolvent_ranks) resolvent.see(rr.rank == m);
        for (int j = 0; j < m; ++j) {
            std::vector<double> t = p.t;
            t[static_cast<std::size_t>(j)] += 0.1;
            const PhaseSolution q = phases_to_gammas(s.alpha(k0), sv, t);
            perturbed.see(decoupling_report(s, k0, q.gamma1, q.gamma2, {}).op_rank == m + 1);
        }
        identity.see(decoupling_report(s, k0, eye(m), eye(m), {}).op_rank > m);
    }
    return summarize({}, {minimal, resolvent, perturbed, identity});
}

// Criterion 4.
Outcome determinant(const std::vector<ScalarSample>& samples) {
    Bound at_min("|det| at minimal", 1e-12), away("|det| 0.1 away", 0.01, false);
    for (const ScalarSample& s : samples) {
        at_min.see(std::abs(det_criterion(s.alpha, s.t1, s.t2)));
        for (double d : {-0.1, 0.1}) {
            away.see(std::abs(det_criterion(s.alpha, s.t1 + d, s.t2)));
            away.see(std::abs(det_criterion(s.alpha, s.t1, s.t2 + d)));
        }
    }
    return summarize({at_min, away}, {});
}

// Criterion 5.
Outcome connection_identities(Rng& rng) {
    Bound res("relative residual", 1e-9);
    const std::vector<cplx> zs{{0.5, 0.2}, {-0.3, 0.6}, {1.5, -0.8}, {0.2, -0.9}, {-2.0, 1.0}};
    for (int i = 0; i < 20; ++i) {
        const int m = 1 + i % 2;
        const VerblunskySequence s = sample_sequence(m, -12, 12, rng());
        const Mat g1 = random_unitary(m, rng), g2 = random_unitary(m, rng);
        const int k0 = -3 + static_cast<int>(rng() % 7);
        for (cplx z : zs) res.see(connection_residuals(s, g1, g2, z, k0, k0 - 6, k0 + 6).max());
    }
    return summarize({res}, {});
}

// Criterion 6.
Outcome quadratic(Rng& rng) {
    Bound q("quadratic (rel.)", 1e-9), c("scalar conjugation", 1e-10);
    for (int i = 0; i < 20; ++i) {
        const int m = 1 + i % 2;
        const VerblunskySequence s = sample_sequence(m, -15, 15, rng());
        const Mat g = random_unitary(m, rng);
        const int k0 = static_cast<int>(rng() % 2);
        const cplx z = std::polar(0.6, 0.4 * i), zb = 1.0 / std::conj(z);
        const SolutionFamily a = solution_family(s, g, z, k0), b = solution_family(s, g, zb, k0);
        for (int k = s.k_min(); k < s.k_max(); ++k) {
            const double sg = parity(k) == 1 ? 1.0 : -1.0;
            for (int pm = 0; pm < 2; ++pm) {
                const Pair& P = (pm ? a.p_minus : a.p_plus).at(k);
                const Pair& Q = (pm ? a.q_minus : a.q_plus).at(k);
                const Pair& Pb = (pm ? b.p_minus : b.p_plus).at(k);
                const Pair& Qb = (pm ? b.q_minus : b.q_plus).at(k);
                const double scale = std::max(1.0, P.stacked().norm() * Qb.stacked().norm() + Q.stacked().norm() * Pb.stacked().norm());
                const Mat id = eye(m);
                q.see((P.u * Qb.u.adjoint() + Q.u * Pb.u.adjoint() - 2.0 * sg * id).norm() / scale);
                q.see((P.v * Qb.v.adjoint() + Q.v * Pb.v.adjoint() + 2.0 * sg * id).norm() / scale);
                q.see((P.u * Qb.v.adjoint() + Q.u * Pb.v.adjoint()).norm() / scale);
                q.see((P.v * Qb.u.adjoint() + Q.v * Pb.u.adjoint()).norm() / scale);
            }
            if (m == 1) c.see(conjugation_symmetry(a, b, k).max());
        }
    }
    return summarize({q, c}, {});
}

std::vector<std::pair<int, int>> pairs_in(int lo, int hi, int n, Rng& rng) {
    std::uniform_int_distribution<int> d(lo, hi);
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n; ++i) out.emplace_back(d(rng), d(rng));
    return out;
}

// Criterion 7.
Outcome greens(Rng& rng) {
    Bound half("half-lattice", 1e-8), scalar("scalar forms", 1e-8), full("full-lattice", 1e-8), zero("z->0", 1e-6);
    const std::vector<double> radii{0.5, 2.0};
    for (int run = 0; run < 6; ++run) {
        const int m = 1 + run % 3;
        const VerblunskySequence s = sample_sequence(m, -25, 25, rng());
        const Mat g = random_unitary(m, rng);
        const int k0 = -2 + static_cast<int>(rng() % 5);
        for (double r : radii) {
            const cplx z = std::polar(r, 0.7 + run);
            for (Side side : {Side::Plus, Side::Minus}) {
                const HalfLatticeGreen h(s, k0, g, z, side);
                const DenseResolvent d(assemble(half_lattice_sequence(s, k0, g, side)), z);
                for (auto [k, kp] : pairs_in(h.first_site(), h.last_site(), 20, rng)) half.see(rel(h.entry(k, kp).value, d.at(k, kp)));
            }
            const FullLatticeGreen fg(s, k0, g, z);
            const DenseResolvent d(assemble(s), z);
            for (auto [k, kp] : pairs_in(s.k_min(), s.k_max() - 1, 20, rng)) full.see(rel(fg.entry(k, kp).value, d.at(k, kp)));

            if (m != 1) continue;
            const double t = std::arg(g(0, 0));
            const ScalarGreenInputs in = scalar_green_inputs(s, k0, t, z);
            const DenseResolvent dp(assemble(half_lattice_sequence(s, k0, g, Side::Plus)), z);
            const DenseResolvent dm(assemble(half_lattice_sequence(s, k0, g, Side::Minus)), z);
            const HatChoice hat = select_scalar_hat(s, k0, t, z).chosen;
            auto see = [&](cplx v, const Mat& ref) { scalar.see(std::abs(v - ref(0, 0)) / std::max(1.0, std::abs(ref(0, 0)))); };
            for (auto [k, kp] : pairs_in(k0, k0 + 6, 20, rng)) {
                see(scalar_green_half_plus(in, k, kp, hat), dp.at(k, kp));
                see(scalar_green_half_plus_conj(in, k, kp, hat), dp.at(k, kp));
            }
            for (auto [k, kp] : pairs_in(k0 - 6, k0, 20, rng)) {
                see(scalar_green_half_minus(in, k, kp, hat), dm.at(k, kp));
                see(scalar_green_half_minus_conj(in, k, kp, hat), dm.at(k, kp));
            }
            for (auto [k, kp] : pairs_in(k0 - 6, k0 + 6, 20, rng)) {
                see(scalar_green_full(in, k, kp), d.at(k, kp));
                see(scalar_green_full_conj(in, k, kp), d.at(k, kp));
            }
        }
        // At z = 0 the resolvent is U^{-1}, obtained here by a dense LU solve.
        const DenseResolvent d0(assemble(s), 0.0);
        for (auto [k, kp] : pairs_in(k0 - 8, k0 + 8, 5, rng)) zero.see(rel(full_lattice_green_at_zero(s, k0, g, k, kp), d0.at(k, kp)));
    }
    return summarize({half, scalar, full, zero}, {});
}

// Criterion 8.
Outcome weyl(Rng& rng) {
    Bound literal("M+ = m+ (scalar, central gamma)", 1e-10), matched("M+ = boundary-matched (general gamma)", 1e-10),
        trip("M- <-> m- round trip", 1e-12), at0("M-(0)", 1e-10), cara("min Re eig of +-m", -1e-10, false),
        schur("||Phi+||", 1.0 + 1e-10), tind("t-independence", 1e-10);
    const std::vector<cplx> grid = disk_grid();
    for (int i = 0; i < 6; ++i) {
        const int m = 1 + i % 3;
        const VerblunskySequence s = sample_sequence(m, -40, 40, rng(), 0.85);
        const Mat g = random_unitary(m, rng);
        const Mat gc = gamma_from_phase(0.3 + i, m);
        const int k0 = i % 2;
        for (std::size_t j = 0; j < grid.size(); j += 3) {
            const cplx z = grid[j];
            const Mat mp_c = m_function(s, k0, gc, z, Side::Plus);
            literal.see(rel(M_plus(s, k0, gc, z), mp_c));
            if (m == 1) literal.see(rel(M_plus(s, k0, g, z), m_function(s, k0, g, z, Side::Plus)));
            matched.see(rel(M_boundary(s, k0, g, z, Side::Plus), weyl_coefficient(m_function(s, k0, g, z, Side::Plus), g, k0)));
            const Mat Mm = M_minus(s, k0, g, z);
            trip.see(rel(M_minus_from_m_minus(m_minus_from_M_minus(Mm, z), z), Mm));
        }
        at0.see(rel(M_minus(s, k0, g, 0.0), M_minus_at_zero(s.alpha(k0), g)));
        for (cplx z : grid) {
            cara.see(herm_min(m_function(s, k0, g, z, Side::Plus)));
            cara.see(herm_min(-m_function(s, k0, g, z, Side::Minus)));
            schur.see(op_norm(schur_from_M(M_plus(s, k0, g, z))));
        }
    }
    // The scalar closed form at alpha_{k0} = 0.4, gamma = 1 is -7/3.
    const VerblunskySequence s04 = sample_sequence(1, -30, 30, rng()).with(1, Mat::Constant(1, 1, 0.4));
    at0.see(std::abs(M_minus(s04, 1, eye(1), 0.0)(0, 0) + 7.0 / 3.0));
    for (int i = 0; i < 4; ++i) {
        const VerblunskySequence s = sample_sequence(1, -40, 40, rng());
        for (cplx z : {cplx(0.2, 0.3), cplx(-0.5, 0.1), cplx(1.4, 1.1)}) {
            const cplx ref = schur_from_M(M_plus(s, i % 2, gamma_from_phase(0.0, 1), z))(0, 0);
            for (double t : {kPi / 3, kPi}) {
                const cplx v = std::polar(1.0, -t) * schur_from_M(M_plus(s, i % 2, gamma_from_phase(t, 1), z))(0, 0);
                tind.see(std::abs(v - ref));
            }
        }
    }
    return summarize({literal, matched, trip, at0, cara, schur, tind}, {});
}

// Criterion 9.
Outcome wronskian(Rng& rng) {
    Bound spread("k-independence", 1e-9), mdiff("W = M+ - M-", 1e-9), sym("symmetry", 1e-9), ids("identities", 1e-9);
    for (int i = 0; i < 8; ++i) {
        const int m = 1 + i % 3;
        const VerblunskySequence s = sample_sequence(m, -25, 25, rng(), 0.9);
        const Mat g = random_unitary(m, rng);
        for (double r : {0.5, 2.0}) {
            const WronskianReport w = wronskian_report(FullLatticeGreen(s, i % 2, g, std::polar(r, 0.3 * i + 0.2)));
            spread.see(w.k_spread);
            mdiff.see(w.equals_M_diff);
            sym.see(w.symmetry);
            ids.see(std::max({w.pq_identity, w.identity_u, w.identity_v}));
        }
    }
    return summarize({spread, mdiff, sym, ids}, {});
}

// Block-diagonal site gauge built here, independently of the library helper.
Mat gauge_matrix(int first, int sites, const Mat& on_odd, const Mat& on_even) {
    const auto m = on_odd.rows();
    Mat a = Mat::Zero(sites * m, sites * m);
    for (int i = 0; i < sites; ++i) a.block(i * m, i * m, m, m) = parity(first + i) == 1 ? on_odd : on_even;
    return a;
}

// Criterion 10.
Outcome gauge(Rng& rng) {
    Bound scalar("scalar U' = A U A*", 1e-10), full("matrix U', V', W'", 1e-10), split("split to gamma = I", 1e-10);
    for (int i = 0; i < 10; ++i) {
        const int m = 1 + i % 3;
        const VerblunskySequence s = sample_sequence(m, -15, 15, rng());
        const Mat sg = random_unitary(m, rng), tu = random_unitary(m, rng);
        const CmvOperatorSet a = assemble(s), b = assemble(gauge_transform(s, sg, tu));
        const Mat A = gauge_matrix(a.offset, a.sites(), sg, tu), At = gauge_matrix(a.offset, a.sites(), tu, sg);
        Bound& target = m == 1 ? scalar : full;
        target.see((A * a.U * A.adjoint() - b.U).norm());
        if (m > 1) {
            full.see((A * a.V * At.adjoint() - b.V).norm());
            full.see((At * a.W * A.adjoint() - b.W).norm());
        }
        const Mat g = random_unitary(m, rng);
        const Mat h = principal_unitary_sqrt(g);
        const int k0 = -2 + i % 5;
        const CmvOperatorSet c = assemble_split(s, {k0, g, g});
        const CmvOperatorSet d = assemble_split(gauge_transform(s, h.adjoint(), h), {k0, eye(m), eye(m)});
        const Mat H = gauge_matrix(c.offset, c.sites(), h.adjoint(), h);
        split.see((H * c.U * H.adjoint() - d.U).norm());
    }
    return summarize({scalar, full, split}, {});
}

// Criterion 11.
Outcome appendix(Rng& rng) {
    Bound trip("Cayley round trips", 1e-12), quad("quadrature", 1e-10), refl("reflection", 1e-9);
    for (int i = 0; i < 30; ++i) {
        const int m = 1 + i % 3;
        const Mat phi = random_with_norm(m, 0.95, rng);
        trip.see((cayley(inverse_cayley(phi)) - phi).norm());
        const Mat F = inverse_cayley(random_with_norm(m, 0.6, rng));
        trip.see(rel(inverse_cayley(cayley(F)), F));
    }
    quad.see(std::abs(lebesgue_herglotz_quadrature(cplx(0.3, 0.2), 2048) - 1.0));
    const VerblunskySequence s = sample_sequence(2, -30, 30, rng());
    const Mat g = random_unitary(2, rng);
    std::vector<FunctionSample> plus, minus;
    for (int j = 0; j < 12; ++j) {
        const cplx z = std::polar(0.25 + 0.05 * j, 0.5 * j + 0.1);
        plus.push_back({z, m_function(s, 0, g, z, Side::Plus)});
        minus.push_back({z, m_function(s, 0, g, z, Side::Minus)});
    }
    for (const FunctionSample& o : reflect(plus)) refl.see(rel(o.F, m_function(s, 0, g, o.z, Side::Plus)));
    for (const FunctionSample& o : reflect(minus)) refl.see(rel(o.F, m_function(s, 0, g, o.z, Side::Minus)));
    return summarize({trip, quad, refl}, {});
}

// Criterion 12.
Outcome free_case() {
    Bound err("|m+(0.3) - Lebesgue value|", 1e-3);
    std::vector<Mat> v(69, Mat::Zero(1, 1));
    v.front() = eye(1);
    v.back() = eye(1);
    const VerblunskySequence f(1, -4, std::move(v));  // the right half-lattice at 0 keeps 64 sites
    const cplx lebesgue = lebesgue_herglotz_quadrature(0.3, 2048);
    err.see(std::abs(m_function(f, 0, eye(1), 0.3, Side::Plus)(0, 0) - lebesgue));
    return summarize({err}, {});
}

}  // namespace

int main() {
    Rng rng(20240601);
    const std::vector<ScalarSample> scalar = scalar_samples(rng);
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"unitarity and structure", [&] { return unitarity_and_structure(rng); }},
        {"scalar minimal-rank decoupling", [&] { return scalar_decoupling(scalar); }},
        {"matrix minimal-rank decoupling", [&] { return matrix_decoupling(rng); }},
        {"determinant criterion", [&] { return determinant(scalar); }},
        {"connection identities", [&] { return connection_identities(rng); }},
        {"quadratic identities and conjugation symmetry", [&] { return quadratic(rng); }},
        {"Green's kernels against dense LU", [&] { return greens(rng); }},
        {"Weyl theory", [&] { return weyl(rng); }},
        {"Wronskian", [&] { return wronskian(rng); }},
        {"gauge equivalence", [&] { return gauge(rng); }},
        {"Caratheodory/Schur machinery", [&] { return appendix(rng); }},
        {"free-case convergence", [] { return free_case(); }},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("criterion %2zu %s  %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(), o.detail.c_str());
    }
    std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
    return failed == 0 ? 0 : 1;
}
