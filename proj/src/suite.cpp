#include "cmv/suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>

#include "cmv/analytic.hpp"
#include "cmv/greens.hpp"

namespace cmv {

bool VerificationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"unitarity", "decoupling", "connection", "quadratic", "green-half",
                                                "green-full", "weyl",       "wronskian",  "analytic",  "gauge"};
    return names;
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

struct Context {
    const VerblunskySequence& seq;
    const Tolerances& tol;
    std::string suite;
    Rng rng;
    int k0;
    std::vector<CheckResult> out;

    void add(const std::string& name, double residual, double tolerance, bool identity = true) {
        const double t = identity && tol.identity > 0 ? tol.identity : tolerance;
        out.push_back({suite, name, residual, t, std::isfinite(residual) && residual <= t});
    }
};

const std::vector<cplx> kZ{std::polar(0.5, 0.3), std::polar(2.0, 1.1)};

std::string zlabel(cplx z) {
    std::ostringstream os;
    os << "|z|=" << std::abs(z);
    return os.str();
}

double rel(const Mat& a, const Mat& b) { return (a - b).norm() / std::max(b.norm(), 1e-300); }

void unitarity(Context& c) {
    const CmvOperatorSet ops = assemble(c.seq);
    const auto n = ops.U.rows();
    c.add("U*U - I", (ops.U.adjoint() * ops.U - Mat::Identity(n, n)).norm(), 1e-10);
    c.add("U - VW", (ops.U - ops.V * ops.W).norm(), 1e-12);
    double band = 0.0;
    for (int k = ops.first_site(); k <= ops.last_site(); ++k)
        for (int kp = ops.first_site(); kp <= ops.last_site(); ++kp)
            if (std::abs(k - kp) > 2) band = std::max(band, ops.block(k, kp).norm());
    c.add("five-diagonal structure", band, 0.0, false);
    const Mat g = random_unitary(c.seq.m(), c.rng);
    const CmvOperatorSet split = assemble_split(c.seq, {c.k0, g, g});
    c.add("split U*U - I", (split.U.adjoint() * split.U - Mat::Identity(n, n)).norm(), 1e-10);
    const int cut = (c.k0 - split.offset) * c.seq.m();
    c.add("split block structure",
          split.U.topRightCorner(cut, n - cut).norm() + split.U.bottomLeftCorner(n - cut, cut).norm(), 0.0, false);
}

void decoupling(Context& c) {
    const int m = c.seq.m();
    std::uniform_real_distribution<double> ph(0.0, 2.0 * std::numbers::pi);
    std::vector<double> s(static_cast<std::size_t>(m));
    for (double& x : s) x = ph(c.rng);
    const PhaseSolution p = minimal_phases(c.seq.alpha(c.k0), s);
    const DecouplingReport rep = decoupling_report(c.seq, c.k0, p.gamma1, p.gamma2, default_z_samples(), c.tol.rank);
    c.add("operator rank - m", std::abs(rep.op_rank - m), 0.0, false);
    int worst = 0;
    for (const ResolventRank& r : rep.resolvent_ranks) worst = std::max(worst, std::abs(r.rank - m));
    c.add("resolvent rank - m", worst, 0.0, false);
    std::vector<double> t = p.t;
    t[0] += 0.1;
    const PhaseSolution q = phases_to_gammas(c.seq.alpha(c.k0), s, t);
    const CmvOperatorSet full = assemble(c.seq);
    const CmvOperatorSet split = assemble_split(c.seq, {c.k0, q.gamma1, q.gamma2});
    c.add("perturbed phase rank - (m+1)", std::abs(numerical_rank(full.U - split.U, c.tol.rank) - (m + 1)), 0.0, false);
    if (m == 1) {
        const cplx a = c.seq.alpha(c.k0)(0, 0);
        c.add("determinant criterion", std::abs(det_criterion(a, scalar_minimal_t1(a, s[0]), s[0])), 1e-12);
    }
}

void connection(Context& c) {
    const Mat g1 = random_unitary(c.seq.m(), c.rng), g2 = random_unitary(c.seq.m(), c.rng);
    const int lo = std::max(c.seq.k_min(), c.k0 - 6), hi = std::min(c.seq.k_max() - 1, c.k0 + 6);
    for (cplx z : kZ) c.add("connection identities " + zlabel(z), connection_residuals(c.seq, g1, g2, z, c.k0, lo, hi).max(), 1e-9);
}

void quadratic(Context& c) {
    const Mat g = random_unitary(c.seq.m(), c.rng);
    for (cplx z : kZ) {
        const cplx zb = 1.0 / std::conj(z);
        const SolutionFamily f = solution_family(c.seq, g, z, c.k0), fb = solution_family(c.seq, g, zb, c.k0);
        double worst = 0.0, conj_worst = 0.0;
        for (int k = std::max(c.seq.k_min(), c.k0 - 6); k <= std::min(c.seq.k_max() - 1, c.k0 + 6); ++k) {
            worst = std::max({worst, quadratic_identities(f.p_plus, f.q_plus, fb.p_plus, fb.q_plus, k).max(),
                              quadratic_identities(f.p_minus, f.q_minus, fb.p_minus, fb.q_minus, k).max()});
            if (c.seq.m() == 1) conj_worst = std::max(conj_worst, conjugation_symmetry(f, fb, k).max());
        }
        c.add("quadratic identities " + zlabel(z), worst, 1e-9);
        if (c.seq.m() == 1) c.add("conjugation symmetries " + zlabel(z), conj_worst, 1e-10);
    }
}

double entry_rel(const Mat& v, const Mat& ref) { return (v - ref).norm() / std::max(ref.norm(), 1e-300); }

void green_half(Context& c) {
    const Mat g = random_unitary(c.seq.m(), c.rng);
    for (Side side : {Side::Plus, Side::Minus})
        for (cplx z : kZ) {
            const HalfLatticeGreen hg(c.seq, c.k0, g, z, side);
            const ResolventOracle o = half_oracle(c.seq, c.k0, g, z, side);
            const int lo = side == Side::Plus ? c.k0 : c.k0 - 4;
            double worst = 0.0;
            for (int k = lo; k <= lo + 4; ++k)
                for (int kp = lo; kp <= lo + 4; ++kp) worst = std::max(worst, entry_rel(hg.entry(k, kp).value, o.entry(k, kp)));
            c.add(std::string("half-lattice ") + (side == Side::Plus ? "+" : "-") + " " + zlabel(z), worst, 1e-8);
        }
}

void green_full(Context& c) {
    const Mat g = random_unitary(c.seq.m(), c.rng);
    for (cplx z : kZ) {
        const FullLatticeGreen fg(c.seq, c.k0, g, z);
        const FullLatticeGreen fi(c.seq, c.k0, eye(c.seq.m()), z);
        const ResolventOracle o = full_oracle(c.seq, z);
        double worst = 0.0, gam = 0.0;
        for (int k = c.k0 - 5; k <= c.k0 + 5; ++k)
            for (int kp = c.k0 - 5; kp <= c.k0 + 5; ++kp) {
                worst = std::max(worst, entry_rel(fg.entry(k, kp).value, o.entry(k, kp)));
                gam = std::max(gam, entry_rel(fg.entry(k, kp).value, fi.entry(k, kp).value));
            }
        c.add("full-lattice " + zlabel(z), worst, 1e-8);
        c.add("gamma independence " + zlabel(z), gam, 1e-9);
    }
    const Mat at0 = full_lattice_green_at_zero(c.seq, c.k0, g, c.k0, c.k0 + 1);
    const ResolventOracle o0 = full_oracle(c.seq, 0.0);
    c.add("extension to z = 0", entry_rel(at0, o0.entry(c.k0, c.k0 + 1)), 1e-6);
}

void weyl(Context& c) {
    const Mat g = random_unitary(c.seq.m(), c.rng);
    for (cplx z : kZ) {
        c.add("M+ boundary matching " + zlabel(z), rel(M_plus(c.seq, c.k0, g, z), M_boundary(c.seq, c.k0, g, z, Side::Plus)), 1e-10);
        const Mat Mm = M_minus(c.seq, c.k0, g, z);
        c.add("M- boundary matching " + zlabel(z), rel(Mm, M_boundary(c.seq, c.k0, g, z, Side::Minus)), 1e-9);
        c.add("m-/M- round trip " + zlabel(z), rel(M_minus_from_m_minus(m_minus_from_M_minus(Mm, z), z), Mm), 1e-12);
    }
    std::vector<FunctionSample> plus, minus, phi;
    for (int i = 1; i <= 5; ++i)
        for (int j = 0; j < 8; ++j) {
            const cplx z = std::polar(0.18 * i, 2.0 * std::numbers::pi * j / 8 + 0.1);
            const SpectralSample s = spectral_sample(c.seq, c.k0, g, z);
            plus.push_back({z, s.m_plus});
            minus.push_back({z, -s.m_minus});
            phi.push_back({z, s.Phi_plus});
        }
    c.add("Caratheodory m+", -std::min(0.0, is_caratheodory(plus).worst), 1e-10);
    c.add("anti-Caratheodory m-", -std::min(0.0, is_caratheodory(minus).worst), 1e-10);
    c.add("Schur bound Phi+", -std::min(0.0, is_schur(phi).worst), 1e-10);
}

void wronskian(Context& c) {
    const Mat g = random_unitary(c.seq.m(), c.rng);
    for (cplx z : kZ) {
        const WronskianReport r = wronskian_report(FullLatticeGreen(c.seq, c.k0, g, z));
        c.add("k-independence " + zlabel(z), r.k_spread, 1e-9);
        c.add("W = M+ - M- " + zlabel(z), r.equals_M_diff, 1e-9);
        c.add("W(P+, Q+) = I " + zlabel(z), r.pq_identity, 1e-9);
        c.add("symmetry " + zlabel(z), r.symmetry, 1e-9);
        c.add("U identity " + zlabel(z), r.identity_u, 1e-9);
        c.add("V identity " + zlabel(z), r.identity_v, 1e-9);
    }
}

void analytic(Context& c) {
    const Mat g = random_unitary(c.seq.m(), c.rng);
    double round = 0.0, refl = 0.0;
    for (cplx z : {std::polar(0.5, 0.3), std::polar(0.3, 2.0), std::polar(0.7, -1.2)}) {
        const Mat mp = m_function(c.seq, c.k0, g, z, Side::Plus);
        round = std::max(round, rel(inverse_cayley(cayley(mp)), mp));
        const FunctionSample out = reflect(FunctionSample{z, mp});
        refl = std::max(refl, rel(m_function(c.seq, c.k0, g, out.z, Side::Plus), out.F));
    }
    c.add("Cayley round trip", round, 1e-12);
    c.add("reflection of m+", refl, 1e-9);
    c.add("Lebesgue quadrature", std::abs(lebesgue_herglotz_quadrature(cplx(0.3, 0.2)) - 1.0), 1e-10);
}

void gauge(Context& c) {
    const int m = c.seq.m();
    const Mat sigma = random_unitary(m, c.rng), tau = random_unitary(m, c.rng);
    const VerblunskySequence gs = gauge_transform(c.seq, sigma, tau);
    const CmvOperatorSet a = assemble(c.seq), b = assemble(gs);
    const Mat A = site_gauge(a, sigma, tau), At = site_gauge(a, tau, sigma);
    c.add("U' = A U A*", rel(A * a.U * A.adjoint(), b.U), 1e-10);
    c.add("V' = A V At*", rel(A * a.V * At.adjoint(), b.V), 1e-10);
    c.add("W' = At W A*", rel(At * a.W * A.adjoint(), b.W), 1e-10);
    const Mat g = random_unitary(m, c.rng);
    const Mat h = principal_unitary_sqrt(g);
    const VerblunskySequence gg = gauge_transform(c.seq, h.adjoint(), h);
    const CmvOperatorSet s1 = assemble_split(c.seq, {c.k0, g, g}), s2 = assemble_split(gg, {c.k0, eye(m), eye(m)});
    const Mat G = site_gauge(s1, h.adjoint(), h);
    c.add("split gauge to gamma = I", rel(G * s1.U * G.adjoint(), s2.U), 1e-10);
}

const std::map<std::string, std::function<void(Context&)>>& registry() {
    static const std::map<std::string, std::function<void(Context&)>> r{
        {"unitarity", unitarity}, {"decoupling", decoupling}, {"connection", connection}, {"quadratic", quadratic},
        {"green-half", green_half}, {"green-full", green_full}, {"weyl", weyl},           {"wronskian", wronskian},
        {"analytic", analytic},   {"gauge", gauge}};
    return r;
}

}  // namespace

VerificationReport run_suite(const std::vector<std::string>& names, const EnsembleSpec& spec, const Tolerances& tol,
                             int jobs) {
    for (const std::string& n : names)
        if (!registry().count(n)) throw Error(ErrorCode::UnknownSuite, n);
    const auto start = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.suites = names;
    rep.spec = spec;
    if (!names.empty()) {
        const VerblunskySequence seq = generate(spec);
        const int k0 = (spec.k_min + spec.k_max) / 2;
        std::vector<std::vector<CheckResult>> results(names.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next++; i < names.size(); i = next++) {
                Context ctx{seq, tol, names[i], Rng(spec.seed ^ fnv1a(names[i])), k0, {}};
                try {
                    registry().at(names[i])(ctx);
                } catch (const Error& e) {
                    ctx.out.push_back({names[i], std::string("exception: ") + e.what(), INFINITY, 0.0, false});
                }
                results[i] = std::move(ctx.out);
            }
        };
        const int n = std::clamp(jobs, 1, static_cast<int>(names.size()));
        std::vector<std::thread> pool;
        for (int i = 1; i < n; ++i) pool.emplace_back(worker);
        worker();
        for (std::thread& t : pool) t.join();
        for (auto& r : results) rep.checks.insert(rep.checks.end(), r.begin(), r.end());
        std::sort(rep.checks.begin(), rep.checks.end(), [](const CheckResult& a, const CheckResult& b) {
            return std::tie(a.suite, a.name) < std::tie(b.suite, b.name);
        });
    }
    rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

json report_to_json(const VerificationReport& r, bool with_runtime) {
    json checks = json::array();
    for (const CheckResult& c : r.checks)
        checks.push_back({{"suite", c.suite},
                          {"check", c.name},
                          {"residual", std::isfinite(c.residual) ? json(c.residual) : json("inf")},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass}});
    json j{{"suites", r.suites},
           {"seed", r.spec.seed},
           {"m", r.spec.m},
           {"window", {r.spec.k_min, r.spec.k_max}},
           {"radius_max", r.spec.radius_max},
           {"checks", checks},
           {"passed", r.passed()}};
    if (with_runtime) j["runtime_seconds"] = r.runtime_seconds;
    return j;
}

std::string report_to_csv(const VerificationReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << "suite,check,residual,tolerance,pass\n";
    for (const CheckResult& c : r.checks)
        os << c.suite << ",\"" << c.name << "\"," << c.residual << ',' << c.tolerance << ',' << (c.pass ? 1 : 0) << '\n';
    return os.str();
}

}  // namespace cmv
