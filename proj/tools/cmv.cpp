// cmv: command-line front end for the CMV library.
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "cmv/analytic.hpp"
#include "cmv/greens.hpp"
#include "cmv/suite.hpp"

using namespace cmv;

namespace {

struct Common {
    std::string in, out;
    std::string format = "json";
    std::uint64_t seed = 7;
    bool seed_given = false;
    int m = 1;
    std::vector<int> window{-20, 20};
    double radius = 0.8;
    std::string distribution = "uniform";
    double tol_rank = kRankTol;
    double tol_identity = 0.0;
    int jobs = 1;
    int k0 = 0;
    std::vector<double> z{0.5, 0.0};
    std::string gamma_file;
    double gamma_phase = 0.0;
    bool gamma_phase_given = false;
};

std::uint64_t resolve_seed(const Common& c) {
    if (c.seed_given) return c.seed;
    if (const char* env = std::getenv("CMV_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError, "CMV_SEED must be an unsigned integer");
        }
    }
    return c.seed;
}

EnsembleSpec ensemble(const Common& c) {
    if (c.window.size() != 2) throw Error(ErrorCode::ParseError, "--window expects A,B");
    EnsembleSpec s;
    s.m = c.m;
    s.k_min = c.window[0];
    s.k_max = c.window[1];
    s.seed = resolve_seed(c);
    s.radius_max = c.radius;
    s.distribution = distribution_from_name(c.distribution);
    return s;
}

VerblunskySequence load(const Common& c) {
    if (c.in.empty()) return generate(ensemble(c));
    return sequence_from_json(read_json_file(c.in));
}

cplx z_of(const Common& c) {
    if (c.z.size() != 2) throw Error(ErrorCode::ParseError, "--z expects RE,IM");
    return {c.z[0], c.z[1]};
}

Mat gamma_of(const Common& c, int m) {
    if (!c.gamma_file.empty()) {
        const json j = read_json_file(c.gamma_file);
        Mat g = matrix_from_json(j.is_object() ? j.at("gamma") : j);
        if (g.rows() != m || !is_unitary(g)) throw Error(ErrorCode::NotUnitary, "gamma must be a unitary m x m matrix");
        return g;
    }
    return gamma_from_phase(c.gamma_phase_given ? c.gamma_phase : 0.0, m);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void add_input(CLI::App* app, Common& c) {
    app->add_option("--in", c.in, "Coefficient JSON (a seeded ensemble is generated when absent)");
    app->add_option("--out", c.out, "Output path (stdout when absent)");
    app->add_option("--seed", c.seed, "Ensemble seed (falls back to CMV_SEED)")->each([&](const std::string&) {
        c.seed_given = true;
    });
    app->add_option("--m", c.m, "Block size");
    app->add_option("--window", c.window, "Window bounds A,B")->delimiter(',')->expected(2);
    app->add_option("--radius", c.radius, "Largest coefficient norm");
    app->add_option("--distribution", c.distribution, "uniform | fixed");
}

void add_point(CLI::App* app, Common& c) {
    app->add_option("--k0", c.k0, "Split site")->required();
    app->add_option("--z", c.z, "Spectral parameter RE,IM")->delimiter(',')->expected(2);
    app->add_option("--gamma", c.gamma_file, "Unitary gamma as JSON matrix");
    app->add_option("--gamma-phase", c.gamma_phase, "gamma = e^{it} I")->each([&](const std::string&) {
        c.gamma_phase_given = true;
    });
}

json family_json(const Solution& s) {
    json a = json::array();
    for (int k = s.k_lo(); k <= s.k_hi(); ++k) a.push_back({{"k", k}, {"u", to_json(s.at(k).u)}, {"v", to_json(s.at(k).v)}});
    return a;
}

std::string csv_complex(cplx v) {
    std::ostringstream os;
    os.precision(17);
    os << v.real() << ',' << v.imag();
    return os.str();
}

void csv_matrix_header(std::ostream& os, const std::string& name, int m) {
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) os << ',' << name << i << j << "_re," << name << i << j << "_im";
}

void csv_matrix(std::ostream& os, const Mat& a) {
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) os << ',' << csv_complex(a(i, j));
}

json sample_json(const SpectralSample& s) {
    return {{"z", to_json(s.z)},
            {"m_plus", to_json(s.m_plus)},
            {"m_minus", to_json(s.m_minus)},
            {"M_plus", to_json(s.M_plus)},
            {"M_minus", to_json(s.M_minus)},
            {"Phi_plus", to_json(s.Phi_plus)},
            {"Phi_minus", to_json(s.Phi_minus)},
            {"caratheodory_plus", s.caratheodory_plus},
            {"anti_caratheodory_minus", s.anti_caratheodory_minus},
            {"schur_plus", s.schur_plus},
            {"anti_schur_minus", s.anti_schur_minus}};
}

std::vector<std::pair<int, int>> read_pairs(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
    std::vector<std::pair<int, int>> pairs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        int k = 0, kp = 0;
        if (ls >> k >> kp) pairs.emplace_back(k, kp);  // a non-numeric header line is skipped
    }
    return pairs;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CMV operators: assembly, decoupling, Laurent solutions, Weyl and Green's functions"};
    app.require_subcommand(1);
    Common c;

    auto* gen = app.add_subcommand("gen", "Generate a seeded coefficient ensemble");
    add_input(gen, c);

    auto* asmb = app.add_subcommand("assemble", "Assemble V, W, U = VW");
    add_input(asmb, c);
    int split_k0 = 0;
    std::string gl_file, gr_file;
    asmb->add_option("--split", split_k0, "Replace Theta at this site by diag(-gamma_left, gamma_right*)");
    asmb->add_option("--gamma-left", gl_file, "gamma_left JSON");
    asmb->add_option("--gamma-right", gr_file, "gamma_right JSON");

    auto* dec = app.add_subcommand("decouple", "Minimal-rank decoupling report");
    add_input(dec, c);
    std::vector<double> s_phases, t_phases;
    dec->add_option("--k0", c.k0, "Split site")->required();
    dec->add_option("--s", s_phases, "Phases s_j (default 0)")->delimiter(',');
    dec->add_option("--t", t_phases, "Phases t_j (default: minimal)")->delimiter(',');
    dec->add_option("--tol-rank", c.tol_rank, "Relative rank tolerance");

    auto* lau = app.add_subcommand("laurent", "Laurent polynomial solution families");
    add_input(lau, c);
    add_point(lau, c);
    std::vector<int> range;
    lau->add_option("--range", range, "Site range A,B")->delimiter(',')->expected(2);

    auto* mf = app.add_subcommand("mfun", "m, M and Schur functions");
    add_input(mf, c);
    add_point(mf, c);
    std::string sign = "+";
    std::vector<double> grid;
    mf->add_option("--sign", sign, "+ or -");
    mf->add_option("--grid", grid, "Polar grid r1,r2,ntheta (CSV output)")->delimiter(',')->expected(3);

    auto* gr = app.add_subcommand("green", "Green's function entries with residuals against dense solves");
    add_input(gr, c);
    add_point(gr, c);
    std::string half, pairs_file;
    gr->add_option("--half", half, "+ or - for a half-lattice kernel");
    gr->add_option("--pairs", pairs_file, "CSV of k,k' pairs")->required();

    auto* an = app.add_subcommand("analytic", "Caratheodory or Schur validity of sampled functions");
    std::string check = "caratheodory";
    an->add_option("--check", check, "caratheodory | schur");
    an->add_option("--in", c.in, "Samples JSON: list of {z, F}")->required();
    an->add_option("--out", c.out, "Output path");

    auto* ver = app.add_subcommand("verify", "Run invariant suites");
    add_input(ver, c);
    std::vector<std::string> suites;
    ver->add_option("--suites", suites, "Suite names (default: all)")->delimiter(',');
    ver->add_option("--format", c.format, "json | csv");
    ver->add_option("--tol-rank", c.tol_rank, "Relative rank tolerance");
    ver->add_option("--tol-identity", c.tol_identity, "Override for identity tolerances");
    ver->add_option("--jobs", c.jobs, "Parallel suites");
    bool timing = false;
    ver->add_flag("--timing", timing, "Include runtime in the report");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            write_text(c.out, dump(sequence_to_json(generate(ensemble(c)))));
        } else if (*asmb) {
            const VerblunskySequence seq = load(c);
            CmvOperatorSet ops;
            if (asmb->count("--split")) {
                const Mat gl = gl_file.empty() ? eye(seq.m()) : matrix_from_json(read_json_file(gl_file));
                const Mat grt = gr_file.empty() ? eye(seq.m()) : matrix_from_json(read_json_file(gr_file));
                ops = assemble_split(seq, {split_k0, gl, grt});
            } else {
                ops = assemble(seq);
            }
            write_text(c.out, dump({{"offset", ops.offset}, {"m", ops.m}, {"U", to_json(ops.U)}, {"V", to_json(ops.V)},
                                    {"W", to_json(ops.W)}}));
        } else if (*dec) {
            const VerblunskySequence seq = load(c);
            const Mat a = seq.alpha(c.k0);
            if (s_phases.empty()) s_phases.assign(static_cast<std::size_t>(seq.m()), 0.0);
            const PhaseSolution p = t_phases.empty() ? minimal_phases(a, s_phases) : phases_to_gammas(a, s_phases, t_phases);
            const DecouplingReport r = decoupling_report(seq, c.k0, p.gamma1, p.gamma2, default_z_samples(), c.tol_rank);
            json ranks = json::array();
            for (const ResolventRank& rr : r.resolvent_ranks) ranks.push_back({{"z", to_json(rr.z)}, {"rank", rr.rank}});
            std::vector<double> sv(r.singular_values.data(), r.singular_values.data() + r.singular_values.size());
            json out{{"k0", c.k0},
                     {"s", p.s},
                     {"t", p.t},
                     {"gamma1", to_json(p.gamma1)},
                     {"gamma2", to_json(p.gamma2)},
                     {"local_block", to_json(r.local_block)},
                     {"singular_values", sv},
                     {"operator_rank", r.op_rank},
                     {"resolvent_ranks", ranks},
                     {"minimal", r.minimal}};
            std::ostringstream os;
            os << std::setprecision(17) << out.dump(2) << "\n";
            write_text(c.out, os.str());
        } else if (*lau) {
            const VerblunskySequence seq = load(c);
            const int lo = range.size() == 2 ? range[0] : seq.k_min();
            const int hi = range.size() == 2 ? range[1] : seq.k_max() - 1;
            const SolutionFamily f = solution_family(seq, gamma_of(c, seq.m()), z_of(c), c.k0, lo, hi);
            write_text(c.out, dump({{"k0", c.k0},
                                    {"z", to_json(f.z)},
                                    {"P_plus", family_json(f.p_plus)},
                                    {"Q_plus", family_json(f.q_plus)},
                                    {"P_minus", family_json(f.p_minus)},
                                    {"Q_minus", family_json(f.q_minus)}}));
        } else if (*mf) {
            const VerblunskySequence seq = load(c);
            const Mat g = gamma_of(c, seq.m());
            if (grid.size() == 3) {
                std::ostringstream os;
                os << "z_re,z_im";
                for (const char* n : {"m_plus", "m_minus", "M_plus", "M_minus", "Phi_plus", "Phi_minus"})
                    csv_matrix_header(os, n, seq.m());
                os << ",caratheodory_plus,anti_caratheodory_minus,schur_plus,anti_schur_minus\n";
                const int nr = 5, nt = static_cast<int>(grid[2]);
                for (int i = 0; i < nr; ++i)
                    for (int j = 0; j < nt; ++j) {
                        const double r = grid[0] + (grid[1] - grid[0]) * i / (nr - 1);
                        const SpectralSample s = spectral_sample(seq, c.k0, g, std::polar(r, 2.0 * std::numbers::pi * j / nt));
                        os << csv_complex(s.z);
                        for (const Mat* x : {&s.m_plus, &s.m_minus, &s.M_plus, &s.M_minus, &s.Phi_plus, &s.Phi_minus})
                            csv_matrix(os, *x);
                        os << ',' << s.caratheodory_plus << ',' << s.anti_caratheodory_minus << ',' << s.schur_plus << ','
                           << s.anti_schur_minus << '\n';
                    }
                write_text(c.out, os.str());
            } else {
                const Side side = sign == "-" ? Side::Minus : Side::Plus;
                json j = sample_json(spectral_sample(seq, c.k0, g, z_of(c)));
                j["sign"] = sign;
                j["m"] = to_json(m_function(seq, c.k0, g, z_of(c), side));
                write_text(c.out, dump(j));
            }
        } else if (*gr) {
            const VerblunskySequence seq = load(c);
            const Mat g = gamma_of(c, seq.m());
            const cplx z = z_of(c);
            std::ostringstream os;
            os.precision(17);
            os << "k,kp,branch";
            csv_matrix_header(os, "G", seq.m());
            os << ",residual\n";
            auto emit = [&](const GreensEntry& e, const Mat& ref) {
                os << e.k << ',' << e.kp << ',' << branch_name(e.branch);
                csv_matrix(os, e.value);
                os << ',' << (e.value - ref).norm() / std::max(ref.norm(), 1e-300) << '\n';
            };
            if (half.empty()) {
                const FullLatticeGreen fg(seq, c.k0, g, z);
                const ResolventOracle o = full_oracle(seq, z);
                for (auto [k, kp] : read_pairs(pairs_file)) emit(fg.entry(k, kp), o.entry(k, kp));
            } else {
                const Side side = half == "-" ? Side::Minus : Side::Plus;
                const HalfLatticeGreen hg(seq, c.k0, g, z, side);
                const ResolventOracle o = half_oracle(seq, c.k0, g, z, side);
                for (auto [k, kp] : read_pairs(pairs_file)) emit(hg.entry(k, kp), o.entry(k, kp));
            }
            write_text(c.out, os.str());
        } else if (*an) {
            const json j = read_json_file(c.in);
            std::vector<FunctionSample> samples;
            for (const json& s : j) samples.push_back({complex_from_json(s.at("z")), matrix_from_json(s.at("F"))});
            const ValidityReport r = check == "schur" ? is_schur(samples) : is_caratheodory(samples);
            write_text(c.out, dump({{"check", check}, {"margins", r.min_values}, {"worst", r.worst}, {"valid", r.valid}}));
            return r.valid ? 0 : 1;
        } else if (*ver) {
            if (suites.empty()) suites = suite_names();
            const VerificationReport r = run_suite(suites, ensemble(c), {c.tol_rank, c.tol_identity}, c.jobs);
            write_text(c.out, c.format == "csv" ? report_to_csv(r) : dump(report_to_json(r, timing)));
            for (const CheckResult& ch : r.checks)
                if (!ch.pass) std::cerr << "FAIL " << ch.suite << ": " << ch.name << " residual " << ch.residual << "\n";
            return r.passed() ? 0 : 1;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
