#pragma once

#include "cmv/assembly.hpp"
#include "cmv/laurent.hpp"

namespace cmv {

enum class Side { Plus = 1, Minus = -1 };

inline double sign_of(Side s) { return s == Side::Plus ? 1.0 : -1.0; }

// Half-lattice coefficient window: Plus keeps [k0, k_max] with alpha_{k0} := gamma,
// Minus keeps [k_min, k0+1] with alpha_{k0+1} := gamma (operator sites k_min .. k0).
VerblunskySequence half_lattice_sequence(const VerblunskySequence& seq, int k0, const Mat& gamma, Side side);

// +-Delta*(U_half + z)(U_half - z)^{-1} Delta at site k0, by m dense solves.
Mat m_function(const VerblunskySequence& seq, int k0, const Mat& gamma, cplx z, Side side);

// Coefficient c with Q + P c the Weyl solution: gamma^{1/2} m gamma^{-1/2} for even k0,
// gamma^{-1/2} m gamma^{1/2} for odd k0. Equals m whenever gamma commutes with m.
Mat weyl_coefficient(const Mat& m, const Mat& gamma, int k0);

// M_- from m_- at the same site: [m + I - z(m - I)][m + I + z(m - I)]^{-1}.
Mat M_minus_from_m_minus(const Mat& m_minus, cplx z);
// Inverse map: [z(M + I) - (M - I)][z(M + I) + (M - I)]^{-1}.
Mat m_minus_from_M_minus(const Mat& M_minus, cplx z);
// M_- from the coefficient at k0-1 through C3, D3, C4, D4 (gamma1 = gamma2 = gamma).
Mat M_minus_from_shifted(const Mat& c_minus_prev, const Mat& gamma, const Mat& alpha_k0, cplx z, int k0);
// Value at z = 0: gamma^{-1/2}(alpha + gamma)(alpha - gamma)^{-1} gamma^{1/2}.
Mat M_minus_at_zero(const Mat& alpha_k0, const Mat& gamma);

// Weyl coefficients relative to the (+) polynomial family seeded at k0.
Mat M_plus(const VerblunskySequence& seq, int k0, const Mat& gamma, cplx z);
Mat M_minus(const VerblunskySequence& seq, int k0, const Mat& gamma, cplx z);
Mat M_function(const VerblunskySequence& seq, int k0, const Mat& gamma, cplx z, Side side);

// Independent route: the coefficient M for which Q+ + P+ M meets the far boundary of the window.
Mat M_boundary(const VerblunskySequence& seq, int k0, const Mat& gamma, cplx z, Side side);

Mat schur_from_M(const Mat& M);
Mat M_from_schur(const Mat& phi);
// m_- = (z I + Phi_-)^{-1}(z I - Phi_-).
Mat m_minus_from_schur(const Mat& phi_minus, cplx z);

Mat M_gamma_transform(const Mat& M1, const Mat& gamma1, const Mat& gamma2);
Mat schur_gamma_transform(const Mat& phi1, const Mat& gamma1, const Mat& gamma2);

// Weyl solution U = Q+ + P+ M, V = S+ + R+ M over the operator sites of the window. The first
// overload builds it from the far edge (see weyl_solution_from_edge); the second forms the sum literally.
Solution weyl_solution(const VerblunskySequence& seq, int k0, const Mat& gamma, cplx z, Side side);
Solution weyl_solution(const SolutionFamily& fam, const Mat& M);

// The same Weyl solution, obtained by propagating the far-edge solution (U = B V there) toward the
// other end of the window and fixing the right factor so that it equals Q+ + P+ M at k0. The Weyl
// solution decays toward its own edge, so this direction never amplifies roundoff, unlike Q+ + P+ M
// formed far from k0.
Solution weyl_solution_from_edge(const VerblunskySequence& seq, const SolutionFamily& fam, const Mat& M, Side side);
// General form: the far-edge solution scaled to equal `at_k0` at site k0.
Solution edge_solution(const VerblunskySequence& seq, cplx z, int k0, const Pair& at_k0, Side side);

// Relative residual of the far-edge relation for a Weyl solution.
double boundary_residual(const VerblunskySequence& seq, const Solution& sol, cplx z, Side side);

// Odd k: z g^{1/2} V U^{-1} g^{1/2}; even k: g^{1/2} U V^{-1} g^{1/2}, with (U, V) at site k.
Mat schur_parity_formula(const VerblunskySequence& seq, int k0, const Mat& gamma, cplx z, int k, Side side);

double hermitian_part_min_eig(const Mat& f);

struct SpectralSample {
    cplx z;
    Mat m_plus, m_minus, M_plus, M_minus, Phi_plus, Phi_minus;
    bool caratheodory_plus = false;       // Re m_+ >= 0 (for |z| < 1)
    bool anti_caratheodory_minus = false;  // Re m_- <= 0
    bool schur_plus = false;              // ||Phi_+|| <= 1
    bool anti_schur_minus = false;        // smallest singular value of Phi_- >= 1
};

SpectralSample spectral_sample(const VerblunskySequence& seq, int k0, const Mat& gamma, cplx z, double tol = 1e-10);

// Scalar phase convention: gamma = e^{i t} I.
Mat gamma_from_phase(double t, int m);

}  // namespace cmv
