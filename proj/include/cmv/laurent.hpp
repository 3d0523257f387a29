#pragma once

#include <vector>

#include "cmv/coefficients.hpp"

namespace cmv {

// A solution value at one site: first component is the U-part (P, Q, U),
// second the V-part (R, S, V).
struct Pair {
    Mat u;
    Mat v;
    Mat stacked() const;
};

Mat transfer(const VerblunskySequence& seq, cplx z, int k);
Mat transfer_inverse(const VerblunskySequence& seq, cplx z, int k);

struct Seeds {
    Pair p_plus, q_plus, p_minus, q_minus;
};

Seeds seed_family(const Mat& gamma, cplx z, int k0);

// Solution of the transfer recursion stored over [k_lo, k_hi].
class Solution {
public:
    Solution() = default;
    Solution(int k_lo, std::vector<Pair> vals) : k_lo_(k_lo), vals_(std::move(vals)) {}
    int k_lo() const { return k_lo_; }
    int k_hi() const { return k_lo_ + static_cast<int>(vals_.size()) - 1; }
    const Pair& at(int k) const;
    // Right multiplication by a constant matrix, and sums, for forming Weyl solutions.
    Solution times(const Mat& c) const;
    Solution plus(const Solution& o) const;

private:
    int k_lo_ = 0;
    std::vector<Pair> vals_;
};

// Propagates `seed` given at k0 across [k_lo, k_hi]: forward by T(z, k) for k > k0 and
// backward by T(z, k)^{-1} for k <= k0. Every transfer used must sit on a contractive site.
Solution propagate(const VerblunskySequence& seq, cplx z, int k0, const Pair& seed, int k_lo, int k_hi);

// Default range: every operator site k_min .. k_max-1.
Solution propagate(const VerblunskySequence& seq, cplx z, int k0, const Pair& seed);

// Condition number of the accumulated transfer matrix carrying site `from` to site `to`.
double transfer_condition(const VerblunskySequence& seq, cplx z, int from, int to);

struct SolutionFamily {
    cplx z;
    int k0 = 0;
    Mat gamma;
    Solution p_plus, q_plus, p_minus, q_minus;
};

SolutionFamily solution_family(const VerblunskySequence& seq, const Mat& gamma, cplx z, int k0);
SolutionFamily solution_family(const VerblunskySequence& seq, const Mat& gamma, cplx z, int k0, int k_lo, int k_hi);

struct ConnectionCoefficients {
    Mat C1, D1, C2, D2, C3, D3, C4, D4;
};

ConnectionCoefficients connection(const Mat& gamma1, const Mat& gamma2, const Mat& alpha_k0, cplx z, int k0);

struct ConnectionResiduals {
    // Largest relative residual of each display over the sampled sites.
    double same_sign_q = 0, same_sign_p = 0;              // gamma2 family from the gamma1 family, same sign
    double minus_from_plus_q = 0, minus_from_plus_p = 0;  // (-) gamma2 family from the (+) gamma1 family
    double shifted_q = 0, shifted_p = 0;                  // (-) family seeded at k0-1 from the (+) family at k0
    double max() const;
};

ConnectionResiduals connection_residuals(const VerblunskySequence& seq, const Mat& gamma1, const Mat& gamma2, cplx z,
                                         int k0, int k_lo, int k_hi);

struct QuadraticResiduals {
    double pq = 0;  // P Q*(1/zb) + Q P*(1/zb) - 2(-1)^{k+1} I
    double rs = 0;  // R S*(1/zb) + S R*(1/zb) - 2(-1)^k I
    double ps = 0;  // P S*(1/zb) + Q R*(1/zb)
    double rq = 0;  // R Q*(1/zb) + S P*(1/zb)
    double max() const;
};

// Families must be evaluated at z and 1/conj(z) with the same gamma and k0.
QuadraticResiduals quadratic_identities(const Solution& p, const Solution& q, const Solution& p_bar,
                                        const Solution& q_bar, int k);

struct ConjugationResiduals {
    double r_plus = 0, s_plus = 0, r_minus = 0, s_minus = 0;
    double max() const;
};

// Scalar only: r+ = z^{k0 mod 2} conj(p+(1/zb)), s+ = -z^{k0 mod 2} conj(q+(1/zb)),
// r- = -z^{(k0+1) mod 2} conj(p-(1/zb)), s- = z^{(k0+1) mod 2} conj(q-(1/zb)).
ConjugationResiduals conjugation_symmetry(const SolutionFamily& at_z, const SolutionFamily& at_zbar, int k);

}  // namespace cmv
