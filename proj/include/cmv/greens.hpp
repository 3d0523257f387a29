#pragma once

#include <string>
#include <vector>

#include "cmv/weyl.hpp"

namespace cmv {

enum class Branch { UpperOdd, LowerEven };

// k < k', or k = k' with k odd, selects the upper branch.
Branch branch_of(int k, int kp);
const char* branch_name(Branch b);

struct GreensEntry {
    int k = 0, kp = 0;
    Mat value;
    Branch branch = Branch::UpperOdd;
};

struct WronskianValue {
    Mat value;
    cplx z;
    int k = 0;
};

// ((-1)^{k+1}/2)[U_A(1/zb)* U_B(z) - V_A(1/zb)* V_B(z)], with `a_bar` evaluated at 1/conj(z).
Mat wronskian(const Pair& a_bar, const Pair& b, int k);

// Dense (U - z)^{-1} of an assembled window, indexed by lattice sites.
class ResolventOracle {
public:
    ResolventOracle(const CmvOperatorSet& ops, cplx z);
    Mat entry(int k, int kp) const;
    cplx z() const { return z_; }

private:
    int offset_ = 0, m_ = 1;
    cplx z_;
    Mat inv_;
};

ResolventOracle full_oracle(const VerblunskySequence& seq, cplx z);
ResolventOracle half_oracle(const VerblunskySequence& seq, int k0, const Mat& gamma, cplx z, Side side);

// Half-lattice kernel built from the sign-matched families at z and 1/conj(z) and the
// Weyl coefficient of the same side.
class HalfLatticeGreen {
public:
    HalfLatticeGreen(const VerblunskySequence& seq, int k0, const Mat& gamma, cplx z, Side side);
    GreensEntry entry(int k, int kp) const;
    int first_site() const { return lo_; }
    int last_site() const { return hi_; }

private:
    Side side_;
    cplx z_;
    int lo_ = 0, hi_ = 0;
    Solution p_, p_bar_, hat_, hat_bar_;
};

// Full-lattice kernel (2z)^{-1} U_-(z,k) W^{-1} U_+(1/zb,k')* and its mirror.
class FullLatticeGreen {
public:
    FullLatticeGreen(const VerblunskySequence& seq, int k0, const Mat& gamma, cplx z);
    GreensEntry entry(int k, int kp) const;

    const Mat& M_plus() const { return Mp_; }
    const Mat& M_minus() const { return Mm_; }
    const Mat& M_plus_bar() const { return Mpb_; }
    const Mat& M_minus_bar() const { return Mmb_; }
    // W = M_+ - M_- at z.
    const Mat& W() const { return W_; }
    const Solution& U_plus() const { return up_; }
    const Solution& U_minus() const { return um_; }
    const Solution& U_plus_bar() const { return upb_; }
    const Solution& U_minus_bar() const { return umb_; }
    const SolutionFamily& family() const { return fam_; }
    const SolutionFamily& family_bar() const { return fam_bar_; }
    int first_site() const { return fam_.p_plus.k_lo(); }
    int last_site() const { return fam_.p_plus.k_hi(); }

private:
    cplx z_;
    SolutionFamily fam_, fam_bar_;
    Mat Mp_, Mm_, Mpb_, Mmb_, W_, W_inv_;
    Solution up_, um_, upb_, umb_;
};

GreensEntry half_lattice_green(const VerblunskySequence& seq, int k0, const Mat& gamma, cplx z, int k, int kp,
                               Side side);
GreensEntry full_lattice_green(const VerblunskySequence& seq, int k0, const Mat& gamma, cplx z, int k, int kp);

// Value of the full-lattice kernel at z = 0 as the mean of the formula over `n` points on
// |z| = r. The kernel is analytic at 0, so the error is of order r^n.
Mat full_lattice_green_at_zero(const VerblunskySequence& seq, int k0, const Mat& gamma, int k, int kp,
                               double r = 1e-3, int n = 8);

// ||M+ W^{-1} M- - M- W^{-1} M+|| with W = M+ - M-.
double wronskian_symmetry_check(const Mat& M_plus, const Mat& M_minus);

// Residuals are taken over the whole window, each divided by max(1, size of the products that cancel).
struct WronskianReport {
    double k_spread = 0;        // max_k ||W(k) - W(k_lo)||
    double equals_M_diff = 0;   // max_k ||W(U+(1/zb), U-(z))(k) - (M- - M+)||
    double pq_identity = 0;     // max_k ||W(P+(1/zb), Q+(z))(k) - I||
    double symmetry = 0;        // wronskian_symmetry_check
    double identity_u = 0;      // U+ W^{-1} U-(1/zb)* - U- W^{-1} U+(1/zb)* - 2(-1)^{k+1} I
    double identity_v = 0;      // V+ W^{-1} U-(1/zb)* - V- W^{-1} U+(1/zb)*
    double max() const;
};

WronskianReport wronskian_report(const FullLatticeGreen& g);

// Scalar kernels (m = 1). Both readings of the hatted solution are available.
enum class HatChoice { SignMatched, Literal };
const char* hat_name(HatChoice h);

struct ScalarGreenInputs {
    SolutionFamily fam, fam_bar;  // at z and 1/conj(z)
    cplx m_plus, m_minus, m_plus_bar, m_minus_bar;
    cplx M_plus, M_minus, M_plus_bar, M_minus_bar;
};

ScalarGreenInputs scalar_green_inputs(const VerblunskySequence& seq, int k0, double t, cplx z);

// Half-lattice forms: the plain form uses the v-part of the hatted solution, the _conj form the
// conjugate of its u-part at 1/zb. The _minus forms are the left-side counterparts.
cplx scalar_green_half_plus(const ScalarGreenInputs& in, int k, int kp, HatChoice hat);
cplx scalar_green_half_plus_conj(const ScalarGreenInputs& in, int k, int kp, HatChoice hat);
cplx scalar_green_half_minus(const ScalarGreenInputs& in, int k, int kp, HatChoice hat);
cplx scalar_green_half_minus_conj(const ScalarGreenInputs& in, int k, int kp, HatChoice hat);
cplx scalar_green_full(const ScalarGreenInputs& in, int k, int kp);
cplx scalar_green_full_conj(const ScalarGreenInputs& in, int k, int kp);

struct HatSelection {
    HatChoice chosen = HatChoice::SignMatched;
    double error_sign_matched = 0;
    double error_literal = 0;
    std::string note;
};

// Compares both hatted-solution readings against the half-lattice oracle on pairs
// within `reach` of k0 and keeps the one that agrees.
HatSelection select_scalar_hat(const VerblunskySequence& seq, int k0, double t, cplx z, int reach = 4);

}  // namespace cmv
