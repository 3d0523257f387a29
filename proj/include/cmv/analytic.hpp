#pragma once

#include <vector>

#include "cmv/types.hpp"

namespace cmv {

inline constexpr double kPsdTol = 1e-10;

struct Atom {
    cplx zeta;  // on the unit circle
    Mat weight;  // positive semidefinite
};

class AtomicMeasure {
public:
    AtomicMeasure(int m, std::vector<Atom> atoms, Mat C);
    explicit AtomicMeasure(int m) : AtomicMeasure(m, {}, Mat::Zero(m, m)) {}
    int m() const { return m_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    const Mat& C() const { return C_; }
    Mat total_mass() const;

private:
    int m_;
    std::vector<Atom> atoms_;
    Mat C_;
};

// i C + sum_j w_j (zeta_j + z)/(zeta_j - z).
Mat herglotz_eval(const AtomicMeasure& mu, cplx z);

struct FunctionSample {
    cplx z;
    Mat F;
};

struct ValidityReport {
    std::vector<double> min_values;  // one per sample
    double worst = 0;
    bool valid = true;
};

// Smallest eigenvalue of Re F at each sample; valid iff all >= -tol.
ValidityReport is_caratheodory(const std::vector<FunctionSample>& samples, double tol = kPsdTol);
// 1 - ||Phi|| at each sample; valid iff all >= -tol.
ValidityReport is_schur(const std::vector<FunctionSample>& samples, double tol = kPsdTol);

Mat cayley(const Mat& F);
Mat inverse_cayley(const Mat& phi);

// Continuation to the exterior: F(1/zb) = -F(z)*.
FunctionSample reflect(const FunctionSample& inside);
std::vector<FunctionSample> reflect(const std::vector<FunctionSample>& inside);

// Trapezoid rule for the normalized Lebesgue integral of (zeta + z)/(zeta - z); the exact value is 1.
cplx lebesgue_herglotz_quadrature(cplx z, int nodes = 2048);

// Normalized Lebesgue measure as n equal atoms (weights I/n) at the n-th roots of unity.
AtomicMeasure lebesgue_atoms(int m, int nodes);

}  // namespace cmv
