#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cmv {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

enum class ErrorCode {
    NotContractive,
    NotUnitary,
    DimensionMismatch,
    WindowTooSmall,
    InvalidBoundary,
    SplitOutOfWindow,
    InsufficientPadding,
    ZeroZ,
    PathLeavesWindow,
    ZOnUnitCircle,
    SingularSolve,
    SingularFactor,
    SingularSolutionValue,
    SingularWronskian,
    ZAtAtom,
    MatrixCaseUnsupported,
    UnknownSuite,
    ParseError,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

inline Mat eye(int m) { return Mat::Identity(m, m); }

inline Mat adj(const Mat& a) { return a.adjoint(); }

// Spectral norm.
double op_norm(const Mat& a);

// ||a* a - I||_F.
double unitarity_defect(const Mat& a);

bool is_unitary(const Mat& a, double tol = 1e-10);

// Relative Frobenius residual ||a - b|| / max(1, ||b||).
double rel_diff(const Mat& a, const Mat& b);

// Inverse via partial-pivot LU with a reciprocal-condition guard.
Mat checked_inverse(const Mat& a, ErrorCode code, const char* what, double rcond_min = 1e-14);

// Solve a x = b with the same guard.
Mat checked_solve(const Mat& a, const Mat& b, ErrorCode code, const char* what, double rcond_min = 1e-14);

inline int parity(int k) { return ((k % 2) + 2) % 2; }

}  // namespace cmv
