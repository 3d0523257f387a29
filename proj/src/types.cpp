#include "cmv/types.hpp"

namespace cmv {

const char* error_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::NotContractive: return "NotContractive";
        case ErrorCode::NotUnitary: return "NotUnitary";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::WindowTooSmall: return "WindowTooSmall";
        case ErrorCode::InvalidBoundary: return "InvalidBoundary";
        case ErrorCode::SplitOutOfWindow: return "SplitOutOfWindow";
        case ErrorCode::InsufficientPadding: return "InsufficientPadding";
        case ErrorCode::ZeroZ: return "ZeroZ";
        case ErrorCode::PathLeavesWindow: return "PathLeavesWindow";
        case ErrorCode::ZOnUnitCircle: return "ZOnUnitCircle";
        case ErrorCode::SingularSolve: return "SingularSolve";
        case ErrorCode::SingularFactor: return "SingularFactor";
        case ErrorCode::SingularSolutionValue: return "SingularSolutionValue";
        case ErrorCode::SingularWronskian: return "SingularWronskian";
        case ErrorCode::ZAtAtom: return "ZAtAtom";
        case ErrorCode::MatrixCaseUnsupported: return "MatrixCaseUnsupported";
        case ErrorCode::UnknownSuite: return "UnknownSuite";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

double op_norm(const Mat& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> svd(a);
    return svd.singularValues()(0);
}

double unitarity_defect(const Mat& a) {
    return (a.adjoint() * a - Mat::Identity(a.cols(), a.cols())).norm();
}

bool is_unitary(const Mat& a, double tol) {
    return a.rows() == a.cols() && unitarity_defect(a) <= tol;
}

double rel_diff(const Mat& a, const Mat& b) {
    return (a - b).norm() / std::max(1.0, b.norm());
}

Mat checked_inverse(const Mat& a, ErrorCode code, const char* what, double rcond_min) {
    if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, what);
    Eigen::PartialPivLU<Mat> lu(a);
    if (!(lu.rcond() > rcond_min)) throw Error(code, what);
    return lu.inverse();
}

Mat checked_solve(const Mat& a, const Mat& b, ErrorCode code, const char* what, double rcond_min) {
    if (a.rows() != a.cols() || a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, what);
    Eigen::PartialPivLU<Mat> lu(a);
    if (!(lu.rcond() > rcond_min)) throw Error(code, what);
    return lu.solve(b);
}

}  // namespace cmv
