#include "cmv/assembly.hpp"

#include <algorithm>
#include <string>

namespace cmv {

namespace {

void place(Mat& target, const Mat& theta, int j, int first, int last, int m) {
    const int s[2] = {j - 1, j};
    for (int a = 0; a < 2; ++a) {
        if (s[a] < first || s[a] > last) continue;
        for (int b = 0; b < 2; ++b) {
            if (s[b] < first || s[b] > last) continue;
            target.block((s[a] - first) * m, (s[b] - first) * m, m, m) = theta.block(a * m, b * m, m, m);
        }
    }
}

CmvOperatorSet build(const VerblunskySequence& seq, const SplitSpec* spec) {
    const int m = seq.m();
    const int first = seq.k_min();
    const int last = seq.k_max() - 1;
    const int n = seq.sites();
    if (n < 4) throw Error(ErrorCode::WindowTooSmall, "window needs at least 4 sites, has " + std::to_string(n));
    CmvOperatorSet ops;
    ops.m = m;
    ops.offset = first;
    ops.V = Mat::Zero(n * m, n * m);
    ops.W = Mat::Zero(n * m, n * m);
    for (int j = seq.k_min(); j <= seq.k_max(); ++j) {
        Mat th;
        if (spec && j == spec->k0)
            th = split_block(spec->gamma_left, spec->gamma_right);
        else if (seq.is_boundary(j))
            th = split_block(seq.alpha(j), seq.alpha(j));
        else
            th = theta_block(seq.alpha(j), seq.defects(j));
        place(parity(j) == 0 ? ops.V : ops.W, th, j, first, last, m);
    }
    ops.U = ops.V * ops.W;
    return ops;
}

}  // namespace

CmvOperatorSet assemble(const VerblunskySequence& seq) { return build(seq, nullptr); }

CmvOperatorSet assemble_split(const VerblunskySequence& seq, const SplitSpec& spec) {
    if (spec.k0 <= seq.k_min() || spec.k0 >= seq.k_max())
        throw Error(ErrorCode::SplitOutOfWindow, "k0 = " + std::to_string(spec.k0));
    if (spec.gamma_left.rows() != seq.m() || spec.gamma_right.rows() != seq.m())
        throw Error(ErrorCode::DimensionMismatch, "split gammas");
    if (!is_unitary(spec.gamma_left, 1e-9) || !is_unitary(spec.gamma_right, 1e-9))
        throw Error(ErrorCode::NotUnitary, "split gammas");
    return build(seq, &spec);
}

Mat banded_apply(const CmvOperatorSet& ops, const Mat& x) {
    const int m = ops.m, n = ops.sites();
    if (x.rows() != ops.U.rows()) throw Error(ErrorCode::DimensionMismatch, "banded_apply");
    Mat y = Mat::Zero(x.rows(), x.cols());
    for (int i = 0; i < n; ++i)
        for (int j = std::max(0, i - 2); j <= std::min(n - 1, i + 2); ++j)
            y.middleRows(i * m, m).noalias() += ops.U.block(i * m, j * m, m, m) * x.middleRows(j * m, m);
    return y;
}

Mat site_gauge(const CmvOperatorSet& ops, const Mat& on_odd, const Mat& on_even) {
    const int m = ops.m;
    Mat g = Mat::Zero(ops.U.rows(), ops.U.cols());
    for (int k = ops.first_site(); k <= ops.last_site(); ++k)
        g.block((k - ops.offset) * m, (k - ops.offset) * m, m, m) = parity(k) == 1 ? on_odd : on_even;
    return g;
}

std::map<int, Mat> apply_difference(const VerblunskySequence& seq, const std::map<int, Mat>& phi, int a, int b) {
    for (int k = a - 2; k <= b + 2; ++k)
        if (!phi.count(k)) throw Error(ErrorCode::InsufficientPadding, "phi missing at site " + std::to_string(k));
    if (a - 1 < seq.k_min() || b + 2 > seq.k_max())
        throw Error(ErrorCode::InsufficientPadding, "coefficients needed outside the window");
    std::map<int, Mat> out;
    for (int k = a; k <= b; ++k) {
        const Mat& al = seq.alpha(k);
        const Mat& alp = seq.alpha(k + 1);
        Mat r;
        if (parity(k) == 0) {
            const Mat& rho = seq.defects(k).rho;
            r = rho * seq.defects(k - 1).rho * phi.at(k - 2) + rho * seq.alpha(k - 1).adjoint() * phi.at(k - 1) -
                al.adjoint() * alp * phi.at(k) + al.adjoint() * seq.defects(k + 1).rho_tilde * phi.at(k + 1);
        } else {
            const Mat& rtp = seq.defects(k + 1).rho_tilde;
            // The S^- coefficient is -alpha_{k+1} rho_k, the value produced by V W.
            r = -alp * seq.defects(k).rho * phi.at(k - 1) - alp * al.adjoint() * phi.at(k) -
                rtp * seq.alpha(k + 2) * phi.at(k + 1) + rtp * seq.defects(k + 2).rho_tilde * phi.at(k + 2);
        }
        out.emplace(k, std::move(r));
    }
    return out;
}

}  // namespace cmv
