#pragma once

#include <map>

#include "cmv/coefficients.hpp"

namespace cmv {

struct CmvOperatorSet {
    Mat V, W, U;
    int offset = 0;  // lattice index of block row/column zero
    int m = 1;
    int sites() const { return static_cast<int>(U.rows()) / m; }
    int first_site() const { return offset; }
    int last_site() const { return offset + sites() - 1; }
    // m x m block (k, k') of U in lattice indices.
    Mat block(int k, int kp) const { return U.block((k - offset) * m, (kp - offset) * m, m, m); }
};

struct SplitSpec {
    int k0 = 0;
    Mat gamma_left;
    Mat gamma_right;
};

// Finite window: sites k_min .. k_max-1. Theta_j occupies sites (j-1, j), in V for even j
// and in W for odd j. The unitary coefficients at k_min and k_max only leave the
// diagonal remnants alpha*_{k_min} at site k_min and -alpha_{k_max} at site k_max-1.
CmvOperatorSet assemble(const VerblunskySequence& seq);

// As assemble, but Theta_{k0} is replaced by diag(-gamma_left, gamma_right*), which severs
// the window between sites k0-1 and k0.
CmvOperatorSet assemble_split(const VerblunskySequence& seq, const SplitSpec& spec);

// U x using only the five block diagonals of U (the dense product costs N^2 blocks).
Mat banded_apply(const CmvOperatorSet& ops, const Mat& x);

// Block-diagonal site gauge: `on_odd` at odd sites, `on_even` at even sites, over the sites of `ops`.
Mat site_gauge(const CmvOperatorSet& ops, const Mat& on_odd, const Mat& on_even);

// Five-term form of U acting on a sequence of m-vectors (or m x r blocks).
// phi must be defined on [a-2, b+2]; the result is returned on [a, b].
// Coefficients a-1 .. b+2 are read, so they must lie inside the window.
std::map<int, Mat> apply_difference(const VerblunskySequence& seq, const std::map<int, Mat>& phi, int a, int b);

}  // namespace cmv
