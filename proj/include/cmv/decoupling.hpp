#pragma once

#include <vector>

#include "cmv/assembly.hpp"

namespace cmv {

inline constexpr double kRankTol = 1e-8;

struct PhaseSolution {
    std::vector<double> s;
    std::vector<double> t;
    Mat gamma1;
    Mat gamma2;
};

struct ResolventRank {
    cplx z;
    int rank = 0;
};

struct DecouplingReport {
    Mat local_block;
    Eigen::VectorXd singular_values;  // of local_block
    int op_rank = 0;
    std::vector<ResolventRank> resolvent_ranks;
    bool minimal = false;
};

// [[-alpha + g1, rho~], [rho, alpha* - g2*]] at k0.
Mat local_block(const VerblunskySequence& seq, int k0, const Mat& gamma1, const Mat& gamma2);
Mat local_block(const Mat& alpha_k0, const Mat& gamma1, const Mat& gamma2);

Eigen::VectorXd singular_values(const Mat& a);
int numerical_rank(const Mat& a, double rtol = kRankTol);

// t_j = 2 arg[i(beta_j e^{-i s_j/2} - e^{i s_j/2})], normalized to [0, 2 pi).
PhaseSolution minimal_phases(const Mat& alpha_k0, const std::vector<double>& s);
// gamma1 = sigma diag(e^{i t}) tau*, gamma2 = sigma diag(e^{i s}) tau* for arbitrary phases.
PhaseSolution phases_to_gammas(const Mat& alpha_k0, const std::vector<double>& s, const std::vector<double>& t);

// Scalar form on the raw coefficient: gamma1 = e^{i t1}, gamma2 = e^{i t2}.
double scalar_minimal_t1(cplx alpha, double t2);
cplx det_criterion(cplx alpha, double t1, double t2);

// Default z samples: four points on |z| = 0.5 and four on |z| = 2.
std::vector<cplx> default_z_samples();

DecouplingReport decoupling_report(const VerblunskySequence& seq, int k0, const Mat& gamma1, const Mat& gamma2,
                                   const std::vector<cplx>& z_samples, double rtol = kRankTol);

}  // namespace cmv
