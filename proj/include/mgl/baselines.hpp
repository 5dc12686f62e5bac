#pragma once

#include <Eigen/Dense>

#include "mgl/solver.hpp"

namespace mgl {

// Reference estimators the experiment harness compares against.

Eigen::MatrixXd pinv_estimator(const Eigen::MatrixXd& c_hat);

struct GlassoResult {
    Eigen::MatrixXd theta;
    bool converged;
    int iters;
    double gap; // duality gap at exit
};

// L1-penalized Gaussian maximum likelihood, off-diagonals penalized only,
// by block coordinate descent over columns with an inner lasso. Failure to
// reach the gap tolerance is flagged, not thrown.
GlassoResult glasso_estimator(const Eigen::MatrixXd& c_hat, double alpha, int max_iters = 200,
                              double tol = 1e-6);

struct BaselineExtras {
    SolverConfig solver;         // for tr_fixed | unc, mode fields overridden
    double glasso_alpha = 0.1;   // for glasso
    int glasso_max_iters = 200;
    double glasso_tol = 1e-6;
};

// kind: pinv | glasso | tr_fixed | unc. Uniform return shape for the harness.
Eigen::MatrixXd run_baseline(const std::string& kind, const Eigen::MatrixXd& c_hat, int n,
                             const BaselineExtras& extras);

} // namespace mgl
