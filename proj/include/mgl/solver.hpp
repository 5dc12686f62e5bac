#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mgl/lapmap.hpp"
#include "mgl/spectral.hpp"

namespace mgl {

enum class SolverMode { mgl, unconstrained, fixed_trace };

// Block coordinate descent for
//   min tr(C_hat S) - sum_{j >= q} log lambda_j + alpha ||S||_1
//       + beta/2 ||S - V diag(lambda) V^T||_F^2 + gamma * sum_t sigma_t c_g_t(lambda)
// over S in the zero-row-sum cone, orthonormal V, and lambda with the q
// smallest entries pinned at 0, subject to per-target spectral bounds:
// concave g keeps c_g >= value - delta, convex g keeps c_g <= value + delta,
// affine g keeps both. sigma is +1 / -1 / 0 for concave / convex / affine.
struct SolverConfig {
    double alpha = 0.0;
    double beta = 1.0;
    double gamma = 0.0;
    std::vector<SpectralTarget> targets;
    SolverMode mode = SolverMode::mgl;
    double fixed_trace_value = 0.0; // <= 0 means n
    int max_iters = 500;
    double rel_tol = 1e-6;
    int zero_eigs = 1;
    int step1_reps = 1;
    bool sqrt_ratio_majorizer = false;

    void validate(int n) const;
};

struct SolverState {
    int n = 0;
    Eigen::VectorXd s;      // nonnegative pair weights, S = materialized s
    Eigen::MatrixXd S;
    Eigen::MatrixXd V;
    Eigen::VectorXd lambda; // ascending, first zero_eigs entries exactly 0
    int iter = 0;
    bool converged = false;
    std::vector<double> objective_trace;
};

// One outer iteration runs step1, step2, step3 in that order. The trace gets
// one entry at initialization and one per iteration; it never increases.
SolverState solve(const Eigen::MatrixXd& c_hat, int n, const SolverConfig& cfg,
                  const SolverState* init = nullptr);

// Projected gradient step(s) on the weight vector for the S block.
void step1(SolverState& st, const Eigen::MatrixXd& c_hat, const SolverConfig& cfg);

// V block: eigenvectors of the current S, ascending.
void step2(SolverState& st);

// lambda block: exact minimization of the separable surrogate subject to the
// active spectral bound, via a scalar dual multiplier.
void step3(SolverState& st, const SolverConfig& cfg);

double objective(const SolverState& st, const Eigen::MatrixXd& c_hat, const SolverConfig& cfg);

// The S-block surrogate tr(K S(s)) + beta/2 ||S(s) - V diag(lambda) V^T||_F^2
// with K = C_hat + alpha H; step1 never increases it.
double step1_objective(const Eigen::VectorXd& s, const Eigen::MatrixXd& c_hat,
                       const SolverState& st, const SolverConfig& cfg);

// H realizing ||S||_1 = tr(H S) on the feasible cone: +1 diagonal, -1 off.
Eigen::MatrixXd sign_matrix(int n);

} // namespace mgl
