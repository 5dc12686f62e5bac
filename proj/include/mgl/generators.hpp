#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "mgl/graph.hpp"

namespace mgl {

// Synthetic graph families. All edges have unit weight; generation is a pure
// function of (params, seed).
struct GraphModel {
    std::string kind; // lattice | small_world | sbm
    int n = 0;
    int neighbors = 0;     // lattice, small_world: even count of ring neighbors
    double p_rewire = 0.0; // small_world
    int communities = 0;   // sbm
    double p_intra = 0.0;  // sbm edge probability within a community
    double p_inter = 0.0;  // sbm edge probability across communities
};

Graph generate(const GraphModel& model, uint64_t seed);

struct SignalBatch {
    Eigen::MatrixXd X; // n x m, one observation per column
    int m;
    uint64_t seed;
};

// Zero-mean GMRF draws with covariance pinv(gL): x = V+ diag(lambda+)^{-1/2} z
// over the strictly positive eigenpairs, the smallest q eigenvalues treated
// as the known null space. Column c depends only on (seed, c), so the batch
// is identical for any thread count.
SignalBatch sample_gmrf(const Eigen::MatrixXd& gL, int m, uint64_t seed, int q = 1);

// Single-threaded reference for sample_gmrf.
SignalBatch sample_gmrf_serial(const Eigen::MatrixXd& gL, int m, uint64_t seed, int q = 1);

// (1/M) X X^T
Eigen::MatrixXd empirical_covariance(const SignalBatch& b);

} // namespace mgl
