#pragma once

#include <Eigen/Dense>

#include "mgl/errors.hpp"

namespace mgl {

// Vectorized Laplacian parametrization: a nonnegative weight vector s of
// length n(n-1)/2 indexed row-major over the strict upper triangle. The
// linear map S(s) produces the Laplacian with off-diagonals -s and exactly
// zero row sums; adjoint_map is its adjoint under the Frobenius product.

inline int num_pairs(int n) { return n * (n - 1) / 2; }

// k for the pair (i,j) with i < j.
inline int pair_index(int i, int j, int n) { return i * n - i * (i + 1) / 2 + (j - i - 1); }

struct Pair {
    int i, j;
};
Pair pair_from_index(int k, int n);

struct LaplacianWeights {
    int n;
    Eigen::VectorXd s;

    LaplacianWeights(int n_, Eigen::VectorXd s_) : n(n_), s(std::move(s_)) {
        if (n < 2) throw InvalidParamsError("weight vector needs n >= 2");
        if (s.size() != num_pairs(n)) throw DimensionMismatchError("weight vector has wrong length");
        for (Eigen::Index k = 0; k < s.size(); ++k)
            if (!(s[k] >= 0.0)) throw InvalidParamsError("weights must be nonnegative");
    }
};

// S(s): diagonal set to the negated ordered sum of the off-diagonal row, so
// row sums are exactly zero in floating point.
Eigen::MatrixXd materialize(const LaplacianWeights& w);

// Same map without the nonnegativity requirement (used inside the solver on
// intermediate vectors).
Eigen::MatrixXd lap_apply(const Eigen::VectorXd& s, int n);

// (S* Y)_k = Y_ii + Y_jj - Y_ij - Y_ji for the pair (i,j) of index k.
Eigen::VectorXd adjoint_map(const Eigen::MatrixXd& y);

// S*(S(s)) without materializing the n x n matrix: entry k for pair (i,j) is
// 2 s_k + rowsum_i + rowsum_j where rowsum_i sums s over pairs incident to i.
Eigen::VectorXd gram_apply(const Eigen::VectorXd& s, int n);

// Largest eigenvalue of S* o S, i.e. the squared operator norm of S(.),
// by power iteration to 1e-10 relative tolerance. Cached per n; the cache is
// safe for concurrent callers.
double operator_norm_sq(int n);

} // namespace mgl
