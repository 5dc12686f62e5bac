#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "mgl/graph.hpp"

namespace mgl {

enum class Curvature { affine, convex, concave };

// Scalar test function g with gradient; c_g(lambda) = mean of g over the
// spectrum. The curvature class decides how the similarity constraint
// c_g within [value - delta, value + delta] is relaxed: concave keeps the
// lower bound, convex the upper, affine keeps both exactly.
struct TestFunction {
    std::string name;
    Curvature curvature;
    double (*g)(double);
    double (*g_prime)(double);
};

// Registry lookup by cli/config name: tr | heat | sqrt | sq | br.
const TestFunction& test_function(const std::string& name);
const std::vector<TestFunction>& all_test_functions();

struct SpectralTarget {
    TestFunction fn;
    double value;
    double delta;
    std::string source; // reference_graph | ensemble_density | explicit

    SpectralTarget(TestFunction f, double v, double d, std::string src = "explicit")
        : fn(std::move(f)), value(v), delta(d), source(std::move(src)) {
        if (!(delta >= 0.0)) throw InvalidParamsError("target delta must be nonnegative");
        if (!std::isfinite(value)) throw NonFiniteInputError("target value must be finite");
    }
};

struct Spectrum {
    Eigen::VectorXd eigenvalues;  // ascending
    Eigen::MatrixXd eigenvectors; // columns aligned, first nonzero entry > 0
};

// Deterministic symmetric eigendecomposition; symmetrizes the input first.
Spectrum eig_sym(const Eigen::MatrixXd& s);

double c_g(const Eigen::VectorXd& lambda, const TestFunction& f);

// Per-coordinate linear coefficient of the similarity surrogate added to the
// eigenvalue subproblem: +-(gamma/N) g'(lambda_prev_i), sign by curvature,
// zero for affine. N = ambient_n when given (the full spectrum size when
// lambda_prev is only its free part), else lambda_prev.size().
// sqrt_ratio_form switches the square-root surrogate to the slope 1/(2 x)
// instead of the Taylor slope 1/(2 sqrt(x)).
Eigen::VectorXd majorizer_coeffs(const TestFunction& f, const Eigen::VectorXd& lambda_prev,
                                 double gamma, int ambient_n = -1,
                                 bool sqrt_ratio_form = false);

// Moore-Penrose pseudoinverse of a symmetric PSD matrix, eigenvalues below
// 1e-10 * max treated as zero.
Eigen::MatrixXd pinv_psd(const Eigen::MatrixXd& a);

// Empirical check of the motif-similarity => spectral-similarity implication:
// census distance epsilon and per-function |c_g(lambda1) - c_g(lambda2)| on
// the Laplacian spectra.
struct TheoremReport {
    double epsilon;
    struct Entry {
        std::string fn;
        double cg1, cg2, delta;
    };
    std::vector<Entry> entries;
};

TheoremReport theorem1_check(const Graph& g1, const Graph& g2, int r,
                             const std::vector<TestFunction>& fns);

} // namespace mgl
