#pragma once

// Independent reference implementations the tests compare against. These
// deliberately avoid the library's algorithms: permutation search instead of
// canonical labeling, dense matrices instead of matrix-free operators, a
// penalty method instead of the dual bisection, grids instead of closed
// forms.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "mgl/graph.hpp"
#include "mgl/lapmap.hpp"
#include "mgl/spectral.hpp"

namespace oracle {

// Rooted isomorphism by exhaustive permutation search fixing local root 0.
// Only for balls with at most 8 nodes.
inline bool rooted_isomorphic(const mgl::Graph& a, const mgl::Graph& b) {
    if (a.n() != b.n()) return false;
    const int m = a.n();
    if (m > 8) throw std::runtime_error("brute-force oracle capped at 8 nodes");
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int i = 0; i < m && ok; ++i)
            for (int j = i + 1; j < m && ok; ++j) {
                const bool ea = a.weight(i, j) != 0.0;
                const bool eb = b.weight(perm[i], perm[j]) != 0.0;
                if (ea != eb) ok = false;
            }
        if (ok) return true;
        // keep position 0 fixed: permute only the tail
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    return false;
}

// Dense matrix of the composition adjoint(materialize(.)) built column by
// column from basis vectors.
inline Eigen::MatrixXd dense_gram(int n) {
    const int m = mgl::num_pairs(n);
    Eigen::MatrixXd g(m, m);
    for (int k = 0; k < m; ++k) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
        e[k] = 1.0;
        g.col(k) = mgl::adjoint_map(mgl::lap_apply(e, n));
    }
    return g;
}

// Ring graph eigenvalues 2 - 2 cos(2 pi j / n), ascending.
inline Eigen::VectorXd cycle_spectrum(int n) {
    Eigen::VectorXd lam(n);
    for (int j = 0; j < n; ++j) lam[j] = 2.0 - 2.0 * std::cos(2.0 * M_PI * j / n);
    std::sort(lam.data(), lam.data() + n);
    return lam;
}

// Derivative-free 1-d minimizer (golden section after bracket scan).
inline double minimize_scalar(const std::function<double(double)>& f, double lo, double hi) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 200 && (b - a) > 1e-14 * std::max(1.0, std::abs(b)); ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// Constrained eigenvalue subproblem solved by an increasing quadratic
// penalty with per-coordinate golden-section sweeps. lower/upper bound the
// spectral mean value (q * g(0) + sum g(lambda_j)) / n.
struct EigenvalueProblem {
    Eigen::VectorXd lhat;   // free targets
    Eigen::VectorXd coef;   // linear coefficients
    double beta;
    int n;                  // ambient spectrum size
    int pinned;
    const mgl::TestFunction* fn = nullptr; // constraint function, null = none
    double lower = -1e300;
    double upper = 1e300;

    double smooth(const Eigen::VectorXd& lam) const {
        double acc = 0.0;
        for (Eigen::Index j = 0; j < lam.size(); ++j)
            acc += -std::log(lam[j]) + 0.5 * beta * (lam[j] - lhat[j]) * (lam[j] - lhat[j]) +
                   coef[j] * lam[j];
        return acc;
    }

    // Hand-coded second derivatives of the registered test functions; the
    // library never needs or stores these.
    double gpp(double x) const {
        if (fn->name == "tr") return 0.0;
        if (fn->name == "heat") return std::exp(-x);
        if (fn->name == "sqrt") return -0.25 / (x * std::sqrt(x));
        if (fn->name == "sq") return 2.0;
        if (fn->name == "br") return 0.5;
        throw std::runtime_error("no second derivative for " + fn->name);
    }

    double cg(const Eigen::VectorXd& lam) const {
        double acc = pinned * fn->g(0.0);
        for (Eigen::Index j = 0; j < lam.size(); ++j) acc += fn->g(lam[j]);
        return acc / n;
    }

    double violation(const Eigen::VectorXd& lam) const {
        if (!fn) return 0.0;
        const double h = cg(lam);
        return std::max(0.0, lower - h) + std::max(0.0, h - upper);
    }

    // Augmented Lagrangian (method of multipliers): moderate rho keeps the
    // inner problem well conditioned, multiplier updates drive the bound
    // violation to zero without rho blowup.
    Eigen::VectorXd solve_penalty() const {
        const int nf = static_cast<int>(lhat.size());
        Eigen::VectorXd lam = Eigen::VectorXd::Ones(nf);
        double mu_up = 0.0, mu_lo = 0.0;
        double rho = 1e3;
        for (int outer = 0; outer < 60; ++outer) {
            auto augmented = [&](const Eigen::VectorXd& l) {
                double acc = smooth(l);
                if (fn) {
                    const double h = cg(l);
                    if (upper < 1e300) {
                        const double t = std::max(0.0, h - upper + mu_up / (2.0 * rho));
                        acc += rho * t * t;
                    }
                    if (lower > -1e300) {
                        const double t = std::max(0.0, lower - h + mu_lo / (2.0 * rho));
                        acc += rho * t * t;
                    }
                }
                return acc;
            };
            for (int sweep = 0; sweep < 400; ++sweep) {
                double moved = 0.0;
                for (int j = 0; j < nf; ++j) {
                    Eigen::VectorXd trial = lam;
                    auto f1 = [&](double x) {
                        trial[j] = x;
                        return augmented(trial);
                    };
                    const double hi = std::max(4.0 * std::abs(lhat[j]) + 16.0, 4.0 * lam[j]);
                    const double x = minimize_scalar(f1, 1e-9, hi);
                    moved = std::max(moved, std::abs(x - lam[j]));
                    lam[j] = x;
                }
                if (moved < 1e-13) break;
            }
            if (!fn) break;
            const double h = cg(lam);
            const double next_up =
                upper < 1e300 ? std::max(0.0, mu_up + 2.0 * rho * (h - upper)) : 0.0;
            const double next_lo =
                lower > -1e300 ? std::max(0.0, mu_lo + 2.0 * rho * (lower - h)) : 0.0;
            const double shift = std::abs(next_up - mu_up) + std::abs(next_lo - mu_lo);
            mu_up = next_up;
            mu_lo = next_lo;
            // stop on multiplier stabilization: the fixed point sits exactly
            // on the active boundary, a merely feasible iterate does not
            if (outer > 8 && shift <= 1e-9 * std::max(1.0, mu_up + mu_lo)) break;
            if (outer % 6 == 5) rho = std::min(rho * 5.0, 1e6);
        }
        if (!fn) return lam;
        // Primal-dual Newton polish on the active-bound KKT system; the
        // coordinate sweeps above globalize, Newton delivers the digits.
        double bound, nu;
        if (mu_up > mu_lo) {
            bound = upper;
            nu = mu_up;
        } else if (mu_lo > 0.0) {
            bound = lower;
            nu = -mu_lo;
        } else {
            return lam; // bound inactive: separable solution already exact
        }
        Eigen::VectorXd best = lam;
        double best_norm = 1e300;
        for (int it = 0; it < 100; ++it) {
            Eigen::VectorXd f(nf + 1);
            Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(nf + 1, nf + 1);
            for (int j = 0; j < nf; ++j) {
                f[j] = -1.0 / lam[j] + beta * (lam[j] - lhat[j]) + coef[j] +
                       nu * fn->g_prime(lam[j]) / n;
                jac(j, j) = 1.0 / (lam[j] * lam[j]) + beta + nu * gpp(lam[j]) / n;
                jac(j, nf) = fn->g_prime(lam[j]) / n;
                jac(nf, j) = fn->g_prime(lam[j]) / n;
            }
            f[nf] = cg(lam) - bound;
            const double fnorm = f.cwiseAbs().maxCoeff();
            if (fnorm < best_norm) {
                best_norm = fnorm;
                best = lam;
            }
            if (fnorm <= 1e-12) break;
            Eigen::VectorXd delta = jac.fullPivLu().solve(-f);
            double damp = 1.0;
            for (int j = 0; j < nf; ++j)
                while (lam[j] + damp * delta[j] <= 0.0) damp *= 0.5;
            lam += damp * delta.head(nf);
            nu += damp * delta[nf];
        }
        return best;
    }
};

// Dense 2x2 graphical lasso by grid refinement over (t11, t22, t12).
inline Eigen::MatrixXd glasso_2x2_grid(const Eigen::MatrixXd& c, double alpha) {
    auto value = [&](double t11, double t22, double t12) {
        const double det = t11 * t22 - t12 * t12;
        if (t11 <= 0.0 || det <= 0.0) return 1e300;
        return c(0, 0) * t11 + c(1, 1) * t22 + 2.0 * c(0, 1) * t12 - std::log(det) +
               2.0 * alpha * std::abs(t12);
    };
    double b11 = 1.0, b22 = 1.0, b12 = 0.0, radius = 8.0;
    for (int round = 0; round < 12; ++round) {
        double best = value(b11, b22, b12);
        double n11 = b11, n22 = b22, n12 = b12;
        const int steps = 20;
        for (int i = -steps; i <= steps; ++i)
            for (int j = -steps; j <= steps; ++j)
                for (int k = -steps; k <= steps; ++k) {
                    const double t11 = b11 + radius * i / steps;
                    const double t22 = b22 + radius * j / steps;
                    const double t12 = b12 + radius * k / steps;
                    const double v = value(t11, t22, t12);
                    if (v < best) {
                        best = v;
                        n11 = t11;
                        n22 = t22;
                        n12 = t12;
                    }
                }
        b11 = n11;
        b22 = n22;
        b12 = n12;
        radius *= 0.35;
    }
    Eigen::MatrixXd theta(2, 2);
    theta << b11, b12, b12, b22;
    return theta;
}

// Central finite difference.
inline double fd_slope(const std::function<double(double)>& g, double x, double h = 1e-6) {
    return (g(x + h) - g(x - h)) / (2.0 * h);
}

} // namespace oracle
