#include "mgl/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mgl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Effective bound pair per test function after merging multi-reference
// targets; sigma_active tells which side a dual multiplier acts on.
struct BoundGroup {
    TestFunction fn;
    double lower = -kInf;
    double upper = kInf;
};

std::vector<BoundGroup> bound_groups(const std::vector<SpectralTarget>& targets) {
    std::vector<BoundGroup> groups;
    for (const auto& t : targets) {
        BoundGroup* g = nullptr;
        for (auto& existing : groups)
            if (existing.fn.name == t.fn.name) g = &existing;
        if (!g) {
            groups.push_back({t.fn, -kInf, kInf});
            g = &groups.back();
        }
        switch (t.fn.curvature) {
            case Curvature::affine:
                g->lower = std::max(g->lower, t.value - t.delta);
                g->upper = std::min(g->upper, t.value + t.delta);
                break;
            case Curvature::concave:
                g->lower = std::max(g->lower, t.value - t.delta);
                break;
            case Curvature::convex:
                g->upper = std::min(g->upper, t.value + t.delta);
                break;
        }
    }
    for (const auto& g : groups)
        if (g.lower > g.upper)
            throw InfeasibleTargetsError("spectral bounds for " + g.fn.name + " are contradictory");
    return groups;
}

double slope(const TestFunction& fn, double x, bool sqrt_ratio) {
    if (sqrt_ratio && fn.name == "sqrt") {
        if (x <= 0.0) throw DomainError("sqrt slope undefined at 0");
        return 0.5 / x;
    }
    return fn.g_prime(x);
}

// Positive root of beta x^2 + (c - beta lhat) x - 1 = 0, cancellation-free
// on both signs of the linear coefficient.
double closed_form(double lhat, double c, double beta) {
    const double b = c - beta * lhat;
    const double disc = std::sqrt(b * b + 4.0 * beta);
    return b > 0.0 ? 2.0 / (b + disc) : (disc - b) / (2.0 * beta);
}

// Root of psi(x) = -1/x + beta (x - lhat) + c + nu_term * g'(x) on x > 0;
// psi is strictly increasing there for every registered test function.
double scalar_root(double lhat, double c, double beta, double nu_term, const TestFunction& fn,
                   bool sqrt_ratio, double guess) {
    auto psi = [&](double x) {
        return -1.0 / x + beta * (x - lhat) + c + nu_term * slope(fn, x, sqrt_ratio);
    };
    double hi = std::max(guess, 1e-8);
    int guard = 0;
    while (psi(hi) < 0.0) {
        hi *= 2.0;
        if (++guard > 400) throw Error("eigenvalue root bracket failed upward");
    }
    double lo = std::min(guess, hi);
    guard = 0;
    while (psi(lo) > 0.0) {
        lo *= 0.5;
        if (++guard > 2000) throw Error("eigenvalue root bracket failed downward");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (psi(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

struct LambdaProblem {
    Eigen::VectorXd lhat;  // free part of diag(V^T S V), ascending
    Eigen::VectorXd coef;  // summed majorizer coefficients
    double beta;
    int n;       // ambient spectrum size
    int pinned;  // zeros excluded from the free block
    bool sqrt_ratio;

    Eigen::VectorXd unconstrained() const {
        Eigen::VectorXd lam(lhat.size());
        for (Eigen::Index j = 0; j < lhat.size(); ++j)
            lam[j] = closed_form(lhat[j], coef[j], beta);
        return lam;
    }

    // lambda(nu) with the dual term sigma * nu acting through fn's slope.
    Eigen::VectorXd at_dual(const TestFunction& fn, double sigma, double nu,
                            const Eigen::VectorXd& guess) const {
        Eigen::VectorXd lam(lhat.size());
        const double nu_term = -sigma * nu / static_cast<double>(n);
        for (Eigen::Index j = 0; j < lhat.size(); ++j) {
            if (fn.curvature == Curvature::affine)
                lam[j] = closed_form(lhat[j], coef[j] + nu_term, beta);
            else
                lam[j] = scalar_root(lhat[j], coef[j], beta, nu_term, fn, sqrt_ratio, guess[j]);
        }
        return lam;
    }

    double spectral_value(const TestFunction& fn, const Eigen::VectorXd& lam) const {
        double acc = static_cast<double>(pinned) * fn.g(0.0);
        for (Eigen::Index j = 0; j < lam.size(); ++j) acc += fn.g(lam[j]);
        return acc / static_cast<double>(n);
    }

    // Enforce c_g = bound exactly; h(nu) moves monotonically toward the bound
    // as nu grows, so a doubling bracket plus bisection suffices.
    Eigen::VectorXd activate(const TestFunction& fn, double sigma, double bound,
                             const Eigen::VectorXd& start) const {
        const double tol = 1e-12 * std::max(1.0, std::abs(bound));
        Eigen::VectorXd lam = start;
        double nu_lo = 0.0, nu_hi = 1.0;
        for (int guard = 0;; ++guard) {
            lam = at_dual(fn, sigma, nu_hi, lam);
            const double resid = sigma * (spectral_value(fn, lam) - bound);
            if (resid >= 0.0) break;
            nu_lo = nu_hi;
            nu_hi *= 2.0;
            if (nu_hi > 1e18 || guard > 120)
                throw InfeasibleTargetsError("spectral bound for " + fn.name + " is unreachable");
        }
        for (int it = 0; it < 200; ++it) {
            const double nu = 0.5 * (nu_lo + nu_hi);
            lam = at_dual(fn, sigma, nu, lam);
            const double resid = sigma * (spectral_value(fn, lam) - bound);
            if (std::abs(resid) <= tol) break;
            (resid < 0.0 ? nu_lo : nu_hi) = nu;
            if (nu_hi - nu_lo <= 1e-16 * std::max(1.0, nu_hi)) break;
        }
        return lam;
    }
};

} // namespace

Eigen::MatrixXd sign_matrix(int n) {
    return 2.0 * Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Ones(n, n);
}

void SolverConfig::validate(int n) const {
    if (!(alpha >= 0.0)) throw InvalidParamsError("alpha must be >= 0");
    if (!(beta > 0.0)) throw InvalidParamsError("beta must be > 0");
    if (!(gamma >= 0.0)) throw InvalidParamsError("gamma must be >= 0");
    if (max_iters < 1) throw InvalidParamsError("max_iters must be >= 1");
    if (!(rel_tol >= 0.0)) throw InvalidParamsError("rel_tol must be >= 0");
    if (zero_eigs < 0 || zero_eigs >= n) throw InvalidParamsError("zero_eigs must be in [0, n)");
    if (step1_reps < 1) throw InvalidParamsError("step1_reps must be >= 1");
    if (mode == SolverMode::fixed_trace && fixed_trace_value > 0.0 &&
        !std::isfinite(fixed_trace_value))
        throw InvalidParamsError("fixed_trace_value must be finite");
}

void step1(SolverState& st, const Eigen::MatrixXd& c_hat, const SolverConfig& cfg) {
    const int n = st.n;
    const Eigen::MatrixXd k_mat = c_hat + cfg.alpha * sign_matrix(n);
    const Eigen::MatrixXd target = st.V * st.lambda.asDiagonal() * st.V.transpose();
    const Eigen::VectorXd z = adjoint_map(target - k_mat / cfg.beta);
    // Padding keeps the step below the exact 1/Lipschitz threshold even when
    // power iteration slightly underestimates the operator norm.
    const double lip = operator_norm_sq(n) * (1.0 + 1e-9);
    for (int rep = 0; rep < cfg.step1_reps; ++rep)
        st.s = (st.s - (gram_apply(st.s, n) - z) / lip).cwiseMax(0.0);
    st.S = lap_apply(st.s, n);
}

double step1_objective(const Eigen::VectorXd& s, const Eigen::MatrixXd& c_hat,
                       const SolverState& st, const SolverConfig& cfg) {
    const int n = st.n;
    const Eigen::MatrixXd k_mat = c_hat + cfg.alpha * sign_matrix(n);
    const Eigen::MatrixXd ss = lap_apply(s, n);
    const Eigen::MatrixXd target = st.V * st.lambda.asDiagonal() * st.V.transpose();
    return k_mat.cwiseProduct(ss).sum() + 0.5 * cfg.beta * (ss - target).squaredNorm();
}

void step2(SolverState& st) { st.V = eig_sym(st.S).eigenvectors; }

void step3(SolverState& st, const SolverConfig& cfg) {
    const int n = st.n;
    const int q = cfg.zero_eigs;
    const int nf = n - q;
    st.lambda.head(q).setZero();
    if (nf == 0) return;

    LambdaProblem prob;
    prob.lhat = (st.V.transpose() * st.S * st.V).diagonal().tail(nf);
    prob.beta = cfg.beta;
    prob.n = n;
    prob.pinned = q;
    prob.sqrt_ratio = cfg.sqrt_ratio_majorizer;
    prob.coef = Eigen::VectorXd::Zero(nf);
    const Eigen::VectorXd lprev = st.lambda.tail(nf);
    for (const auto& t : cfg.targets)
        prob.coef += majorizer_coeffs(t.fn, lprev, cfg.gamma, n, cfg.sqrt_ratio_majorizer);

    Eigen::VectorXd lam = prob.unconstrained();
    const auto groups = bound_groups(cfg.targets);
    // Activate the most violated bound, re-solve, re-check. One dual at a
    // time; simultaneous active constraints across distinct test functions
    // are out of scope.
    for (size_t round = 0; round <= groups.size(); ++round) {
        const BoundGroup* worst = nullptr;
        double worst_gap = 1e-11;
        double worst_sigma = 0.0, worst_bound = 0.0;
        for (const auto& g : groups) {
            const double h = prob.spectral_value(g.fn, lam);
            if (g.lower > -kInf && g.lower - h > worst_gap) {
                worst = &g;
                worst_gap = g.lower - h;
                worst_sigma = 1.0;
                worst_bound = g.lower;
            }
            if (g.upper < kInf && h - g.upper > worst_gap) {
                worst = &g;
                worst_gap = h - g.upper;
                worst_sigma = -1.0;
                worst_bound = g.upper;
            }
        }
        if (!worst) break;
        lam = prob.activate(worst->fn, worst_sigma, worst_bound, lam);
    }

    st.lambda.tail(nf) = lam;
    // The update preserves the ascending order of lhat for every registered
    // test function; re-sort jointly with V as a safety net.
    for (int j = 1; j < nf; ++j) {
        if (st.lambda[q + j] >= st.lambda[q + j - 1]) continue;
        std::vector<int> idx(nf);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](int a, int b) { return st.lambda[q + a] < st.lambda[q + b]; });
        const Eigen::VectorXd lam_old = st.lambda.tail(nf);
        const Eigen::MatrixXd v_old = st.V.rightCols(nf);
        for (int t = 0; t < nf; ++t) {
            st.lambda[q + t] = lam_old[idx[t]];
            st.V.col(q + t) = v_old.col(idx[t]);
        }
        break;
    }
}

double objective(const SolverState& st, const Eigen::MatrixXd& c_hat, const SolverConfig& cfg) {
    const int q = cfg.zero_eigs;
    double obj = c_hat.cwiseProduct(st.S).sum();
    for (int j = q; j < st.n; ++j) obj -= std::log(st.lambda[j]);
    obj += cfg.alpha * st.S.cwiseAbs().sum();
    const Eigen::MatrixXd target = st.V * st.lambda.asDiagonal() * st.V.transpose();
    obj += 0.5 * cfg.beta * (st.S - target).squaredNorm();
    for (const auto& t : cfg.targets) {
        if (t.fn.curvature == Curvature::affine) continue;
        const double sigma = t.fn.curvature == Curvature::concave ? 1.0 : -1.0;
        obj += cfg.gamma * sigma * c_g(st.lambda, t.fn);
    }
    return obj;
}

namespace {

// Least-squares weights for S(w) ~ target: conjugate gradient on the normal
// equations; the composition S* o S is positive definite (smallest
// eigenvalue 2).
Eigen::VectorXd invert_weights(const Eigen::MatrixXd& target) {
    const int n = static_cast<int>(target.rows());
    const Eigen::VectorXd rhs = adjoint_map(target);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(rhs.size());
    Eigen::VectorXd r = rhs;
    Eigen::VectorXd p = r;
    double rr = r.squaredNorm();
    const double tol2 = 1e-24 * std::max(rhs.squaredNorm(), 1e-300);
    for (int it = 0; it < 400 && rr > tol2; ++it) {
        const Eigen::VectorXd gp = gram_apply(p, n);
        const double a = rr / p.dot(gp);
        x += a * p;
        r -= a * gp;
        const double rr_next = r.squaredNorm();
        p = r + (rr_next / rr) * p;
        rr = rr_next;
    }
    return x;
}

SolverConfig effective_config(const SolverConfig& cfg, int n) {
    SolverConfig eff = cfg;
    switch (cfg.mode) {
        case SolverMode::unconstrained:
            eff.targets.clear();
            eff.gamma = 0.0;
            break;
        case SolverMode::fixed_trace: {
            const double v = cfg.fixed_trace_value > 0.0 ? cfg.fixed_trace_value
                                                         : static_cast<double>(n);
            eff.targets = {SpectralTarget(test_function("tr"), v / static_cast<double>(n), 0.0)};
            break;
        }
        case SolverMode::mgl:
            // An empty target list degenerates to the unconstrained variant.
            break;
    }
    return eff;
}

} // namespace

SolverState solve(const Eigen::MatrixXd& c_hat, int n, const SolverConfig& cfg,
                  const SolverState* init) {
    if (n < 2) throw InvalidParamsError("solver needs n >= 2");
    if (c_hat.rows() != n || c_hat.cols() != n)
        throw DimensionMismatchError("covariance must be n x n");
    if (!c_hat.allFinite()) throw NonFiniteInputError("covariance has non-finite entries");
    cfg.validate(n);
    const SolverConfig eff = effective_config(cfg, n);

    SolverState st;
    st.n = n;
    if (init) {
        if (init->n != n || init->s.size() != num_pairs(n))
            throw DimensionMismatchError("initial state has wrong dimensions");
        st = *init;
        st.objective_trace.clear();
        st.iter = 0;
        st.converged = false;
    } else {
        st.s = invert_weights(pinv_psd(c_hat)).cwiseMax(0.0);
        st.S = lap_apply(st.s, n);
        Spectrum sp = eig_sym(st.S);
        st.V = sp.eigenvectors;
        st.lambda = sp.eigenvalues;
    }
    // Feasibility pass: raw eigenvalues of the initial S may be zero or
    // slightly negative; clamp before evaluating majorizer slopes, then let
    // step3 produce a positive, bound-respecting spectrum.
    const double floor_val = 1e-10 * std::max(1.0, st.lambda.cwiseAbs().maxCoeff());
    for (int j = eff.zero_eigs; j < n; ++j) st.lambda[j] = std::max(st.lambda[j], floor_val);
    step3(st, eff);
    st.objective_trace.push_back(objective(st, c_hat, eff));

    for (int t = 0; t < eff.max_iters; ++t) {
        const Eigen::MatrixXd s_prev = st.S;
        step1(st, c_hat, eff);
        step2(st);
        step3(st, eff);
        st.iter = t + 1;
        st.objective_trace.push_back(objective(st, c_hat, eff));
        const double denom = std::max(s_prev.norm(), 1e-12);
        if ((st.S - s_prev).norm() / denom < eff.rel_tol) {
            st.converged = true;
            break;
        }
    }
    return st;
}

} // namespace mgl
