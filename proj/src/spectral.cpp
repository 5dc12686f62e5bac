#include "mgl/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "mgl/motif.hpp"

namespace mgl {

namespace {

double g_tr(double x) { return x; }
double gp_tr(double) { return 1.0; }

// exp argument clamped so divergent iterates cannot overflow
double g_heat(double x) { return std::exp(-std::clamp(x, -50.0, 50.0)); }
double gp_heat(double x) { return -std::exp(-std::clamp(x, -50.0, 50.0)); }

double g_sqrt(double x) {
    if (x < -1e-10) throw DomainError("sqrt test function needs lambda >= 0");
    return std::sqrt(std::max(x, 0.0));
}
double gp_sqrt(double x) {
    if (x <= 0.0) throw DomainError("sqrt slope undefined at 0");
    return 0.5 / std::sqrt(x);
}

double g_sq(double x) { return x * x; }
double gp_sq(double x) { return 2.0 * x; }

double g_br(double x) { return (x - 1.5) * (x - 1.5) / 4.0; }
double gp_br(double x) { return (x - 1.5) / 2.0; }

const std::vector<TestFunction> kRegistry = {
    {"tr", Curvature::affine, g_tr, gp_tr},
    {"heat", Curvature::convex, g_heat, gp_heat},
    {"sqrt", Curvature::concave, g_sqrt, gp_sqrt},
    {"sq", Curvature::convex, g_sq, gp_sq},
    {"br", Curvature::convex, g_br, gp_br},
};

} // namespace

const std::vector<TestFunction>& all_test_functions() { return kRegistry; }

const TestFunction& test_function(const std::string& name) {
    for (const auto& f : kRegistry)
        if (f.name == name) return f;
    throw InvalidParamsError("unknown test function: " + name);
}

Spectrum eig_sym(const Eigen::MatrixXd& s) {
    if (s.rows() != s.cols()) throw DimensionMismatchError("eig_sym needs a square matrix");
    if (!s.allFinite()) throw NonFiniteInputError("eig_sym input has non-finite entries");
    Eigen::MatrixXd sym = 0.5 * (s + s.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    if (es.info() != Eigen::Success) throw Error("symmetric eigensolver failed");
    Spectrum out{es.eigenvalues(), es.eigenvectors()};
    const int n = static_cast<int>(sym.rows());
    for (int j = 0; j < n; ++j) {
        const double scale = out.eigenvectors.col(j).norm();
        for (int i = 0; i < n; ++i) {
            const double v = out.eigenvectors(i, j);
            if (std::abs(v) > 1e-12 * scale) {
                if (v < 0.0) out.eigenvectors.col(j) = -out.eigenvectors.col(j);
                break;
            }
        }
    }
    return out;
}

double c_g(const Eigen::VectorXd& lambda, const TestFunction& f) {
    if (lambda.size() == 0) throw InvalidParamsError("c_g of empty spectrum");
    if (!lambda.allFinite()) throw NonFiniteInputError("c_g input has non-finite entries");
    double acc = 0.0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) acc += f.g(lambda[i]);
    return acc / static_cast<double>(lambda.size());
}

Eigen::VectorXd majorizer_coeffs(const TestFunction& f, const Eigen::VectorXd& lambda_prev,
                                 double gamma, int ambient_n, bool sqrt_ratio_form) {
    const int n = ambient_n < 0 ? static_cast<int>(lambda_prev.size()) : ambient_n;
    if (n < 1) throw InvalidParamsError("majorizer needs a nonempty spectrum");
    Eigen::VectorXd c = Eigen::VectorXd::Zero(lambda_prev.size());
    if (f.curvature == Curvature::affine) return c;
    const double sign = f.curvature == Curvature::concave ? 1.0 : -1.0;
    for (Eigen::Index i = 0; i < lambda_prev.size(); ++i) {
        double slope;
        if (sqrt_ratio_form && f.name == "sqrt") {
            if (lambda_prev[i] <= 0.0) throw DomainError("sqrt slope undefined at 0");
            slope = 0.5 / lambda_prev[i];
        } else {
            slope = f.g_prime(lambda_prev[i]);
        }
        c[i] = sign * gamma / static_cast<double>(n) * slope;
    }
    return c;
}

Eigen::MatrixXd pinv_psd(const Eigen::MatrixXd& a) {
    Spectrum sp = eig_sym(a);
    const int n = static_cast<int>(a.rows());
    const double lmax = sp.eigenvalues.size() ? sp.eigenvalues[n - 1] : 0.0;
    const double cut = 1e-10 * std::max(lmax, 0.0);
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i)
        if (sp.eigenvalues[i] > cut) inv[i] = 1.0 / sp.eigenvalues[i];
    return sp.eigenvectors * inv.asDiagonal() * sp.eigenvectors.transpose();
}

TheoremReport theorem1_check(const Graph& g1, const Graph& g2, int r,
                             const std::vector<TestFunction>& fns) {
    TheoremReport rep;
    rep.epsilon = census_distance(motif_census(g1, r), motif_census(g2, r));
    const Eigen::VectorXd l1 = eig_sym(laplacian(g1)).eigenvalues;
    const Eigen::VectorXd l2 = eig_sym(laplacian(g2)).eigenvalues;
    for (const auto& f : fns) {
        const double a = c_g(l1, f);
        const double b = c_g(l2, f);
        rep.entries.push_back({f.name, a, b, std::abs(a - b)});
    }
    return rep;
}

} // namespace mgl
