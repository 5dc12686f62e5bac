#include "mgl/generators.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "mgl/rng.hpp"
#include "mgl/spectral.hpp"

namespace mgl {

namespace {

Eigen::MatrixXd ring_lattice(int n, int k) {
    if (n < 3) throw InvalidParamsError("ring lattice needs n >= 3");
    if (k < 2 || k % 2 != 0 || k >= n)
        throw InvalidParamsError("ring lattice needs even neighbors in [2, n)");
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int d = 1; d <= k / 2; ++d) {
            const int j = (i + d) % n;
            a(i, j) = 1.0;
            a(j, i) = 1.0;
        }
    return a;
}

Graph make_lattice(const GraphModel& m) { return Graph::from_adjacency(ring_lattice(m.n, m.neighbors)); }

Graph make_small_world(const GraphModel& m, uint64_t seed) {
    if (m.p_rewire < 0.0 || m.p_rewire > 1.0)
        throw InvalidParamsError("rewire probability must be in [0,1]");
    Eigen::MatrixXd a = ring_lattice(m.n, m.neighbors);
    auto rng = make_rng(seed);
    std::bernoulli_distribution flip(m.p_rewire);
    // Lattice edges visited in fixed (distance, node) order; a rewired edge
    // keeps endpoint i and moves the far end to a uniform non-neighbor.
    for (int d = 1; d <= m.neighbors / 2; ++d)
        for (int i = 0; i < m.n; ++i) {
            const int j = (i + d) % m.n;
            if (a(i, j) == 0.0) continue; // already rewired away
            if (!flip(rng)) continue;
            std::vector<int> candidates;
            for (int t = 0; t < m.n; ++t)
                if (t != i && a(i, t) == 0.0) candidates.push_back(t);
            if (candidates.empty()) continue;
            std::uniform_int_distribution<size_t> pick(0, candidates.size() - 1);
            const int t = candidates[pick(rng)];
            a(i, j) = a(j, i) = 0.0;
            a(i, t) = a(t, i) = 1.0;
        }
    return Graph::from_adjacency(std::move(a));
}

Graph make_sbm(const GraphModel& m, uint64_t seed) {
    if (m.n < 1) throw InvalidParamsError("sbm needs n >= 1");
    if (m.communities < 1 || m.communities > m.n)
        throw InvalidParamsError("sbm needs 1 <= communities <= n");
    if (m.p_intra < 0.0 || m.p_intra > 1.0 || m.p_inter < 0.0 || m.p_inter > 1.0)
        throw InvalidParamsError("sbm probabilities must be in [0,1]");
    // Contiguous near-equal blocks, the first n % K blocks one node larger.
    std::vector<int> block(m.n);
    const int base = m.n / m.communities, extra = m.n % m.communities;
    for (int b = 0, v = 0; b < m.communities; ++b) {
        const int size = base + (b < extra ? 1 : 0);
        for (int t = 0; t < size; ++t) block[v++] = b;
    }
    auto rng = make_rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m.n, m.n);
    for (int i = 0; i < m.n; ++i)
        for (int j = i + 1; j < m.n; ++j) {
            const double p = block[i] == block[j] ? m.p_intra : m.p_inter;
            if (unif(rng) < p) a(i, j) = a(j, i) = 1.0;
        }
    return Graph::from_adjacency(std::move(a));
}

} // namespace

Graph generate(const GraphModel& model, uint64_t seed) {
    if (model.kind == "lattice") return make_lattice(model);
    if (model.kind == "small_world") return make_small_world(model, seed);
    if (model.kind == "sbm") return make_sbm(model, seed);
    throw InvalidParamsError("unknown graph model: " + model.kind);
}

namespace {

struct GmrfBasis {
    Eigen::MatrixXd vplus;      // n x (n-q)
    Eigen::VectorXd inv_sqrt;   // (lambda+)^(-1/2)
};

GmrfBasis gmrf_basis(const Eigen::MatrixXd& gL, int q) {
    const int n = static_cast<int>(gL.rows());
    if (q < 1 || q >= n) throw InvalidParamsError("rank deficiency q must be in [1, n)");
    Spectrum sp = eig_sym(gL);
    if (sp.eigenvalues[0] < -1e-8) throw NotPsdError("matrix has eigenvalue below -1e-8");
    const double cut = 1e-10 * std::max(sp.eigenvalues[n - 1], 0.0);
    if (sp.eigenvalues[q] <= cut)
        throw InvalidParamsError("null space is larger than the declared q");
    GmrfBasis b;
    b.vplus = sp.eigenvectors.rightCols(n - q);
    b.inv_sqrt.resize(n - q);
    for (int j = 0; j < n - q; ++j) b.inv_sqrt[j] = 1.0 / std::sqrt(sp.eigenvalues[q + j]);
    return b;
}

Eigen::VectorXd gmrf_column(const GmrfBasis& b, uint64_t seed, int col) {
    auto rng = make_rng(derive_seed(seed, {stream::column, static_cast<uint64_t>(col)}));
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd z(b.inv_sqrt.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = normal(rng) * b.inv_sqrt[i];
    return b.vplus * z;
}

} // namespace

SignalBatch sample_gmrf(const Eigen::MatrixXd& gL, int m, uint64_t seed, int q) {
    if (m < 1) throw InvalidParamsError("sample count must be >= 1");
    const GmrfBasis b = gmrf_basis(gL, q);
    SignalBatch out{Eigen::MatrixXd(gL.rows(), m), m, seed};
#pragma omp parallel for schedule(static)
    for (int c = 0; c < m; ++c) out.X.col(c) = gmrf_column(b, seed, c);
    return out;
}

SignalBatch sample_gmrf_serial(const Eigen::MatrixXd& gL, int m, uint64_t seed, int q) {
    if (m < 1) throw InvalidParamsError("sample count must be >= 1");
    const GmrfBasis b = gmrf_basis(gL, q);
    SignalBatch out{Eigen::MatrixXd(gL.rows(), m), m, seed};
    for (int c = 0; c < m; ++c) out.X.col(c) = gmrf_column(b, seed, c);
    return out;
}

Eigen::MatrixXd empirical_covariance(const SignalBatch& b) {
    if (b.m < 1 || b.X.cols() != b.m) throw InvalidParamsError("batch needs m >= 1 columns");
    if (!b.X.allFinite()) throw NonFiniteInputError("signal batch has non-finite entries");
    Eigen::MatrixXd c = b.X * b.X.transpose() / static_cast<double>(b.m);
    return 0.5 * (c + c.transpose());
}

} // namespace mgl
