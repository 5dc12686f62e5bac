#include "mgl/lapmap.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "mgl/rng.hpp"

namespace mgl {

Pair pair_from_index(int k, int n) {
    if (k < 0 || k >= num_pairs(n)) throw InvalidParamsError("pair index out of range");
    int i = 0;
    while (k >= n - 1 - i) {
        k -= n - 1 - i;
        ++i;
    }
    return {i, i + 1 + k};
}

Eigen::MatrixXd lap_apply(const Eigen::VectorXd& s, int n) {
    if (s.size() != num_pairs(n)) throw DimensionMismatchError("weight vector has wrong length");
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    int k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++k) {
            out(i, j) = -s[k];
            out(j, i) = -s[k];
        }
    // Diagonal as the negated ordered row sum: row sums vanish exactly.
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j)
            if (j != i) acc += out(i, j);
        out(i, i) = -acc;
    }
    return out;
}

Eigen::MatrixXd materialize(const LaplacianWeights& w) { return lap_apply(w.s, w.n); }

Eigen::VectorXd adjoint_map(const Eigen::MatrixXd& y) {
    if (y.rows() != y.cols()) throw DimensionMismatchError("adjoint needs a square matrix");
    const int n = static_cast<int>(y.rows());
    if (n < 2) throw DimensionMismatchError("adjoint needs n >= 2");
    Eigen::VectorXd out(num_pairs(n));
    int k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++k) out[k] = y(i, i) + y(j, j) - y(i, j) - y(j, i);
    return out;
}

Eigen::VectorXd gram_apply(const Eigen::VectorXd& s, int n) {
    if (s.size() != num_pairs(n)) throw DimensionMismatchError("weight vector has wrong length");
    Eigen::VectorXd rowsum = Eigen::VectorXd::Zero(n);
    int k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++k) {
            rowsum[i] += s[k];
            rowsum[j] += s[k];
        }
    Eigen::VectorXd out(s.size());
    k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++k) out[k] = 2.0 * s[k] + rowsum[i] + rowsum[j];
    return out;
}

double operator_norm_sq(int n) {
    if (n < 2) throw InvalidParamsError("operator norm needs n >= 2");
    static std::map<int, double> cache;
    static std::mutex mutex;
    {
        std::lock_guard lock(mutex);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    // Power iteration on S* o S. The start vector is strictly positive, so it
    // overlaps the (positive) leading eigenvector.
    const int m = num_pairs(n);
    Eigen::VectorXd v(m);
    uint64_t h = splitmix64(0x9e3779b97f4a7c15ull ^ static_cast<uint64_t>(n));
    for (int k = 0; k < m; ++k) {
        h = splitmix64(h);
        v[k] = 0.5 + static_cast<double>(h >> 11) * 0x1.0p-53;
    }
    v /= v.norm();
    double rho = 0.0;
    for (int it = 0; it < 10000; ++it) {
        Eigen::VectorXd gv = gram_apply(v, n);
        const double next = v.dot(gv);
        gv /= gv.norm();
        v = gv;
        if (it > 0 && std::abs(next - rho) <= 1e-12 * std::abs(next)) {
            rho = next;
            break;
        }
        rho = next;
    }
    {
        std::lock_guard lock(mutex);
        cache.emplace(n, rho);
    }
    return rho;
}

} // namespace mgl
