#include "mgl/motif.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <vector>

namespace mgl {

namespace {

// Canonical form of a rooted graph on m <= 64 nodes, root at index 0.
// Color refinement from (distance-to-root, degree) seeds; when the partition
// stays non-discrete, individualization search over the first non-singleton
// cell, pruned by twin equivalence. The key is the minimum serialization over
// all discrete refinements reached, so it is invariant under relabeling that
// fixes the root.
class Canonicalizer {
public:
    Canonicalizer(const Graph& ball, const std::vector<int>& dist)
        : m_(ball.n()), adj_(m_, 0), dist_(dist) {
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j < m_; ++j)
                if (j != i && ball.weight(i, j) != 0.0) adj_[i] |= uint64_t{1} << j;
    }

    std::string run() {
        std::vector<std::vector<int>> seeds(m_);
        for (int v = 0; v < m_; ++v)
            seeds[v] = {dist_[v], static_cast<int>(__builtin_popcountll(adj_[v]))};
        std::vector<int> color = dense_ids(seeds);
        best_.clear();
        budget_ = 1000000;
        search(std::move(color));
        return best_;
    }

private:
    // Dense ids assigned by sorted signature order, so equal signature
    // multisets get equal ids on different graphs.
    static std::vector<int> dense_ids(const std::vector<std::vector<int>>& sig) {
        std::vector<std::vector<int>> uniq(sig);
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        std::vector<int> ids(sig.size());
        for (size_t v = 0; v < sig.size(); ++v)
            ids[v] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), sig[v]) - uniq.begin());
        return ids;
    }

    static int num_distinct(const std::vector<int>& color) {
        std::vector<int> s(color);
        std::sort(s.begin(), s.end());
        return static_cast<int>(std::unique(s.begin(), s.end()) - s.begin());
    }

    int refine(std::vector<int>& color) const {
        int classes = num_distinct(color);
        for (;;) {
            std::vector<std::vector<int>> sig(m_);
            for (int v = 0; v < m_; ++v) {
                sig[v].push_back(color[v]);
                uint64_t nb = adj_[v];
                while (nb) {
                    const int u = __builtin_ctzll(nb);
                    nb &= nb - 1;
                    sig[v].push_back(color[u]);
                }
                std::sort(sig[v].begin() + 1, sig[v].end());
            }
            std::vector<int> next = dense_ids(sig);
            const int nc = num_distinct(next);
            color = std::move(next);
            if (nc == classes) return classes;
            classes = nc;
        }
    }

    std::string serialize(const std::vector<int>& color) const {
        std::vector<int> order(m_);
        for (int v = 0; v < m_; ++v) order[color[v]] = v;
        std::string out;
        out.push_back(static_cast<char>(m_));
        int bit = 0;
        char cur = 0;
        for (int i = 0; i < m_; ++i)
            for (int j = i + 1; j < m_; ++j) {
                if (adj_[order[i]] >> order[j] & 1) cur |= static_cast<char>(1 << bit);
                if (++bit == 8) {
                    out.push_back(cur);
                    bit = 0;
                    cur = 0;
                }
            }
        if (bit) out.push_back(cur);
        return out;
    }

    void search(std::vector<int> color) {
        if (--budget_ < 0) throw Error("canonical labeling budget exceeded");
        const int classes = refine(color);
        if (classes == m_) {
            std::string key = serialize(color);
            if (best_.empty() || key < best_) best_ = std::move(key);
            return;
        }
        // First non-singleton cell by color id; canonical because color ids
        // are themselves canonical.
        std::vector<int> count(classes, 0);
        for (int v = 0; v < m_; ++v) ++count[color[v]];
        int cell = 0;
        while (count[cell] < 2) ++cell;
        std::vector<int> members;
        for (int v = 0; v < m_; ++v)
            if (color[v] == cell) members.push_back(v);
        // One branch per twin class: swapping twins is an automorphism, so
        // their subtrees produce identical keys.
        std::vector<int> reps;
        for (int v : members) {
            bool dup = false;
            for (int u : reps) {
                const uint64_t strip = ~((uint64_t{1} << u) | (uint64_t{1} << v));
                if ((adj_[u] & strip) == (adj_[v] & strip)) {
                    dup = true;
                    break;
                }
            }
            if (!dup) reps.push_back(v);
        }
        for (int w : reps) {
            std::vector<int> child(m_);
            for (int v = 0; v < m_; ++v) child[v] = 2 * color[v] + (v == w ? 0 : 1);
            search(std::move(child));
        }
    }

    int m_;
    std::vector<uint64_t> adj_;
    std::vector<int> dist_;
    std::string best_;
    long budget_ = 0;
};

} // namespace

RootedBall rooted_ball(const Graph& g, int root, int r, int ball_cap) {
    const std::vector<int> nodes = g.ball_nodes(root, r);
    if (static_cast<int>(nodes.size()) > ball_cap || static_cast<int>(nodes.size()) > 64)
        throw BallTooLargeError("ball at node " + std::to_string(root) + " has " +
                                std::to_string(nodes.size()) + " nodes, cap " +
                                std::to_string(std::min(ball_cap, 64)));
    Graph sub = g.induced(nodes);
    // nodes is sorted by hop distance; recover per-node distance by BFS depth
    // boundaries from the root inside the subgraph instead.
    std::vector<int> dist(sub.n(), -1);
    dist[0] = 0;
    std::vector<int> frontier{0};
    int d = 0;
    while (!frontier.empty()) {
        ++d;
        std::vector<int> next;
        for (int u : frontier)
            for (int v = 0; v < sub.n(); ++v)
                if (sub.weight(u, v) != 0.0 && dist[v] < 0) {
                    dist[v] = d;
                    next.push_back(v);
                }
        frontier = std::move(next);
    }
    Canonicalizer canon(sub, dist);
    return RootedBall{r, root, std::move(sub), canon.run()};
}

MotifCensus motif_census(const Graph& g, int r, int ball_cap) {
    std::vector<std::string> keys(g.n());
    std::exception_ptr err = nullptr;
    std::atomic<bool> failed{false};
#pragma omp parallel for schedule(dynamic)
    for (int v = 0; v < g.n(); ++v) {
        if (failed.load(std::memory_order_relaxed)) continue;
        try {
            keys[v] = rooted_ball(g, v, r, ball_cap).canonical_key;
        } catch (...) {
#pragma omp critical
            if (!err) {
                err = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
            }
        }
    }
    if (err) std::rethrow_exception(err);
    MotifCensus out;
    out.radius = r;
    out.n = g.n();
    out.max_degree = g.max_degree();
    std::map<std::string, long long> counts;
    for (const auto& k : keys) ++counts[k];
    for (const auto& [k, c] : counts)
        out.densities[k] = static_cast<double>(c) / static_cast<double>(g.n());
    return out;
}

MotifCensus motif_census_serial(const Graph& g, int r, int ball_cap) {
    std::map<std::string, long long> counts;
    for (int v = 0; v < g.n(); ++v) ++counts[rooted_ball(g, v, r, ball_cap).canonical_key];
    MotifCensus out;
    out.radius = r;
    out.n = g.n();
    out.max_degree = g.max_degree();
    for (const auto& [k, c] : counts)
        out.densities[k] = static_cast<double>(c) / static_cast<double>(g.n());
    return out;
}

double census_distance(const MotifCensus& a, const MotifCensus& b) {
    if (a.radius != b.radius) throw RadiusMismatchError("census radii differ");
    double worst = 0.0;
    for (const auto& [k, da] : a.densities) {
        const auto it = b.densities.find(k);
        const double db = it == b.densities.end() ? 0.0 : it->second;
        worst = std::max(worst, std::abs(da - db));
    }
    for (const auto& [k, db] : b.densities)
        if (!a.densities.count(k)) worst = std::max(worst, db);
    return worst;
}

std::string key_to_hex(const std::string& key) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(2 * key.size());
    for (unsigned char c : key) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 15]);
    }
    return out;
}

} // namespace mgl
