#include "mgl/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace mgl {

Graph Graph::from_adjacency(Eigen::MatrixXd a) {
    if (a.rows() != a.cols() || a.rows() < 1)
        throw DimensionMismatchError("adjacency must be square and nonempty");
    const int n = static_cast<int>(a.rows());
    for (int i = 0; i < n; ++i) {
        if (a(i, i) != 0.0) throw InvalidParamsError("adjacency diagonal must be zero");
        for (int j = 0; j < n; ++j) {
            if (!std::isfinite(a(i, j))) throw NonFiniteInputError("adjacency has non-finite entry");
            if (a(i, j) < 0.0) throw InvalidParamsError("adjacency weights must be nonnegative");
            if (a(i, j) != a(j, i)) throw InvalidParamsError("adjacency must be symmetric");
        }
    }
    Graph g(n);
    g.adj_ = std::move(a);
    return g;
}

Graph Graph::from_edges(int n, const std::vector<Edge>& edges) {
    if (n <= 0) throw InvalidParamsError("graph must have at least one node");
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : edges) {
        if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n)
            throw InvalidParamsError("edge endpoint out of range");
        if (e.i == e.j) throw InvalidParamsError("self loops are not allowed");
        if (!std::isfinite(e.w)) throw NonFiniteInputError("edge weight is non-finite");
        if (e.w < 0.0) throw InvalidParamsError("edge weights must be nonnegative");
        a(e.i, e.j) = e.w;
        a(e.j, e.i) = e.w;
    }
    Graph g(n);
    g.adj_ = std::move(a);
    return g;
}

int Graph::degree(int v) const {
    int d = 0;
    for (int j = 0; j < n_; ++j)
        if (adj_(v, j) != 0.0) ++d;
    return d;
}

int Graph::max_degree() const {
    int d = 0;
    for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
    return d;
}

std::vector<Graph::Edge> Graph::edges() const {
    std::vector<Edge> out;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (adj_(i, j) != 0.0) out.push_back({i, j, adj_(i, j)});
    return out;
}

int Graph::num_edges() const { return static_cast<int>(edges().size()); }

std::vector<int> Graph::ball_nodes(int root, int r) const {
    if (root < 0 || root >= n_) throw InvalidParamsError("ball root out of range");
    if (r < 0) throw InvalidParamsError("ball radius must be nonnegative");
    std::vector<int> dist(n_, -1);
    dist[root] = 0;
    std::deque<int> queue{root};
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        if (dist[u] == r) continue;
        for (int v = 0; v < n_; ++v) {
            if (adj_(u, v) != 0.0 && dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    std::vector<int> nodes;
    for (int v = 0; v < n_; ++v)
        if (dist[v] >= 0) nodes.push_back(v);
    std::sort(nodes.begin(), nodes.end(), [&](int a, int b) {
        return std::pair(dist[a], a) < std::pair(dist[b], b);
    });
    return nodes;
}

Graph Graph::induced(const std::vector<int>& nodes) const {
    const int m = static_cast<int>(nodes.size());
    if (m == 0) throw InvalidParamsError("induced subgraph needs at least one node");
    Eigen::MatrixXd a(m, m);
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) a(p, q) = adj_(nodes[p], nodes[q]);
    Graph g(m);
    g.adj_ = std::move(a);
    return g;
}

int Graph::num_components() const {
    std::vector<int> comp(n_, -1);
    int count = 0;
    for (int s = 0; s < n_; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = count;
        std::deque<int> queue{s};
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (int v = 0; v < n_; ++v) {
                if (adj_(u, v) != 0.0 && comp[v] < 0) {
                    comp[v] = count;
                    queue.push_back(v);
                }
            }
        }
        ++count;
    }
    return count;
}

Eigen::MatrixXd laplacian(const Graph& g) {
    Eigen::MatrixXd l = -g.adjacency();
    for (int i = 0; i < g.n(); ++i) l(i, i) = g.adjacency().row(i).sum();
    return l;
}

Graph read_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path, 0);
    std::string line;
    int lineno = 0;
    int n = -1;
    std::vector<Graph::Edge> edges;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string first;
        if (!(ss >> first)) continue;
        if (first == "#") {
            std::string key;
            if (ss >> key && key == "nodes") {
                if (n >= 0) throw ParseError("duplicate nodes header", lineno);
                if (!(ss >> n) || n <= 0) throw ParseError("invalid node count", lineno);
            }
            continue;
        }
        if (n < 0) throw ParseError("edge before nodes header", lineno);
        Graph::Edge e;
        std::istringstream es(line);
        if (!(es >> e.i >> e.j >> e.w)) throw ParseError("malformed edge line", lineno);
        std::string extra;
        if (es >> extra) throw ParseError("trailing tokens on edge line", lineno);
        try {
            if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n)
                throw ParseError("edge endpoint out of range", lineno);
            if (e.i == e.j) throw ParseError("self loop", lineno);
            if (!std::isfinite(e.w) || e.w < 0.0) throw ParseError("invalid edge weight", lineno);
        } catch (ParseError&) {
            throw;
        }
        edges.push_back(e);
    }
    if (n < 0) throw ParseError("missing nodes header", lineno);
    return Graph::from_edges(n, edges);
}

void write_edge_list(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << "# nodes " << g.n() << "\n";
    out << std::setprecision(17);
    for (const auto& e : g.edges()) out << e.i << " " << e.j << " " << e.w << "\n";
}

void write_laplacian_edge_list(const std::string& path, const Eigen::MatrixXd& s) {
    if (s.rows() != s.cols()) throw DimensionMismatchError("matrix must be square");
    const int n = static_cast<int>(s.rows());
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << "# nodes " << n << "\n";
    out << std::setprecision(17);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (s(i, j) != 0.0) out << i << " " << j << " " << -s(i, j) << "\n";
}

} // namespace mgl
