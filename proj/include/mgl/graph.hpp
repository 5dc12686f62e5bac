#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "mgl/errors.hpp"

namespace mgl {

// Undirected weighted graph: symmetric nonnegative adjacency, zero diagonal.
// Value type, not mutated after construction.
class Graph {
public:
    explicit Graph(int n) : n_(n), adj_(Eigen::MatrixXd::Zero(n, n)) {
        if (n <= 0) throw InvalidParamsError("graph must have at least one node");
    }

    // Validates symmetry, zero diagonal and nonnegative weights.
    static Graph from_adjacency(Eigen::MatrixXd a);

    struct Edge {
        int i, j;
        double w;
    };
    static Graph from_edges(int n, const std::vector<Edge>& edges);

    int n() const { return n_; }
    const Eigen::MatrixXd& adjacency() const { return adj_; }
    double weight(int i, int j) const { return adj_(i, j); }
    bool has_edge(int i, int j) const { return adj_(i, j) != 0.0; }

    // Unweighted degree (number of incident nonzero-weight edges).
    int degree(int v) const;
    int max_degree() const;

    std::vector<Edge> edges() const;
    int num_edges() const;

    // Nodes within r hops of root (binary view of the adjacency), sorted by
    // (hop distance, node id). Includes the root itself.
    std::vector<int> ball_nodes(int root, int r) const;

    // Induced subgraph on `nodes`; node k of the result is nodes[k].
    Graph induced(const std::vector<int>& nodes) const;

    int num_components() const;

private:
    int n_;
    Eigen::MatrixXd adj_;
};

// Combinatorial Laplacian L = diag(A1) - A.
Eigen::MatrixXd laplacian(const Graph& g);

// Edge-list file format: a `# nodes N` header followed by `i j w` lines with
// 0-based node indices. Blank lines and further `#` comments are ignored.
Graph read_edge_list(const std::string& path);
void write_edge_list(const std::string& path, const Graph& g);

// Writes a symmetric matrix with nonpositive off-diagonals (a Laplacian
// estimate) as an edge list with weights w_ij = -S_ij.
void write_laplacian_edge_list(const std::string& path, const Eigen::MatrixXd& s);

} // namespace mgl
