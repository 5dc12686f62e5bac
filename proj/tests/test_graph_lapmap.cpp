#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include "mgl/graph.hpp"
#include "mgl/lapmap.hpp"
#include "oracles.hpp"

using namespace mgl;

TEST_CASE("graph validation") {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
    a(0, 1) = a(1, 0) = 2.0;
    Graph g = Graph::from_adjacency(a);
    CHECK(g.n() == 3);
    CHECK(g.weight(0, 1) == 2.0);
    CHECK(g.degree(0) == 1);
    CHECK(g.degree(2) == 0);
    CHECK(g.max_degree() == 1);
    CHECK(g.num_edges() == 1);
    CHECK(g.num_components() == 2);

    Eigen::MatrixXd bad = a;
    bad(0, 1) = 1.0; // asymmetric
    CHECK_THROWS_AS(Graph::from_adjacency(bad), InvalidParamsError);
    bad = a;
    bad(1, 1) = 1.0;
    CHECK_THROWS_AS(Graph::from_adjacency(bad), InvalidParamsError);
    bad = a;
    bad(0, 1) = bad(1, 0) = -1.0;
    CHECK_THROWS_AS(Graph::from_adjacency(bad), InvalidParamsError);
    bad = a;
    bad(0, 1) = bad(1, 0) = std::nan("");
    CHECK_THROWS_AS(Graph::from_adjacency(bad), NonFiniteInputError);

    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 0, 1.0}}), InvalidParamsError);
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 5, 1.0}}), InvalidParamsError);
}

TEST_CASE("laplacian definition cases") {
    // 2-node unit edge
    Graph g2 = Graph::from_edges(2, {{0, 1, 1.0}});
    Eigen::MatrixXd l2 = laplacian(g2);
    CHECK(l2(0, 0) == 1.0);
    CHECK(l2(0, 1) == -1.0);
    CHECK(l2(1, 0) == -1.0);
    CHECK(l2(1, 1) == 1.0);

    // empty graph
    Graph g0(3);
    CHECK(laplacian(g0).isZero(0.0));

    // unit triangle: hand expansion diag(2,2,2) minus ones off the diagonal
    Graph tri = Graph::from_edges(3, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}});
    Eigen::MatrixXd lt = laplacian(tri);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(lt(i, j) == (i == j ? 2.0 : -1.0));
}

TEST_CASE("ball nodes ordering and components") {
    // path 0-1-2-3
    Graph path = Graph::from_edges(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
    CHECK(path.ball_nodes(1, 0) == std::vector<int>{1});
    CHECK(path.ball_nodes(1, 1) == std::vector<int>{1, 0, 2});
    CHECK(path.ball_nodes(0, 2) == std::vector<int>{0, 1, 2});
    CHECK(path.ball_nodes(0, 10) == std::vector<int>{0, 1, 2, 3});
    CHECK_THROWS_AS(path.ball_nodes(9, 1), InvalidParamsError);
    CHECK(path.num_components() == 1);
}

TEST_CASE("edge list round trip and parse errors") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "mgl_graph_io_test";
    fs::create_directories(dir);
    const std::string p = (dir / "g.edges").string();

    Graph g = Graph::from_edges(5, {{0, 1, 1.5}, {2, 4, 0.25}, {1, 3, 2.0}});
    write_edge_list(p, g);
    Graph h = read_edge_list(p);
    CHECK(h.n() == 5);
    CHECK((h.adjacency() - g.adjacency()).norm() == 0.0);

    auto write_text = [&](const std::string& text) {
        std::ofstream out(p);
        out << text;
    };
    write_text("0 1 1.0\n");
    CHECK_THROWS_WITH_AS(read_edge_list(p), doctest::Contains("line 1"), ParseError);
    write_text("# nodes 3\n0 1 1.0\n0 2 oops\n");
    CHECK_THROWS_WITH_AS(read_edge_list(p), doctest::Contains("line 3"), ParseError);
    write_text("# nodes 3\n0 7 1.0\n");
    CHECK_THROWS_AS(read_edge_list(p), ParseError);
    write_text("# comment only\n");
    CHECK_THROWS_AS(read_edge_list(p), ParseError);
    write_text("# nodes 3\n\n# another comment\n0 1 3.5\n");
    CHECK(read_edge_list(p).weight(0, 1) == 3.5);

    fs::remove_all(dir);
}

TEST_CASE("pair indexing is row-major upper triangle") {
    const int n = 7;
    int k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++k) {
            CHECK(pair_index(i, j, n) == k);
            const Pair p = pair_from_index(k, n);
            CHECK(p.i == i);
            CHECK(p.j == j);
        }
    CHECK(k == num_pairs(n));
}

TEST_CASE("materialize examples") {
    CHECK(materialize(LaplacianWeights(2, Eigen::VectorXd::Ones(1)))(0, 1) == -1.0);
    CHECK(materialize(LaplacianWeights(2, Eigen::VectorXd::Ones(1)))(0, 0) == 1.0);
    CHECK(materialize(LaplacianWeights(4, Eigen::VectorXd::Zero(6))).isZero(0.0));

    Eigen::VectorXd s(3);
    s << 1, 0, 2; // pairs (0,1), (0,2), (1,2)
    Eigen::MatrixXd expect(3, 3);
    expect << 1, -1, 0, -1, 3, -2, 0, -2, 2;
    CHECK((materialize(LaplacianWeights(3, s)) - expect).norm() == 0.0);

    Eigen::VectorXd neg(3);
    neg << 1, -1, 0;
    CHECK_THROWS_AS(LaplacianWeights(3, neg), InvalidParamsError);
    CHECK_THROWS_AS(LaplacianWeights(3, Eigen::VectorXd::Zero(5)), DimensionMismatchError);
}

TEST_CASE("materialized matrices satisfy the feasible set exactly") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(0.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 9);
        Eigen::VectorXd s(num_pairs(n));
        for (Eigen::Index k = 0; k < s.size(); ++k) s[k] = unif(rng);
        const Eigen::MatrixXd m = materialize(LaplacianWeights(n, s));
        for (int i = 0; i < n; ++i) {
            // identical summation order as the constructor: exact zero
            double acc = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != i) acc += m(i, j);
            CHECK(m(i, i) == -acc);
            for (int j = 0; j < n; ++j) {
                CHECK(m(i, j) == m(j, i));
                if (i != j) CHECK(m(i, j) <= 0.0);
            }
        }
    }
}

TEST_CASE("adjoint identity and examples") {
    // n=2 basics
    Eigen::MatrixXd y = Eigen::MatrixXd::Identity(2, 2);
    CHECK(adjoint_map(y)(0) == 2.0);
    CHECK(adjoint_map(Eigen::MatrixXd::Zero(2, 2))(0) == 0.0);
    y << 1, -1, -1, 1;
    CHECK(adjoint_map(y)(0) == 4.0);

    std::mt19937_64 rng(11);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        Eigen::VectorXd s(num_pairs(n));
        for (Eigen::Index k = 0; k < s.size(); ++k) s[k] = std::abs(normal(rng));
        Eigen::MatrixXd sym(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) sym(i, j) = sym(j, i) = normal(rng);
        const double lhs = lap_apply(s, n).cwiseProduct(sym).sum();
        const double rhs = s.dot(adjoint_map(sym));
        const double scale = std::max(1.0, std::abs(lhs));
        CHECK(std::abs(lhs - rhs) <= 1e-10 * scale);
    }
}

TEST_CASE("gram composition matches the dense oracle") {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> normal;
    for (int n = 2; n <= 8; ++n) {
        const Eigen::MatrixXd g = oracle::dense_gram(n);
        Eigen::VectorXd s(num_pairs(n));
        for (Eigen::Index k = 0; k < s.size(); ++k) s[k] = normal(rng);
        CHECK((gram_apply(s, n) - g * s).norm() <= 1e-12 * std::max(1.0, s.norm()));
    }
}

TEST_CASE("operator norm squared") {
    CHECK(operator_norm_sq(2) == doctest::Approx(4.0).epsilon(1e-10));
    for (int n = 3; n <= 6; ++n) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(oracle::dense_gram(n));
        const double truth = es.eigenvalues().maxCoeff();
        CHECK(operator_norm_sq(n) == doctest::Approx(truth).epsilon(1e-8));
    }
    for (int n = 2; n <= 8; ++n) CHECK(operator_norm_sq(n + 1) >= operator_norm_sq(n));
}

TEST_CASE("operator norm cache is stable under concurrent queries") {
    std::vector<double> results(8);
    std::vector<std::thread> workers;
    for (int t = 0; t < 8; ++t)
        workers.emplace_back([&results, t] { results[t] = operator_norm_sq(40 + t % 2); });
    for (auto& w : workers) w.join();
    for (int t = 0; t < 8; ++t) CHECK(results[t] == operator_norm_sq(40 + t % 2));
}
