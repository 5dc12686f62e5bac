#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mgl/harness.hpp"
#include "mgl/io.hpp"

using namespace mgl;
namespace fs = std::filesystem;

namespace {

ExperimentSpec tiny_spec() {
    ExperimentSpec spec;
    spec.name = "tiny";
    spec.truth_model.kind = "lattice";
    spec.truth_model.n = 12;
    spec.truth_model.neighbors = 4;
    spec.reference_model.kind = "lattice";
    spec.reference_model.n = 10;
    spec.reference_model.neighbors = 4;
    spec.sweep = "samples";
    spec.sweep_values = {60.0, 120.0};
    spec.realizations = 3;
    spec.base_seed = 99;

    MethodSpec pinv;
    pinv.label = "Pinv";
    pinv.kind = "pinv";
    MethodSpec mgl;
    mgl.label = "MGL-Tr";
    mgl.kind = "mgl";
    mgl.solver.alpha = 0.01;
    mgl.solver.beta = 10.0;
    mgl.solver.max_iters = 40;
    mgl.target_fns = {"tr"};
    mgl.target_delta = 0.01;
    spec.methods = {pinv, mgl};
    return spec;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("error metrics normalize scale away") {
    Eigen::MatrixXd a(3, 3);
    a << 2, -1, -1, -1, 2, -1, -1, -1, 2;
    Eigen::MatrixXd b(3, 3);
    b << 1, 0, -1, 0, 1, -1, -1, -1, 2;

    CHECK(err_gso(a, a) == 0.0);
    CHECK(err_gso(3.7 * a, a) <= 1e-28);
    CHECK(err_gso(2.5 * a, 0.3 * b) == doctest::Approx(err_gso(a, b)).epsilon(1e-12));
    CHECK(err_gso(a, -a) == doctest::Approx(4.0));
    const double e = err_gso(a, b);
    CHECK(e > 0.0);
    CHECK(e <= 4.0);

    Eigen::VectorXd u(4), v(4);
    u << 0, 1, 2, 3;
    v << 0, 2, 2, 4;
    CHECK(err_spectrum(u, 10.0 * u) <= 1e-28);
    CHECK(err_spectrum(5.0 * u, 0.1 * v) == doctest::Approx(err_spectrum(u, v)).epsilon(1e-12));

    CHECK_THROWS_AS(err_gso(a, Eigen::MatrixXd::Identity(2, 2)), DimensionMismatchError);
    CHECK_THROWS_AS(err_gso(Eigen::MatrixXd::Zero(3, 3), a), ZeroMatrixError);
    CHECK_THROWS_AS(err_spectrum(u, Eigen::VectorXd::Zero(4)), ZeroMatrixError);
}

TEST_CASE("experiment spec validation") {
    ExperimentSpec spec = tiny_spec();
    spec.realizations = 0;
    CHECK_THROWS_AS(run_experiment(spec), InvalidParamsError);
    spec = tiny_spec();
    spec.sweep_values.clear();
    CHECK_THROWS_AS(run_experiment(spec), InvalidParamsError);
    spec = tiny_spec();
    spec.methods.clear();
    CHECK_THROWS_AS(run_experiment(spec), InvalidParamsError);
    spec = tiny_spec();
    spec.name.clear();
    CHECK_THROWS_AS(run_experiment(spec), InvalidParamsError);
    spec = tiny_spec();
    spec.methods[0].label.clear();
    CHECK_THROWS_AS(run_experiment(spec), InvalidParamsError);
}

TEST_CASE("experiment is deterministic and thread count invariant") {
    ExperimentSpec spec = tiny_spec();
    const ExperimentResult a = run_experiment(spec);
    const ExperimentResult b = run_experiment(spec);
    ExperimentSpec threaded = spec;
    threaded.threads = 3;
    const ExperimentResult c = run_experiment(threaded);

    REQUIRE(a.rows.size() == spec.methods.size() * spec.sweep_values.size());
    REQUIRE(a.raw.size() ==
            spec.methods.size() * spec.sweep_values.size() * spec.realizations);
    for (size_t r = 0; r < a.rows.size(); ++r) {
        CHECK(a.rows[r].method == b.rows[r].method);
        CHECK(a.rows[r].mean_err_gso == b.rows[r].mean_err_gso);
        CHECK(a.rows[r].mean_err_gso == c.rows[r].mean_err_gso);
        CHECK(a.rows[r].mean_err_spectrum == c.rows[r].mean_err_spectrum);
        CHECK(a.rows[r].used == spec.realizations);
    }
    for (size_t r = 0; r < a.raw.size(); ++r) {
        CHECK(a.raw[r].status == "ok");
        CHECK(a.raw[r].e_gso == c.raw[r].e_gso);
        CHECK(a.raw[r].e_gso >= 0.0);
        CHECK(a.raw[r].e_gso <= 4.0);
    }
}

TEST_CASE("realization seeds are prefix stable") {
    ExperimentSpec small = tiny_spec();
    small.realizations = 2;
    ExperimentSpec big = tiny_spec();
    big.realizations = 4;
    const ExperimentResult a = run_experiment(small);
    const ExperimentResult b = run_experiment(big);
    const int nmeth = static_cast<int>(small.methods.size());
    for (size_t j = 0; j < small.sweep_values.size(); ++j)
        for (int i = 0; i < small.realizations; ++i)
            for (int k = 0; k < nmeth; ++k) {
                const RawRecord& ra = a.raw[(j * small.realizations + i) * nmeth + k];
                const RawRecord& rb = b.raw[(j * big.realizations + i) * nmeth + k];
                CHECK(ra.e_gso == rb.e_gso);
                CHECK(ra.e_spectrum == rb.e_spectrum);
            }
}

TEST_CASE("failing cells are recorded, not dropped") {
    ExperimentSpec spec = tiny_spec();
    MethodSpec broken;
    broken.label = "Broken";
    broken.kind = "glasso";
    broken.glasso_alpha = -1.0; // rejected per cell
    spec.methods.push_back(broken);
    const ExperimentResult res = run_experiment(spec);

    int broken_rows = 0;
    for (const auto& r : res.raw) {
        if (r.method != "Broken") {
            CHECK(r.status == "ok");
            continue;
        }
        ++broken_rows;
        CHECK(r.status != "ok");
        CHECK_FALSE(r.status.empty());
        CHECK(std::isnan(r.e_gso));
    }
    CHECK(broken_rows ==
          static_cast<int>(spec.sweep_values.size()) * spec.realizations);
    for (const auto& row : res.rows) {
        if (row.method == "Broken") {
            CHECK(row.used == 0);
            CHECK(std::isnan(row.mean_err_gso));
        } else {
            CHECK(row.used == spec.realizations);
        }
    }
}

TEST_CASE("experiment outputs round trip byte for byte") {
    const fs::path dir = fs::temp_directory_path() / "mgl_harness_test";
    fs::remove_all(dir);
    ExperimentSpec spec = tiny_spec();
    spec.out_dir = dir.string();
    spec.dump_histograms = true;
    run_experiment(spec, "snapshot-body\n");

    const fs::path base = dir / spec.name;
    REQUIRE(fs::exists(base / "summary.csv"));
    REQUIRE(fs::exists(base / "raw.csv"));
    REQUIRE(fs::exists(base / "config.snapshot"));
    CHECK(slurp(base / "config.snapshot") == "snapshot-body\n");
    CHECK(fs::exists(base / "histograms" / "sweep0_truth.csv"));
    CHECK(fs::exists(base / "histograms" / "sweep0_reference.csv"));
    CHECK(fs::exists(base / "histograms" / "sweep1_MGL_Tr.csv"));

    const std::string summary1 = slurp(base / "summary.csv");
    const std::string raw1 = slurp(base / "raw.csv");
    CHECK(summary1.substr(0, summary1.find('\n')) ==
          "method,sweep_value,mean_err_gso,stderr_gso,mean_err_spectrum,"
          "stderr_spectrum,realizations_used");

    run_experiment(spec, "snapshot-body\n");
    CHECK(slurp(base / "summary.csv") == summary1);
    CHECK(slurp(base / "raw.csv") == raw1);

    // truth histogram holds the full ascending spectrum
    const Eigen::MatrixXd tl = read_csv_matrix((base / "histograms" / "sweep0_truth.csv").string());
    CHECK(tl.rows() == spec.truth_model.n);
    for (int i = 1; i < tl.rows(); ++i) CHECK(tl(i, 0) >= tl(i - 1, 0));

    fs::remove_all(dir);
}

TEST_CASE("real data ingestion") {
    const fs::path dir = fs::temp_directory_path() / "mgl_ingest_test";
    fs::create_directories(dir);
    GraphModel model;
    model.kind = "lattice";
    model.n = 6;
    model.neighbors = 2;
    const Graph g = generate(model, 1);
    const fs::path edges = dir / "edges.txt";
    write_edge_list(edges.string(), g);

    Eigen::MatrixXd x(6, 4);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 4; ++j) x(i, j) = i + 10.0 * j;
    const fs::path signals = dir / "signals.csv";
    write_csv_matrix(signals.string(), x);

    const auto [graph, batch] = ingest_real(edges.string(), signals.string());
    CHECK(graph.n() == 6);
    CHECK(graph.num_edges() == g.num_edges());
    CHECK(batch.m == 4);
    CHECK((batch.X - x).norm() == 0.0);

    Eigen::MatrixXd wrong(5, 4);
    wrong.setOnes();
    const fs::path bad = dir / "bad.csv";
    write_csv_matrix(bad.string(), wrong);
    CHECK_THROWS_AS(ingest_real(edges.string(), bad.string()), DimensionMismatchError);

    {
        std::ofstream out(dir / "nan.csv");
        out << "c0\n";
        for (int i = 0; i < 6; ++i) out << (i == 3 ? "nan" : "1.0") << "\n";
    }
    CHECK_THROWS_AS(ingest_real(edges.string(), (dir / "nan.csv").string()), NonFiniteInputError);
    CHECK_THROWS_AS(ingest_real((dir / "missing.txt").string(), signals.string()), Error);

    fs::remove_all(dir);
}
