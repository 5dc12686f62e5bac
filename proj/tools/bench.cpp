// Timing comparison of the OpenMP kernels against their single-threaded
// reference implementations. Prints wall times and checks outputs agree.

#include <chrono>
#include <iostream>

#include "mgl/harness.hpp"
#include "mgl/motif.hpp"

using namespace mgl;
using Clock = std::chrono::steady_clock;

namespace {

double seconds(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

template <class F>
double timed(F&& f) {
    const auto t0 = Clock::now();
    f();
    return seconds(t0, Clock::now());
}

void report(const std::string& name, double serial, double parallel, bool same) {
    std::cout << name << ": serial " << serial << " s, parallel " << parallel << " s, speedup "
              << serial / parallel << (same ? "" : "  [MISMATCH]") << "\n";
}

} // namespace

int main() {
    GraphModel ring;
    ring.kind = "small_world";
    ring.n = 3000;
    ring.neighbors = 8;
    ring.p_rewire = 0.1;
    const Graph g = generate(ring, 17);

    MotifCensus cs, cp;
    const double t_cs = timed([&] { cs = motif_census_serial(g, 2); });
    const double t_cp = timed([&] { cp = motif_census(g, 2); });
    report("census r=2 n=3000", t_cs, t_cp,
           cs.densities == cp.densities && cs.max_degree == cp.max_degree);

    GraphModel lat;
    lat.kind = "lattice";
    lat.n = 300;
    lat.neighbors = 4;
    const Eigen::MatrixXd L = laplacian(generate(lat, 3));
    SignalBatch bs, bp;
    const double t_gs = timed([&] { bs = sample_gmrf_serial(L, 20000, 11); });
    const double t_gp = timed([&] { bp = sample_gmrf(L, 20000, 11); });
    report("gmrf n=300 m=20000", t_gs, t_gp, bs.X == bp.X);

    ExperimentSpec spec;
    spec.name = "bench";
    spec.truth_model = lat;
    spec.truth_model.n = 40;
    spec.reference_model = spec.truth_model;
    spec.reference_model.n = 30;
    spec.sweep = "samples";
    spec.sweep_values = {300.0};
    spec.realizations = 8;
    spec.base_seed = 5;
    MethodSpec m;
    m.label = "MGL-Tr";
    m.kind = "mgl";
    m.solver.alpha = 0.02;
    m.solver.beta = 0.5;
    m.solver.step1_reps = 10;
    m.solver.max_iters = 120;
    m.target_fns = {"tr"};
    m.target_delta = 0.01;
    spec.methods = {m};

    ExperimentResult rs, rp;
    spec.threads = 1;
    const double t_hs = timed([&] { rs = run_experiment(spec); });
    spec.threads = 0;
    const double t_hp = timed([&] { rp = run_experiment(spec); });
    bool same = rs.raw.size() == rp.raw.size();
    for (size_t i = 0; same && i < rs.raw.size(); ++i)
        same = rs.raw[i].e_gso == rp.raw[i].e_gso && rs.raw[i].e_spectrum == rp.raw[i].e_spectrum;
    report("harness 8 realizations", t_hs, t_hp, same);
    return 0;
}
