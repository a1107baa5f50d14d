#pragma once

#include <sys/resource.h>

#include <chrono>
#include <cmath>
#include <string>
#include <vector>

#include "json.hpp"
#include "pdfast/reference.hpp"
#include "pdfast/timestepping.hpp"

namespace pdfast {

struct RungResult {
    std::vector<int> dims;
    index_t n_nodes = 0;
    std::string backend;
    long steps = 0;
    double assembly_s = 0.0;
    double stepping_s = 0.0;
    double crack_s = 0.0;
    std::size_t footprint_bytes = 0;
    long maxrss_kb = 0;
};

struct BenchReport {
    std::string scenario;
    int band_halfwidth = 0;
    std::vector<RungResult> rungs;
    double fast_stepping_exponent = 0.0;
    double fast_memory_exponent = 0.0;
    double dense_assembly_exponent = 0.0;
};

namespace benchdetail {

inline long current_maxrss_kb() {
    rusage ru{};
    getrusage(RUSAGE_SELF, &ru);
    return ru.ru_maxrss;
}

/// Uniaxial-tension problem shaped like the 2D plate scenario, scaled to the
/// requested lattice; the band half-width stays fixed across rungs.
template <int Dim>
inline Problem<Dim> scaled_problem(const IVec<Dim>& dims, int M) {
    Problem<Dim> prob;
    const double h = 1.0 / dims[0];
    Vec<Dim> lo{}, hi{};
    for (int d = 0; d < Dim; ++d) hi[d] = dims[d] * h;
    prob.grid = build_grid<Dim>(lo, hi, h, Dim == 2 ? 0.0025 : 0.0);
    prob.horizon = Horizon::from_ratio(M, h);
    prob.material = Material{2e11, Dim == 2 ? 1.0 / 3.0 : 0.25, 7850.0, {}, {}, PlaneMode::Stress};
    const double p0 = 2e8;
    Load<Dim> left, right;
    left.box.lo = lo;
    left.box.hi = hi;
    left.box.hi[0] = h;
    left.value[0] = -p0 / h;
    right.box.lo = lo;
    right.box.hi = hi;
    right.box.lo[0] = hi[0] - h;
    right.value[0] = p0 / h;
    prob.loads = {left, right};
    return prob;
}

}  // namespace benchdetail

/// Least-squares slope of log(t) against log(N).
inline double fit_exponent(const std::vector<std::pair<double, double>>& n_vs_t) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(n_vs_t.size());
    for (const auto& [n, t] : n_vs_t) {
        const double x = std::log(n), y = std::log(t);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

/// Times the stepping phase of one lattice size. Repeats the run and keeps
/// the fastest repetition to suppress scheduler noise.
template <int Dim>
inline RungResult bench_stepping_rung(const IVec<Dim>& dims, int M, Method method, long steps,
                                      int repeats = 3) {
    RungResult r;
    for (int d = 0; d < Dim; ++d) r.dims.push_back(dims[d]);
    r.backend = method == Method::Fast ? "fast" : "dense";
    r.steps = steps;
    double best = 1e300, best_assembly = 1e300;
    for (int rep = 0; rep < repeats; ++rep) {
        Simulation<Dim> sim(benchdetail::scaled_problem<Dim>(dims, M),
                            SolverOptions{method, Integrator::Adr, 1.0, std::nullopt});
        sim.run(steps);
        best = std::min(best, sim.timers().stepping_s);
        best_assembly = std::min(best_assembly, sim.timers().assembly_s);
        r.n_nodes = sim.grid().n_nodes();
        r.footprint_bytes = sim.footprint_bytes();
        r.crack_s = sim.timers().crack_s;
    }
    r.stepping_s = best;
    r.assembly_s = best_assembly;
    r.maxrss_kb = benchdetail::current_maxrss_kb();
    return r;
}

/// Times the materialization of one dense stiffness component (allocation,
/// zero fill, band fill): the quadratic-cost baseline.
template <int Dim>
inline RungResult bench_assembly_rung(const IVec<Dim>& dims, int M, int repeats = 3) {
    RungResult r;
    for (int d = 0; d < Dim; ++d) r.dims.push_back(dims[d]);
    r.backend = "dense-materialized";
    Problem<Dim> prob = benchdetail::scaled_problem<Dim>(dims, M);
    auto K = build_kernel(prob.grid, prob.horizon, prob.material);
    auto regions = classify_regions(prob.grid, prob.horizon, prob.constraints);
    BondLedger ledger(prob.grid.n_nodes());
    r.n_nodes = prob.grid.n_nodes();
    double best = 1e300;
    for (int rep = 0; rep < repeats; ++rep) {
        const auto t0 = std::chrono::steady_clock::now();
        auto A = dense::materialize_stiffness(prob.grid, K, regions, ledger, 0, 0);
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        best = std::min(best, s);
        r.footprint_bytes = A.size() * sizeof(double);
    }
    r.assembly_s = best;
    r.maxrss_kb = benchdetail::current_maxrss_kb();
    return r;
}

/// Runs the 2D ladder for the requested backends plus the materialized-dense
/// assembly ladder, and fits the scaling exponents.
inline BenchReport run_bench(const std::vector<IVec<2>>& ladder, int M, bool fast_backend,
                             bool dense_backend, long steps,
                             const std::vector<IVec<2>>& assembly_ladder = {}) {
    BenchReport rep;
    rep.scenario = "uniaxial_plate";
    rep.band_halfwidth = M;

    std::vector<std::pair<double, double>> fast_t, fast_mem, dense_assembly;
    for (const auto& dims : ladder) {
        // size the step count so every rung runs long enough to time
        const index_t n = static_cast<index_t>(dims[0]) * dims[1];
        const long rung_steps = std::max<long>(4, std::min<long>(steps, 8'000'000 / n));
        if (fast_backend) {
            RungResult r = bench_stepping_rung<2>(dims, M, Method::Fast, rung_steps);
            fast_t.emplace_back(static_cast<double>(r.n_nodes), r.stepping_s / r.steps);
            fast_mem.emplace_back(static_cast<double>(r.n_nodes),
                                  static_cast<double>(r.footprint_bytes));
            rep.rungs.push_back(std::move(r));
        }
        if (dense_backend) {
            RungResult r = bench_stepping_rung<2>(dims, M, Method::Dense, rung_steps);
            rep.rungs.push_back(std::move(r));
        }
    }
    for (const auto& dims : assembly_ladder) {
        RungResult r = bench_assembly_rung<2>(dims, M);
        dense_assembly.emplace_back(static_cast<double>(r.n_nodes), r.assembly_s);
        rep.rungs.push_back(std::move(r));
    }
    if (fast_t.size() >= 2) rep.fast_stepping_exponent = fit_exponent(fast_t);
    if (fast_mem.size() >= 2) rep.fast_memory_exponent = fit_exponent(fast_mem);
    if (dense_assembly.size() >= 2) rep.dense_assembly_exponent = fit_exponent(dense_assembly);
    return rep;
}

/// Deterministic machine-readable serialization (field order fixed).
inline std::string to_json(const BenchReport& rep) {
    nlohmann::ordered_json j;
    j["scenario"] = rep.scenario;
    j["band_halfwidth"] = rep.band_halfwidth;
    j["rungs"] = nlohmann::ordered_json::array();
    for (const auto& r : rep.rungs) {
        nlohmann::ordered_json rj;
        rj["dims"] = r.dims;
        rj["n_nodes"] = r.n_nodes;
        rj["backend"] = r.backend;
        rj["steps"] = r.steps;
        rj["assembly_s"] = r.assembly_s;
        rj["stepping_s"] = r.stepping_s;
        rj["crack_s"] = r.crack_s;
        rj["footprint_bytes"] = r.footprint_bytes;
        rj["maxrss_kb"] = r.maxrss_kb;
        j["rungs"].push_back(rj);
    }
    j["fast_stepping_exponent"] = rep.fast_stepping_exponent;
    j["fast_memory_exponent"] = rep.fast_memory_exponent;
    j["dense_assembly_exponent"] = rep.dense_assembly_exponent;
    return j.dump(2) + "\n";
}

}  // namespace pdfast
