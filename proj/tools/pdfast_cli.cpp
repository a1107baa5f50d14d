// Command-line front end: scenario runs, config dumps, and the scaling
// benchmark harness.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "pdfast/bench.hpp"
#include "pdfast/output.hpp"
#include "pdfast/pdfast.hpp"

namespace {

using namespace pdfast;

struct RunArgs {
    std::string preset_name;
    std::string config_path;
    std::string method;
    std::string out_dir;
    double h_override = 0.0;
    long steps_override = -1;
    long snapshot_every = -1;
    unsigned seed = 0;  // recorded in outputs; the physics is deterministic
};

ScenarioConfig load_config(const RunArgs& args) {
    ScenarioConfig cfg;
    if (!args.preset_name.empty())
        cfg = preset(args.preset_name,
                     args.h_override > 0.0 ? std::optional<double>(args.h_override)
                                           : std::nullopt);
    else
        cfg = parse_config_file(args.config_path);
    if (!args.method.empty()) cfg.method = args.method == "dense" ? Method::Dense : Method::Fast;
    if (args.steps_override >= 0) cfg.steps = args.steps_override;
    if (args.snapshot_every >= 0) cfg.snapshot_every = args.snapshot_every;
    if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
    return cfg;
}

template <int Dim>
int run_scenario(const ScenarioConfig& cfg, unsigned seed) {
    Problem<Dim> prob = make_problem<Dim>(cfg);
    Simulation<Dim> sim(prob, make_solver_options(cfg));

    std::filesystem::create_directories(cfg.out_dir);
    std::vector<Vec<Dim>> points;
    for (const auto& m : cfg.monitors) {
        Vec<Dim> x{};
        for (int d = 0; d < Dim; ++d) x[d] = m[d];
        points.push_back(x);
    }
    MonitorWriter<Dim> monitor(cfg.out_dir + "/monitor.tsv", prob.grid, points);

    {
        std::ofstream meta(cfg.out_dir + "/run.cfg");
        meta << "# resolved configuration (seed " << seed << ")\n" << dump_config(cfg);
    }

    auto snapshot = [&](const Simulation<Dim>& s) {
        const auto damage = s.damage();
        write_snapshot_dat<Dim>(cfg.out_dir, s.grid(), s.state().u, damage, s.state().step,
                                s.state().t);
        write_snapshot_vtk<Dim>(cfg.out_dir, s.grid(), s.state().u, damage, s.state().step);
    };
    if (cfg.snapshot_every > 0) snapshot(sim);

    const long every = cfg.snapshot_every;
    sim.run(cfg.steps, [&](const Simulation<Dim>& s) {
        if (!points.empty()) monitor.append(s.state().step, s.state().t, s.state().u);
        if (every > 0 && s.state().step % every == 0) snapshot(s);
        if (!s.finite()) throw Error("non-finite displacement at step " +
                                     std::to_string(s.state().step));
    });
    if (every > 0 && cfg.steps % every != 0) snapshot(sim);

    const auto& t = sim.timers();
    std::printf("scenario        %s\n", cfg.name.c_str());
    std::printf("nodes           %lld\n", static_cast<long long>(sim.grid().n_nodes()));
    std::printf("steps           %ld\n", cfg.steps);
    std::printf("matrix assembly %.3f s\n", t.assembly_s);
    std::printf("time stepping   %.3f s\n", t.stepping_s);
    std::printf("crack factor    %.3f s\n", t.crack_s);
    std::printf("broken bonds    %lld\n", static_cast<long long>(sim.ledger().total_broken()));
    std::printf("footprint       %.1f MiB\n",
                static_cast<double>(sim.footprint_bytes()) / (1024.0 * 1024.0));
    return 0;
}

std::vector<IVec<2>> parse_ladder(const std::string& spec) {
    std::vector<IVec<2>> out;
    std::string token;
    std::istringstream is(spec);
    while (std::getline(is, token, ',')) {
        const auto x = token.find('x');
        if (x == std::string::npos) throw Error("ladder rung must look like 64x64");
        out.push_back({std::stoi(token.substr(0, x)), std::stoi(token.substr(x + 1))});
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FFT-accelerated bond-based peridynamics solver"};
    app.require_subcommand(1);

    RunArgs args;
    auto* run = app.add_subcommand("run", "run a scenario");
    auto* opt_preset = run->add_option("--preset", args.preset_name, "bundled scenario name");
    auto* opt_config = run->add_option("--config", args.config_path, "config file path");
    opt_preset->excludes(opt_config);
    run->add_option("--method", args.method, "force backend: fast|dense")
        ->check(CLI::IsMember({"fast", "dense"}));
    run->add_option("--spacing", args.h_override, "grid spacing override (presets only)");
    run->add_option("--steps", args.steps_override, "step count override");
    run->add_option("--snapshot-every", args.snapshot_every, "snapshot cadence override");
    run->add_option("--out", args.out_dir, "output directory override");
    run->add_option("--seed", args.seed, "recorded in run metadata");

    std::string dump_preset, dump_config_path;
    auto* dump = app.add_subcommand("dump", "print a resolved configuration");
    auto* dp = dump->add_option("--preset", dump_preset, "bundled scenario name");
    auto* dc = dump->add_option("--config", dump_config_path, "config file path");
    dp->excludes(dc);

    std::string ladder_spec = "64x64,128x128,256x256,512x512";
    std::string assembly_spec = "64x64,80x80,96x96,112x112";
    std::string backends = "fast";
    std::string report_path;
    long bench_steps = 400;
    int bench_M = 3;
    auto* bench = app.add_subcommand("bench", "scaling benchmark over a grid ladder");
    bench->add_option("--ladder", ladder_spec, "stepping rungs, e.g. 64x64,128x128");
    bench->add_option("--assembly-ladder", assembly_spec,
                      "materialized-matrix rungs (empty to skip)");
    bench->add_option("--backends", backends, "comma list of fast,dense");
    bench->add_option("--steps", bench_steps, "max steps per rung");
    bench->add_option("--band", bench_M, "horizon band half-width");
    bench->add_option("--out", report_path, "write the JSON report here (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            if (args.preset_name.empty() && args.config_path.empty())
                throw Error("run needs --preset or --config");
            ScenarioConfig cfg = load_config(args);
            if (auto bad = validate_config(cfg); !bad.empty()) throw ValidationError(bad);
            return cfg.dim == 2 ? run_scenario<2>(cfg, args.seed)
                                : run_scenario<3>(cfg, args.seed);
        }
        if (dump->parsed()) {
            if (dump_preset.empty() && dump_config_path.empty())
                throw Error("dump needs --preset or --config");
            ScenarioConfig cfg = dump_preset.empty() ? parse_config_file(dump_config_path)
                                                     : preset(dump_preset);
            std::cout << dump_config(cfg);
            return 0;
        }
        if (bench->parsed()) {
            const bool fast = backends.find("fast") != std::string::npos;
            const bool dense = backends.find("dense") != std::string::npos;
            auto report = run_bench(parse_ladder(ladder_spec), bench_M, fast, dense, bench_steps,
                                    assembly_spec.empty() ? std::vector<IVec<2>>{}
                                                          : parse_ladder(assembly_spec));
            const std::string json = to_json(report);
            if (report_path.empty()) {
                std::cout << json;
            } else {
                std::ofstream out(report_path);
                if (!out) throw IoError("cannot open report file: " + report_path);
                out << json;
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
