#pragma once

#include <array>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pdfast/errors.hpp"
#include "pdfast/timestepping.hpp"

namespace pdfast {

/// Flat, dimension-agnostic description of a run. Parsed from the config
/// grammar or produced by a preset; resolved into Problem<Dim> at build time.
struct ScenarioConfig {
    std::string name = "custom";
    int dim = 2;
    std::array<double, 3> extent{};
    double h = 0.0;
    double thickness = 0.0;  // 2D only

    double E = 0.0;
    double nu = 0.0;
    double rho = 0.0;
    std::optional<double> G0;
    std::optional<double> s0;
    PlaneMode mode = PlaneMode::Stress;

    std::optional<double> delta;  // absolute horizon ...
    std::optional<int> ratio;     // ... or delta = ratio * h

    Method method = Method::Fast;
    Integrator integrator = Integrator::Vv;
    double dt = 1.0;
    long steps = 0;
    std::optional<double> damping;

    struct CfgBoxed {
        std::array<double, 6> box{};  // lo xyz, hi xyz (z entries unused in 2D)
        std::array<double, 3> value{};
        bool operator==(const CfgBoxed&) const = default;
    };
    struct CfgConstraint {
        std::array<double, 6> box{};
        std::string directions;  // subset of "xyz"
        ConstraintKind kind = ConstraintKind::Displacement;
        double value = 0.0;
        bool operator==(const CfgConstraint&) const = default;
    };
    struct CfgCrack {
        std::array<double, 4> segment{};  // 2D: x0 y0 x1 y1
        double width = 0.0;
        bool operator==(const CfgCrack&) const = default;
    };
    struct CfgNotch {
        int axis = 1;
        double plane = 0.0;
        double width = 0.0;
        std::array<double, 3> lo{};
        std::array<double, 3> hi{};
        bool operator==(const CfgNotch&) const = default;
    };

    std::vector<CfgConstraint> constraints;
    std::vector<CfgBoxed> loads;
    std::vector<CfgBoxed> initial_velocities;
    std::vector<CfgCrack> cracks;
    std::vector<CfgNotch> notches;
    std::optional<std::array<double, 6>> watch;

    std::string out_dir = "out";
    std::vector<std::array<double, 3>> monitors;
    long snapshot_every = 0;

    bool operator==(const ScenarioConfig&) const = default;
};

namespace cfgdetail {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline int axis_of(char c) {
    switch (c) {
        case 'x': return 0;
        case 'y': return 1;
        case 'z': return 2;
        default: return -1;
    }
}

struct Line {
    int number = 0;
    std::string section;
    std::string key;
    std::vector<std::string> tokens;
    int key_col = 1;
};

}  // namespace cfgdetail

/// Parses the config grammar: '[section]' headers, 'key = values' entries,
/// '#' comments. Sections constraint/load/initial_velocity/crack/notch may
/// repeat; each occurrence appends a new item.
inline ScenarioConfig parse_config(std::istream& in) {
    ScenarioConfig cfg;
    std::string section;
    std::string raw;
    int lineno = 0;

    auto need = [&](const cfgdetail::Line& l, std::size_t count) {
        if (l.tokens.size() != count)
            throw ParseError(l.number, l.key_col,
                             "key '" + l.key + "' expects " + std::to_string(count) +
                                 " value(s), got " + std::to_string(l.tokens.size()));
    };
    auto num = [&](const cfgdetail::Line& l, std::size_t i) {
        try {
            std::size_t used = 0;
            double v = std::stod(l.tokens[i], &used);
            if (used != l.tokens[i].size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw ParseError(l.number, l.key_col, "'" + l.tokens[i] + "' is not a number");
        }
    };
    auto boxv = [&](const cfgdetail::Line& l) {
        std::array<double, 6> b{};
        if (l.tokens.size() != 4 && l.tokens.size() != 6)
            throw ParseError(l.number, l.key_col, "box expects 4 (2D) or 6 (3D) numbers");
        const int d = l.tokens.size() == 4 ? 2 : 3;
        for (int k = 0; k < d; ++k) b[k] = num(l, k);
        for (int k = 0; k < d; ++k) b[3 + k] = num(l, d + k);
        return b;
    };
    auto vec3 = [&](const cfgdetail::Line& l) {
        std::array<double, 3> v{};
        if (l.tokens.size() < 1 || l.tokens.size() > 3)
            throw ParseError(l.number, l.key_col, "expected 1-3 numbers");
        for (std::size_t k = 0; k < l.tokens.size(); ++k) v[k] = num(l, k);
        return v;
    };

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError(lineno, static_cast<int>(first) + 1, "unterminated section header");
            section = line.substr(1, line.size() - 2);
            const bool known =
                section == "geometry" || section == "material" || section == "horizon" ||
                section == "solver" || section == "output" || section == "constraint" ||
                section == "load" || section == "initial_velocity" || section == "crack" ||
                section == "notch" || section == "watch";
            if (!known)
                throw ParseError(lineno, static_cast<int>(first) + 2, "unknown section '" + section + "'");
            if (section == "constraint") cfg.constraints.emplace_back();
            if (section == "load") cfg.loads.emplace_back();
            if (section == "initial_velocity") cfg.initial_velocities.emplace_back();
            if (section == "crack") cfg.cracks.emplace_back();
            if (section == "notch") cfg.notches.emplace_back();
            continue;
        }

        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(lineno, static_cast<int>(first) + 1, "expected 'key = value'");

        cfgdetail::Line l;
        l.number = lineno;
        l.section = section;
        l.key_col = static_cast<int>(first) + 1;
        {
            std::string k = line.substr(0, eq);
            auto e = k.find_last_not_of(" \t");
            l.key = k.substr(0, e == std::string::npos ? 0 : e + 1);
            std::istringstream vs(line.substr(eq + 1));
            std::string tok;
            while (vs >> tok) l.tokens.push_back(tok);
        }
        if (l.key.empty()) throw ParseError(lineno, l.key_col, "missing key before '='");

        auto word = [&]() -> const std::string& {
            need(l, 1);
            return l.tokens[0];
        };

        if (section == "geometry") {
            if (l.key == "dim") cfg.dim = static_cast<int>(num(l, 0));
            else if (l.key == "extent") cfg.extent = vec3(l);
            else if (l.key == "h") cfg.h = num(l, 0);
            else if (l.key == "thickness") cfg.thickness = num(l, 0);
            else if (l.key == "name") cfg.name = word();
            else throw ParseError(lineno, l.key_col, "unknown geometry key '" + l.key + "'");
        } else if (section == "material") {
            if (l.key == "E") cfg.E = num(l, 0);
            else if (l.key == "nu") cfg.nu = num(l, 0);
            else if (l.key == "rho") cfg.rho = num(l, 0);
            else if (l.key == "G0") cfg.G0 = num(l, 0);
            else if (l.key == "s0") cfg.s0 = num(l, 0);
            else if (l.key == "mode") {
                const std::string& m = word();
                if (m == "stress") cfg.mode = PlaneMode::Stress;
                else if (m == "strain") cfg.mode = PlaneMode::Strain;
                else throw ParseError(lineno, l.key_col, "mode must be stress|strain");
            } else throw ParseError(lineno, l.key_col, "unknown material key '" + l.key + "'");
        } else if (section == "horizon") {
            if (l.key == "delta") cfg.delta = num(l, 0);
            else if (l.key == "ratio") cfg.ratio = static_cast<int>(num(l, 0));
            else throw ParseError(lineno, l.key_col, "unknown horizon key '" + l.key + "'");
        } else if (section == "solver") {
            if (l.key == "method") {
                const std::string& m = word();
                if (m == "fast") cfg.method = Method::Fast;
                else if (m == "dense") cfg.method = Method::Dense;
                else throw ParseError(lineno, l.key_col, "method must be fast|dense");
            } else if (l.key == "integrator") {
                const std::string& m = word();
                if (m == "adr") cfg.integrator = Integrator::Adr;
                else if (m == "vv") cfg.integrator = Integrator::Vv;
                else throw ParseError(lineno, l.key_col, "integrator must be adr|vv");
            } else if (l.key == "dt") cfg.dt = num(l, 0);
            else if (l.key == "steps") cfg.steps = static_cast<long>(num(l, 0));
            else if (l.key == "damping") cfg.damping = num(l, 0);
            else throw ParseError(lineno, l.key_col, "unknown solver key '" + l.key + "'");
        } else if (section == "watch") {
            if (l.key == "box") cfg.watch = boxv(l);
            else throw ParseError(lineno, l.key_col, "unknown watch key '" + l.key + "'");
        } else if (section == "constraint") {
            auto& cs = cfg.constraints.back();
            if (l.key == "box") cs.box = boxv(l);
            else if (l.key == "directions") {
                cs.directions = word();
                for (char ch : cs.directions)
                    if (cfgdetail::axis_of(ch) < 0)
                        throw ParseError(lineno, l.key_col, "directions must be a subset of xyz");
            } else if (l.key == "type") {
                const std::string& m = word();
                if (m == "displacement") cs.kind = ConstraintKind::Displacement;
                else if (m == "velocity") cs.kind = ConstraintKind::Velocity;
                else throw ParseError(lineno, l.key_col, "type must be displacement|velocity");
            } else if (l.key == "value") cs.value = num(l, 0);
            else throw ParseError(lineno, l.key_col, "unknown constraint key '" + l.key + "'");
        } else if (section == "load" || section == "initial_velocity") {
            auto& it = section == "load" ? cfg.loads.back() : cfg.initial_velocities.back();
            if (l.key == "box") it.box = boxv(l);
            else if (l.key == "value") it.value = vec3(l);
            else throw ParseError(lineno, l.key_col, "unknown " + section + " key '" + l.key + "'");
        } else if (section == "crack") {
            auto& ck = cfg.cracks.back();
            if (l.key == "segment") {
                need(l, 4);
                for (int k = 0; k < 4; ++k) ck.segment[k] = num(l, k);
            } else if (l.key == "width") ck.width = num(l, 0);
            else throw ParseError(lineno, l.key_col, "unknown crack key '" + l.key + "'");
        } else if (section == "notch") {
            auto& nt = cfg.notches.back();
            if (l.key == "axis") {
                const int a = cfgdetail::axis_of(word()[0]);
                if (a < 0) throw ParseError(lineno, l.key_col, "axis must be x|y|z");
                nt.axis = a;
            } else if (l.key == "plane") nt.plane = num(l, 0);
            else if (l.key == "width") nt.width = num(l, 0);
            else if (l.key == "lo") nt.lo = vec3(l);
            else if (l.key == "hi") nt.hi = vec3(l);
            else throw ParseError(lineno, l.key_col, "unknown notch key '" + l.key + "'");
        } else if (section == "output") {
            if (l.key == "dir") cfg.out_dir = word();
            else if (l.key == "monitor") cfg.monitors.push_back(vec3(l));
            else if (l.key == "snapshot_every") cfg.snapshot_every = static_cast<long>(num(l, 0));
            else throw ParseError(lineno, l.key_col, "unknown output key '" + l.key + "'");
        } else {
            throw ParseError(lineno, l.key_col, "key outside of any section");
        }
    }
    return cfg;
}

inline ScenarioConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    return parse_config(in);
}

inline ScenarioConfig parse_config_string(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

/// Every violation found, or empty when the config is usable.
inline std::vector<std::string> validate_config(const ScenarioConfig& cfg) {
    std::vector<std::string> bad;
    auto check = [&](bool ok, const std::string& msg) {
        if (!ok) bad.push_back(msg);
    };
    check(cfg.dim == 2 || cfg.dim == 3, "geometry.dim must be 2 or 3");
    const int dim = cfg.dim == 3 ? 3 : 2;
    check(cfg.h > 0.0, "geometry.h must be positive");
    for (int d = 0; d < dim; ++d)
        check(cfg.extent[d] > 0.0, "geometry.extent must be positive on every axis");
    if (dim == 2) check(cfg.thickness > 0.0, "geometry.thickness required in 2D");
    check(cfg.E > 0.0, "material.E must be positive");
    check(cfg.rho > 0.0, "material.rho must be positive");
    check(cfg.delta.has_value() != cfg.ratio.has_value(),
          "horizon needs exactly one of delta or ratio");
    check(cfg.dt > 0.0, "solver.dt must be positive");
    check(cfg.steps >= 0, "solver.steps must be non-negative");
    check(cfg.snapshot_every >= 0, "output.snapshot_every must be non-negative");

    auto box_inside = [&](const std::array<double, 6>& b, const std::string& what) {
        for (int d = 0; d < dim; ++d) {
            if (b[d] < -1e-12 || b[3 + d] > cfg.extent[d] + 1e-12 || b[d] > b[3 + d]) {
                bad.push_back(what + " box must lie within the domain");
                return;
            }
        }
    };
    for (const auto& cs : cfg.constraints) {
        box_inside(cs.box, "constraint");
        check(!cs.directions.empty(), "constraint.directions must not be empty");
        for (char ch : cs.directions)
            check(cfgdetail::axis_of(ch) >= 0 && cfgdetail::axis_of(ch) < dim,
                  "constraint direction outside the model dimension");
    }
    for (const auto& ld : cfg.loads) box_inside(ld.box, "load");
    for (const auto& iv : cfg.initial_velocities) box_inside(iv.box, "initial_velocity");
    for (const auto& m : cfg.monitors)
        for (int d = 0; d < dim; ++d)
            check(m[d] >= 0.0 && m[d] <= cfg.extent[d], "monitor point outside the domain");
    if (dim == 2)
        check(cfg.notches.empty(), "notch sections are 3D only");
    else
        check(cfg.cracks.empty(), "crack segments are 2D only (use notch in 3D)");
    return bad;
}

/// Canonical re-parseable dump with a fixed field order.
inline std::string dump_config(const ScenarioConfig& cfg) {
    using cfgdetail::fmt;
    std::ostringstream o;
    const int dim = cfg.dim;
    auto box = [&](const std::array<double, 6>& b) {
        std::string s;
        for (int d = 0; d < dim; ++d) s += fmt(b[d]) + " ";
        for (int d = 0; d < dim; ++d) s += fmt(b[3 + d]) + (d + 1 < dim ? " " : "");
        return s;
    };
    auto vec = [&](const std::array<double, 3>& v) {
        std::string s;
        for (int d = 0; d < dim; ++d) s += fmt(v[d]) + (d + 1 < dim ? " " : "");
        return s;
    };
    o << "[geometry]\n";
    o << "name = " << cfg.name << "\n";
    o << "dim = " << dim << "\n";
    o << "extent = " << vec(cfg.extent) << "\n";
    o << "h = " << fmt(cfg.h) << "\n";
    if (dim == 2) o << "thickness = " << fmt(cfg.thickness) << "\n";
    o << "\n[material]\n";
    o << "E = " << fmt(cfg.E) << "\n";
    o << "nu = " << fmt(cfg.nu) << "\n";
    o << "rho = " << fmt(cfg.rho) << "\n";
    if (cfg.G0) o << "G0 = " << fmt(*cfg.G0) << "\n";
    if (cfg.s0) o << "s0 = " << fmt(*cfg.s0) << "\n";
    o << "mode = " << (cfg.mode == PlaneMode::Stress ? "stress" : "strain") << "\n";
    o << "\n[horizon]\n";
    if (cfg.delta) o << "delta = " << fmt(*cfg.delta) << "\n";
    if (cfg.ratio) o << "ratio = " << *cfg.ratio << "\n";
    o << "\n[solver]\n";
    o << "method = " << (cfg.method == Method::Fast ? "fast" : "dense") << "\n";
    o << "integrator = " << (cfg.integrator == Integrator::Adr ? "adr" : "vv") << "\n";
    o << "dt = " << fmt(cfg.dt) << "\n";
    o << "steps = " << cfg.steps << "\n";
    if (cfg.damping) o << "damping = " << fmt(*cfg.damping) << "\n";
    if (cfg.watch) o << "\n[watch]\nbox = " << box(*cfg.watch) << "\n";
    for (const auto& cs : cfg.constraints) {
        o << "\n[constraint]\n";
        o << "box = " << box(cs.box) << "\n";
        o << "directions = " << cs.directions << "\n";
        o << "type = " << (cs.kind == ConstraintKind::Displacement ? "displacement" : "velocity")
          << "\n";
        o << "value = " << fmt(cs.value) << "\n";
    }
    for (const auto& ld : cfg.loads)
        o << "\n[load]\nbox = " << box(ld.box) << "\nvalue = " << vec(ld.value) << "\n";
    for (const auto& iv : cfg.initial_velocities)
        o << "\n[initial_velocity]\nbox = " << box(iv.box) << "\nvalue = " << vec(iv.value)
          << "\n";
    for (const auto& ck : cfg.cracks) {
        o << "\n[crack]\nsegment = " << fmt(ck.segment[0]) << " " << fmt(ck.segment[1]) << " "
          << fmt(ck.segment[2]) << " " << fmt(ck.segment[3]) << "\n";
        o << "width = " << fmt(ck.width) << "\n";
    }
    for (const auto& nt : cfg.notches) {
        o << "\n[notch]\naxis = " << "xyz"[nt.axis] << "\n";
        o << "plane = " << fmt(nt.plane) << "\n";
        o << "width = " << fmt(nt.width) << "\n";
        o << "lo = " << vec(nt.lo) << "\n";
        o << "hi = " << vec(nt.hi) << "\n";
    }
    o << "\n[output]\n";
    o << "dir = " << cfg.out_dir << "\n";
    for (const auto& m : cfg.monitors) o << "monitor = " << vec(m) << "\n";
    o << "snapshot_every = " << cfg.snapshot_every << "\n";
    return o.str();
}

/// Resolves the flat config into a typed problem. Fails with ValidationError
/// when validate_config reports violations.
template <int Dim>
inline Problem<Dim> make_problem(const ScenarioConfig& cfg) {
    if (auto bad = validate_config(cfg); !bad.empty()) throw ValidationError(bad);
    if (cfg.dim != Dim) throw ValidationError({"config dimension does not match the solver"});

    Problem<Dim> prob;
    Vec<Dim> lo{}, hi{};
    for (int d = 0; d < Dim; ++d) hi[d] = cfg.extent[d];
    prob.grid = build_grid<Dim>(lo, hi, cfg.h, cfg.thickness);
    prob.horizon = cfg.delta ? Horizon::from_delta(*cfg.delta, prob.grid.h)
                             : Horizon::from_ratio(*cfg.ratio, prob.grid.h);
    prob.material = Material{cfg.E, cfg.nu, cfg.rho, cfg.G0, cfg.s0, cfg.mode};
    prob.s0 = prob.material.s0(prob.horizon.delta);

    auto to_box = [&](const std::array<double, 6>& b) {
        Box<Dim> box;
        for (int d = 0; d < Dim; ++d) {
            box.lo[d] = b[d];
            box.hi[d] = b[3 + d];
        }
        return box;
    };
    for (const auto& cs : cfg.constraints) {
        Constraint<Dim> c;
        c.box = to_box(cs.box);
        for (char ch : cs.directions) c.dir_mask |= 1u << cfgdetail::axis_of(ch);
        c.kind = cs.kind;
        c.value = cs.value;
        prob.constraints.push_back(c);
    }
    for (const auto& ld : cfg.loads) {
        Load<Dim> l;
        l.box = to_box(ld.box);
        for (int d = 0; d < Dim; ++d) l.value[d] = ld.value[d];
        prob.loads.push_back(l);
    }
    for (const auto& iv : cfg.initial_velocities) {
        InitialVelocity<Dim> v;
        v.box = to_box(iv.box);
        for (int d = 0; d < Dim; ++d) v.value[d] = iv.value[d];
        prob.initial_velocities.push_back(v);
    }
    if constexpr (Dim == 2) {
        for (const auto& ck : cfg.cracks)
            prob.cracks.segments.push_back({{ck.segment[0], ck.segment[1]},
                                            {ck.segment[2], ck.segment[3]},
                                            ck.width});
    } else {
        for (const auto& nt : cfg.notches) {
            typename CrackSpec<3>::Notch n;
            n.axis = nt.axis;
            n.plane = nt.plane;
            n.width = nt.width;
            for (int d = 0; d < 3; ++d) {
                n.lo[d] = nt.lo[d];
                n.hi[d] = nt.hi[d];
            }
            prob.cracks.notches.push_back(n);
        }
    }
    if (cfg.watch) prob.watch = to_box(*cfg.watch);
    return prob;
}

inline SolverOptions make_solver_options(const ScenarioConfig& cfg) {
    return SolverOptions{cfg.method, cfg.integrator, cfg.dt, cfg.damping};
}

/// The four bundled scenarios. An optional spacing override rescales the
/// lattice; loads given as tractions over one boundary layer rescale with it.
inline ScenarioConfig preset(const std::string& name,
                             std::optional<double> h_override = std::nullopt) {
    ScenarioConfig cfg;
    if (name == "plate_tension") {
        // 2D plate pulled at both ends, quasi-static
        const double h = h_override.value_or(0.0025);
        const double p0 = 2e8;
        cfg.name = name;
        cfg.dim = 2;
        cfg.extent = {1.0, 0.5, 0.0};
        cfg.h = h;
        cfg.thickness = 0.0025;
        cfg.E = 2e11;
        cfg.nu = 1.0 / 3.0;
        cfg.rho = 7850.0;
        cfg.delta = 0.03;
        cfg.method = Method::Fast;
        cfg.integrator = Integrator::Adr;
        cfg.dt = 1.0;
        cfg.steps = 3000;
        cfg.loads.push_back({{0.0, 0.0, 0.0, h, 0.5, 0.0}, {-p0 / h, 0.0, 0.0}});
        cfg.loads.push_back({{1.0 - h, 0.0, 0.0, 1.0, 0.5, 0.0}, {p0 / h, 0.0, 0.0}});
        cfg.monitors.push_back({0.255, 0.125, 0.0});
    } else if (name == "precracked_plate") {
        // 2D center-cracked square driven apart by velocity layers
        const double h = h_override.value_or(0.05 / 600.0);
        const double delta = 3 * h;
        cfg.name = name;
        cfg.dim = 2;
        cfg.extent = {0.05, 0.05, 0.0};
        cfg.h = h;
        cfg.thickness = 0.0025;
        cfg.E = 2e11;
        cfg.nu = 1.0 / 3.0;
        cfg.rho = 7850.0;
        cfg.s0 = 0.01;
        cfg.ratio = 3;
        cfg.method = Method::Fast;
        cfg.integrator = Integrator::Vv;
        cfg.dt = 1.3367e-8;
        cfg.steps = 1250;
        cfg.constraints.push_back(
            {{0.0, 0.05 - delta, 0.0, 0.05, 0.05, 0.0}, "y", ConstraintKind::Velocity, 20.0});
        cfg.constraints.push_back(
            {{0.0, 0.0, 0.0, 0.05, delta, 0.0}, "y", ConstraintKind::Velocity, -20.0});
        cfg.cracks.push_back({{0.02, 0.025, 0.03, 0.025}, 0.0});
        cfg.monitors.push_back({0.025, 0.025, 0.0});
    } else if (name == "block_tension_3d") {
        // 3D block, one end clamped, the other pulled, quasi-static
        const double h = h_override.value_or(0.01);
        const double p0 = 2e8;
        cfg.name = name;
        cfg.dim = 3;
        cfg.extent = {1.0, 0.3, 0.3};
        cfg.h = h;
        cfg.E = 2e11;
        cfg.nu = 0.25;
        cfg.rho = 7850.0;
        cfg.ratio = 3;
        cfg.method = Method::Fast;
        cfg.integrator = Integrator::Adr;
        cfg.dt = 1.0;
        cfg.steps = 1000;
        const double delta = 3 * h;
        cfg.constraints.push_back(
            {{0.0, 0.0, 0.0, delta, 0.3, 0.3}, "xyz", ConstraintKind::Displacement, 0.0});
        cfg.loads.push_back({{1.0 - h, 0.0, 0.0, 1.0, 0.3, 0.3}, {p0 / h, 0.0, 0.0}});
        cfg.monitors.push_back({0.505, 0.155, 0.155});
    } else if (name == "kalthoff_winkler") {
        // 3D doubly-notched block, impact strip kicked edge-on
        const double h = h_override.value_or(0.001);
        cfg.name = name;
        cfg.dim = 3;
        cfg.extent = {0.2, 0.1, 0.009};
        cfg.h = h;
        cfg.E = 2e11;
        cfg.nu = 0.25;
        cfg.rho = 7850.0;
        cfg.s0 = 0.01;
        cfg.ratio = 3;
        cfg.method = Method::Fast;
        cfg.integrator = Integrator::Vv;
        cfg.dt = 1.3367e-8;
        cfg.steps = 1350;
        const double w = 0.0015, a0 = 0.05;
        for (double plane : {0.025, 0.075})
            cfg.notches.push_back(
                {1, plane, w, {0.0, 0.0, 0.0}, {a0, 0.0, cfg.extent[2]}});
        cfg.initial_velocities.push_back(
            {{0.0, 0.025 + 0.5 * w, 0.0, a0, 0.075 - 0.5 * w, cfg.extent[2]}, {32.0, 0.0, 0.0}});
        cfg.monitors.push_back({0.0505, 0.0255, 0.0045});
    } else {
        throw ValidationError({"unknown preset '" + name + "'"});
    }
    return cfg;
}

inline std::vector<std::string> preset_names() {
    return {"plate_tension", "precracked_plate", "block_tension_3d", "kalthoff_winkler"};
}

}  // namespace pdfast
