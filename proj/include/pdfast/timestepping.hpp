#pragma once

#include <chrono>
#include <cmath>
#include <memory>
#include <optional>
#include <vector>

#include "pdfast/convolution.hpp"
#include "pdfast/corrections.hpp"
#include "pdfast/errors.hpp"
#include "pdfast/field.hpp"
#include "pdfast/fracture.hpp"
#include "pdfast/grid.hpp"
#include "pdfast/kernel.hpp"
#include "pdfast/ledger.hpp"
#include "pdfast/material.hpp"
#include "pdfast/reference.hpp"

namespace pdfast {

enum class Method { Fast, Dense };
enum class Integrator { Adr, Vv };

/// Body force density applied to a region.
template <int Dim>
struct Load {
    Box<Dim> box;
    Vec<Dim> value{};  // N/m^3-class per direction
};

/// Velocity kick applied once at t = 0.
template <int Dim>
struct InitialVelocity {
    Box<Dim> box;
    Vec<Dim> value{};
};

/// Everything that defines the physical problem.
template <int Dim>
struct Problem {
    Grid<Dim> grid;
    Horizon horizon;
    Material material;
    std::vector<Constraint<Dim>> constraints;
    std::vector<Load<Dim>> loads;
    std::vector<InitialVelocity<Dim>> initial_velocities;
    CrackSpec<Dim> cracks;
    std::optional<double> s0;          // fracture threshold; disabled if absent
    std::optional<Box<Dim>> watch;     // stretch checks restricted here
};

struct SolverOptions {
    Method method = Method::Fast;
    Integrator integrator = Integrator::Vv;
    double dt = 1.0;                       // physical for VV, pseudo-time for ADR
    std::optional<double> fixed_damping;   // overrides the adaptive estimate
};

struct PhaseTimers {
    double assembly_s = 0.0;
    double stepping_s = 0.0;
    double crack_s = 0.0;
};

/// Time-marched state.
template <int Dim>
struct SimState {
    VecField<Dim> u, v, f;   // f holds internal force + body force
    VecField<Dim> f_prev;    // previous total force (damping estimate)
    VecField<Dim> v_half;    // staggered velocity (quasi-static mode)
    double t = 0.0;
    index_t step = 0;
};

/// Central-difference quasi-static update with adaptive damping. The first
/// call seeds the staggered velocity from the initial force.
template <int Dim>
class AdrIntegrator {
  public:
    AdrIntegrator(const Vec<Dim>& mass, double dt, std::optional<double> fixed_damping)
        : mass_(mass), dt_(dt), fixed_damping_(fixed_damping) {}

    double last_damping() const { return last_c_; }

    /// Updates v_half and u in place; skips constrained components.
    void advance(SimState<Dim>& state, const Regions<Dim>& regions, bool first) {
        const index_t n = state.u.size();
        if (first) {
            for (int a = 0; a < Dim; ++a) {
                const double inv_m = 1.0 / mass_[a];
                for (index_t p = 0; p < n; ++p) {
                    if (regions.constrained(p, a)) continue;
                    state.v_half.c[a][p] = 0.5 * dt_ * state.f.c[a][p] * inv_m;
                }
            }
        } else {
            const double c = fixed_damping_ ? *fixed_damping_ : estimate_damping(state, regions);
            last_c_ = c;
            const double lead = 2.0 - c * dt_;
            const double trail = 1.0 / (2.0 + c * dt_);
            for (int a = 0; a < Dim; ++a) {
                const double inv_m = 1.0 / mass_[a];
                for (index_t p = 0; p < n; ++p) {
                    if (regions.constrained(p, a)) continue;
                    state.v_half.c[a][p] =
                        (lead * state.v_half.c[a][p] + 2.0 * dt_ * state.f.c[a][p] * inv_m) * trail;
                }
            }
        }
        for (int a = 0; a < Dim; ++a)
            for (index_t p = 0; p < n; ++p) {
                if (regions.constrained(p, a)) continue;
                state.u.c[a][p] += dt_ * state.v_half.c[a][p];
            }
    }

  private:
    /// Rayleigh-quotient estimate of the lowest-mode damping from the local
    /// stiffness ratio between successive force evaluations.
    double estimate_damping(const SimState<Dim>& state, const Regions<Dim>& regions) const {
        double num = 0.0, den = 0.0;
        const index_t n = state.u.size();
        for (int a = 0; a < Dim; ++a) {
            for (index_t p = 0; p < n; ++p) {
                if (regions.constrained(p, a)) continue;
                const double up = state.u.c[a][p];
                const double vh = state.v_half.c[a][p];
                double k = 0.0;
                if (vh != 0.0)
                    k = -(state.f.c[a][p] - state.f_prev.c[a][p]) / (mass_[a] * dt_ * vh);
                if (k > 0.0) num += up * up * k;
                den += up * up;
            }
        }
        if (den <= 0.0 || num <= 0.0) return 0.0;
        const double c = 2.0 * std::sqrt(num / den);
        return std::min(c, 1.9 / dt_);
    }

    Vec<Dim> mass_;
    double dt_ = 1.0;
    std::optional<double> fixed_damping_;
    double last_c_ = 0.0;
};

/// Stability mass for the quasi-static scheme: a row-sum bound on the
/// stiffness per direction, uniform over nodes.
template <int Dim>
inline Vec<Dim> adr_mass(const KernelStack<Dim>& K, double dt) {
    Vec<Dim> m{};
    for (int a = 0; a < Dim; ++a) {
        double row = 0.0;
        for (int b = 0; b < Dim; ++b) {
            double off_abs = 0.0;
            K.for_each_offset([&](const IVec<Dim>& off) { off_abs += std::abs(K.at(a, b, off)); });
            row += 2.0 * off_abs;
        }
        m[a] = 0.25 * dt * dt * row;
    }
    return m;
}

/// One simulation: assembly once, then force -> corrections -> integrate ->
/// constraints -> bond update per step, identical for both force backends.
template <int Dim>
class Simulation {
  public:
    Simulation(Problem<Dim> problem, SolverOptions options)
        : prob_(std::move(problem)), opts_(options) {
        const auto t0 = clock_t::now();

        kernels_ = build_kernel(prob_.grid, prob_.horizon, prob_.material);
        regions_ = classify_regions(prob_.grid, prob_.horizon, prob_.constraints);
        de_ = build_de(prob_.grid, prob_.horizon, regions_, kernels_);
        ledger_ = seed_cracks(prob_.cracks, prob_.grid, prob_.horizon);

        if (opts_.method == Method::Fast)
            engine_ = std::make_unique<FastForce<Dim>>(prob_.grid, prob_.horizon, kernels_);
        else
            table_ = build_neighbor_table(prob_.grid, prob_.horizon);

        applied_ = compile_constraints(prob_.grid, prob_.constraints);

        const index_t n = prob_.grid.n_nodes();
        state_.u.resize(n);
        state_.v.resize(n);
        state_.f.resize(n);
        state_.f_prev.resize(n);
        state_.v_half.resize(n);
        body_.resize(n);
        for (const auto& load : prob_.loads)
            for (index_t p = 0; p < n; ++p)
                if (load.box.contains(prob_.grid.pos(p)))
                    for (int d = 0; d < Dim; ++d) body_.c[d][p] += load.value[d];
        for (const auto& iv : prob_.initial_velocities)
            for (index_t p = 0; p < n; ++p)
                if (iv.box.contains(prob_.grid.pos(p)))
                    for (int d = 0; d < Dim; ++d) state_.v.c[d][p] = iv.value[d];

        enforce_constraints(state_.u, state_.v, 0.0, applied_);

        if (opts_.integrator == Integrator::Adr)
            adr_.emplace(adr_mass(kernels_, opts_.dt), opts_.dt, opts_.fixed_damping);

        timers_.assembly_s = seconds_since(t0);
    }

    void step() {
        const auto t0 = clock_t::now();
        if (!force_ready_) {
            evaluate_force();
            force_ready_ = true;
        }

        if (opts_.integrator == Integrator::Adr) {
            adr_->advance(state_, regions_, state_.step == 0);
            state_.t += opts_.dt;
            enforce_constraints(state_.u, state_.v, state_.t, applied_);
            std::swap(state_.f_prev, state_.f);
            evaluate_force();
        } else {
            vv_drift();
            state_.t += opts_.dt;
            enforce_constraints(state_.u, state_.v, state_.t, applied_);
            std::swap(state_.f_prev, state_.f);
            evaluate_force();
            vv_kick();
            enforce_constraints(state_.u, state_.v, state_.t, applied_);
        }
        timers_.stepping_s += seconds_since(t0);

        if (prob_.s0) {
            const auto tc = clock_t::now();
            auto broken = update_bonds(prob_.grid, prob_.horizon, state_.u, ledger_, *prob_.s0,
                                       prob_.watch);
            newly_broken_ = std::move(broken);
            timers_.crack_s += seconds_since(tc);
        }
        ++state_.step;
    }

    void run(index_t n_steps) {
        for (index_t i = 0; i < n_steps; ++i) step();
    }

    template <class Callback>
    void run(index_t n_steps, Callback&& cb) {
        for (index_t i = 0; i < n_steps; ++i) {
            step();
            cb(*this);
        }
    }

    /// Abort guard: any non-finite displacement means the run diverged.
    bool finite() const {
        for (int d = 0; d < Dim; ++d)
            for (double x : state_.u.c[d])
                if (!std::isfinite(x)) return false;
        return true;
    }

    const SimState<Dim>& state() const { return state_; }
    const Grid<Dim>& grid() const { return prob_.grid; }
    const Horizon& horizon() const { return prob_.horizon; }
    const Regions<Dim>& regions() const { return regions_; }
    const BondLedger& ledger() const { return ledger_; }
    const KernelStack<Dim>& kernels() const { return kernels_; }
    const PhaseTimers& timers() const { return timers_; }
    const std::vector<std::pair<index_t, index_t>>& newly_broken() const { return newly_broken_; }
    double adr_damping() const { return adr_ ? adr_->last_damping() : 0.0; }

    std::vector<double> damage() const {
        return damage_field(prob_.grid, prob_.horizon, ledger_);
    }

    /// Allocation estimate of the force backend plus solver state.
    std::size_t footprint_bytes() const {
        std::size_t bytes = 0;
        if (engine_) bytes += engine_->footprint_bytes();
        if (table_) bytes += table_->footprint_bytes();
        bytes += de_.footprint_bytes();
        bytes += kernels_.stencil_size() * n_pairs<Dim> * sizeof(double);
        bytes += static_cast<std::size_t>(state_.u.size()) * Dim * sizeof(double) * 6;
        return bytes;
    }

  private:
    using clock_t = std::chrono::steady_clock;

    static double seconds_since(clock_t::time_point t0) {
        return std::chrono::duration<double>(clock_t::now() - t0).count();
    }

    void evaluate_force() {
        if (engine_) {
            engine_->apply(state_.u, state_.f);
            apply_corrections(state_.f, state_.u, de_, regions_, ledger_, kernels_, prob_.grid);
        } else {
            dense_force(state_.f, state_.u, prob_.grid, prob_.horizon, prob_.material, *table_,
                        ledger_);
        }
        const index_t n = state_.f.size();
        for (int d = 0; d < Dim; ++d)
            for (index_t p = 0; p < n; ++p) state_.f.c[d][p] += body_.c[d][p];
        for (const auto& cs : applied_)
            for (int d = 0; d < Dim; ++d)
                if ((cs.dir_mask >> d) & 1u)
                    for (index_t p : cs.nodes) state_.f.c[d][p] = 0.0;
    }

    void vv_drift() {
        const double dt = opts_.dt;
        const double inv_rho = 1.0 / prob_.material.rho;
        const index_t n = state_.u.size();
        for (int a = 0; a < Dim; ++a)
            for (index_t p = 0; p < n; ++p) {
                if (regions_.constrained(p, a)) continue;
                state_.u.c[a][p] += dt * state_.v.c[a][p] +
                                    0.5 * dt * dt * state_.f.c[a][p] * inv_rho;
            }
    }

    void vv_kick() {
        const double dt = opts_.dt;
        const double inv_rho = 1.0 / prob_.material.rho;
        const index_t n = state_.u.size();
        for (int a = 0; a < Dim; ++a)
            for (index_t p = 0; p < n; ++p) {
                if (regions_.constrained(p, a)) continue;
                state_.v.c[a][p] +=
                    0.5 * dt * (state_.f_prev.c[a][p] + state_.f.c[a][p]) * inv_rho;
            }
    }

    Problem<Dim> prob_;
    SolverOptions opts_;
    KernelStack<Dim> kernels_;
    Regions<Dim> regions_;
    SurfaceDiag<Dim> de_;
    BondLedger ledger_;
    std::unique_ptr<FastForce<Dim>> engine_;
    std::optional<NeighborTable<Dim>> table_;
    std::vector<AppliedConstraint<Dim>> applied_;
    std::optional<AdrIntegrator<Dim>> adr_;
    VecField<Dim> body_;
    SimState<Dim> state_;
    PhaseTimers timers_;
    std::vector<std::pair<index_t, index_t>> newly_broken_;
    bool force_ready_ = false;
};

}  // namespace pdfast
