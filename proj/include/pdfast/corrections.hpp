#pragma once

#include <array>
#include <functional>
#include <vector>

#include "pdfast/errors.hpp"
#include "pdfast/field.hpp"
#include "pdfast/grid.hpp"
#include "pdfast/kernel.hpp"
#include "pdfast/ledger.hpp"

namespace pdfast {

/// Diagonal near-surface correction: per component pair, the sum of kernel
/// entries at horizon offsets that leave the lattice. Time-invariant for a
/// fixed geometry. Storage is geometric (symmetric in the pair); rows whose
/// direction is constrained read back zero and receive no correction.
template <int Dim>
class SurfaceDiag {
  public:
    SurfaceDiag() = default;

    SurfaceDiag(const Grid<Dim>& grid, const Horizon&, const Regions<Dim>& regions,
                const KernelStack<Dim>& K) {
        const index_t n = grid.n_nodes();
        for (auto& v : diag_) v.assign(static_cast<std::size_t>(n), 0.0);
        surface_nodes_.clear();
        for (index_t p = 0; p < n; ++p) {
            if (!regions.near_surface(p)) continue;
            surface_nodes_.push_back(p);
            const IVec<Dim> c = grid.coords(p);
            K.for_each_offset([&](const IVec<Dim>& off) {
                IVec<Dim> q = c;
                for (int d = 0; d < Dim; ++d) q[d] += off[d];
                if (grid.in_lattice(q)) return;
                for (int a = 0; a < Dim; ++a)
                    for (int b = a; b < Dim; ++b)
                        diag_[pair_index<Dim>(a, b)][p] += K.at(a, b, off);
            });
        }
    }

    /// Row-direction value: zero for interior rows and rows constrained in a.
    double value(int a, int b, index_t p, const Regions<Dim>& regions) const {
        if (regions.constrained(p, a)) return 0.0;
        return diag_[pair_index<Dim>(a, b)][p];
    }

    double raw(int a, int b, index_t p) const { return diag_[pair_index<Dim>(a, b)][p]; }

    const std::vector<index_t>& surface_nodes() const { return surface_nodes_; }

    std::size_t footprint_bytes() const {
        return n_pairs<Dim> * diag_[0].size() * sizeof(double) +
               surface_nodes_.size() * sizeof(index_t);
    }

  private:
    std::array<std::vector<double>, n_pairs<Dim>> diag_{};
    std::vector<index_t> surface_nodes_;
};

template <int Dim>
inline SurfaceDiag<Dim> build_de(const Grid<Dim>& grid, const Horizon& hz,
                                 const Regions<Dim>& regions, const KernelStack<Dim>& K) {
    return SurfaceDiag<Dim>(grid, hz, regions, K);
}

/// Restores the true force from the spectral product:
///   f_p += De_pp u_p                      (missing-neighbor rows)
///   f_p += sum_{q in v_p} K(pq) (u_p-u_q) (fracture rows)
/// Rows constrained in the output direction are left untouched; their values
/// are overwritten by the constraint pass downstream.
template <int Dim>
inline void apply_corrections(VecField<Dim>& f, const VecField<Dim>& u,
                              const SurfaceDiag<Dim>& de, const Regions<Dim>& regions,
                              const BondLedger& ledger, const KernelStack<Dim>& K,
                              const Grid<Dim>& grid) {
    for (index_t p : de.surface_nodes()) {
        for (int a = 0; a < Dim; ++a) {
            if (regions.constrained(p, a)) continue;
            double acc = 0.0;
            for (int b = 0; b < Dim; ++b) acc += de.raw(a, b, p) * u.c[b][p];
            f.c[a][p] += acc;
        }
    }

    const int M = K.band_halfwidth();
    const index_t n = ledger.n_nodes();
    for (index_t p = 0; p < n; ++p) {
        const auto& broken = ledger.broken_partners(p);
        if (broken.empty()) continue;
        const IVec<Dim> cp = grid.coords(p);
        for (index_t q : broken) {
            const IVec<Dim> cq = grid.coords(q);
            IVec<Dim> off{};
            for (int d = 0; d < Dim; ++d) off[d] = cq[d] - cp[d];
            if (!in_band<Dim>(off, M))
                throw LedgerOutOfBand("broken bond exceeds the horizon band");
            for (int a = 0; a < Dim; ++a) {
                if (regions.constrained(p, a)) continue;
                double acc = 0.0;
                for (int b = 0; b < Dim; ++b)
                    acc += K.at(a, b, off) * (u.c[b][p] - u.c[b][q]);
                f.c[a][p] += acc;
            }
        }
    }
}

/// Compiled constraint: node list plus per-direction prescription.
template <int Dim>
struct AppliedConstraint {
    std::vector<index_t> nodes;
    std::uint8_t dir_mask = 0;
    ConstraintKind kind = ConstraintKind::Displacement;
    double value = 0.0;
};

template <int Dim>
inline std::vector<AppliedConstraint<Dim>> compile_constraints(
    const Grid<Dim>& grid, const std::vector<Constraint<Dim>>& constraints) {
    std::vector<AppliedConstraint<Dim>> out;
    out.reserve(constraints.size());
    for (const auto& cs : constraints) {
        AppliedConstraint<Dim> ac;
        ac.dir_mask = cs.dir_mask;
        ac.kind = cs.kind;
        ac.value = cs.value;
        const index_t n = grid.n_nodes();
        for (index_t p = 0; p < n; ++p)
            if (cs.box.contains(grid.pos(p))) ac.nodes.push_back(p);
        out.push_back(std::move(ac));
    }
    return out;
}

/// Overwrites constrained displacement/velocity components at time t.
/// Velocity constraints integrate from zero: u = rate * t, v = rate.
template <int Dim>
inline void enforce_constraints(VecField<Dim>& u, VecField<Dim>& v, double t,
                                const std::vector<AppliedConstraint<Dim>>& constraints) {
    for (const auto& cs : constraints) {
        for (int d = 0; d < Dim; ++d) {
            if (!((cs.dir_mask >> d) & 1u)) continue;
            if (cs.kind == ConstraintKind::Displacement) {
                for (index_t p : cs.nodes) {
                    u.c[d][p] = cs.value;
                    v.c[d][p] = 0.0;
                }
            } else {
                for (index_t p : cs.nodes) {
                    u.c[d][p] = cs.value * t;
                    v.c[d][p] = cs.value;
                }
            }
        }
    }
}

/// Per-bond stiffening coefficients for the near-surface recomputation.
struct SurfaceCoefficients {
    std::function<double(index_t p, index_t q)> value;

    static SurfaceCoefficients uniform(double v) {
        return SurfaceCoefficients{[v](index_t, index_t) { return v; }};
    }
};

/// Direct re-summation of near-surface rows with coefficients v_pq, replacing
/// the spectral value there. Costs O(|surface| * M^d); everything else keeps
/// the fast path.
template <int Dim>
inline void surface_corrected_rows(VecField<Dim>& f, const VecField<Dim>& u,
                                   const Regions<Dim>& regions, const SurfaceDiag<Dim>& de,
                                   const BondLedger& ledger, const KernelStack<Dim>& K,
                                   const Grid<Dim>& grid, const SurfaceCoefficients& coeffs) {
    if (!coeffs.value) throw MissingCoefficients("surface correction coefficients not supplied");
    for (index_t p : de.surface_nodes()) {
        const IVec<Dim> cp = grid.coords(p);
        std::array<double, Dim> row{};
        bool any = false;
        for (int a = 0; a < Dim; ++a) any = any || !regions.constrained(p, a);
        if (!any) continue;
        K.for_each_offset([&](const IVec<Dim>& off) {
            IVec<Dim> cq = cp;
            for (int d = 0; d < Dim; ++d) cq[d] += off[d];
            if (!grid.in_lattice(cq)) return;
            const index_t q = grid.lin(cq);
            if (ledger.is_broken(p, q)) return;
            const double v = coeffs.value(p, q);
            for (int a = 0; a < Dim; ++a) {
                double acc = 0.0;
                for (int b = 0; b < Dim; ++b)
                    acc += K.at(a, b, off) * (u.c[b][q] - u.c[b][p]);
                row[a] += v * acc;
            }
        });
        for (int a = 0; a < Dim; ++a)
            if (!regions.constrained(p, a)) f.c[a][p] = row[a];
    }
}

}  // namespace pdfast
