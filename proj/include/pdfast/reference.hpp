#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "pdfast/field.hpp"
#include "pdfast/grid.hpp"
#include "pdfast/kernel.hpp"
#include "pdfast/ledger.hpp"
#include "pdfast/material.hpp"

namespace pdfast {

/// One horizon partner of a node.
template <int Dim>
struct Neighbor {
    index_t q = 0;
    std::array<std::int16_t, Dim> off{};
    double lambda = 0.0;
    double dist = 0.0;
};

/// Horizon search result in CSR layout: exactly the partners with a positive
/// volume-corrected weight, symmetric by construction.
template <int Dim>
struct NeighborTable {
    std::vector<index_t> row_start;   // size N+1
    std::vector<Neighbor<Dim>> data;

    index_t count(index_t p) const { return row_start[p + 1] - row_start[p]; }

    const Neighbor<Dim>* begin(index_t p) const { return data.data() + row_start[p]; }
    const Neighbor<Dim>* end(index_t p) const { return data.data() + row_start[p + 1]; }

    std::size_t footprint_bytes() const {
        return row_start.size() * sizeof(index_t) + data.size() * sizeof(Neighbor<Dim>);
    }
};

template <int Dim>
inline NeighborTable<Dim> build_neighbor_table(const Grid<Dim>& grid, const Horizon& hz) {
    NeighborTable<Dim> table;
    const index_t n = grid.n_nodes();
    table.row_start.assign(static_cast<std::size_t>(n) + 1, 0);

    // in-band stencil offsets shared by every node
    std::vector<IVec<Dim>> stencil;
    std::vector<double> lambdas;
    std::vector<double> dists;
    KernelStack<Dim> proto(hz.M, grid.h);
    proto.for_each_offset([&](const IVec<Dim>& off) {
        stencil.push_back(off);
        const double dist = grid.h * std::sqrt(static_cast<double>(norm2<Dim>(off)));
        dists.push_back(dist);
        lambdas.push_back(volume_correction(dist, hz.delta, grid.h));
    });

    for (index_t p = 0; p < n; ++p) {
        const IVec<Dim> c = grid.coords(p);
        index_t cnt = 0;
        for (const auto& off : stencil) {
            IVec<Dim> q = c;
            bool inside = true;
            for (int d = 0; d < Dim; ++d) {
                q[d] += off[d];
                inside = inside && q[d] >= 0 && q[d] < grid.dims[d];
            }
            if (inside) ++cnt;
        }
        table.row_start[p + 1] = table.row_start[p] + cnt;
    }
    table.data.resize(static_cast<std::size_t>(table.row_start[n]));

    for (index_t p = 0; p < n; ++p) {
        const IVec<Dim> c = grid.coords(p);
        index_t w = table.row_start[p];
        for (std::size_t s = 0; s < stencil.size(); ++s) {
            IVec<Dim> q = c;
            bool inside = true;
            for (int d = 0; d < Dim; ++d) {
                q[d] += stencil[s][d];
                inside = inside && q[d] >= 0 && q[d] < grid.dims[d];
            }
            if (!inside) continue;
            Neighbor<Dim>& nb = table.data[static_cast<std::size_t>(w++)];
            nb.q = grid.lin(q);
            for (int d = 0; d < Dim; ++d) nb.off[d] = static_cast<std::int16_t>(stencil[s][d]);
            nb.lambda = lambdas[s];
            nb.dist = dists[s];
        }
    }
    return table;
}

/// Meshfree baseline: direct horizon summation of the bond forces with the
/// history factor from the ledger. The correctness oracle and timing baseline
/// for the spectral path.
template <int Dim>
inline void dense_force(VecField<Dim>& f, const VecField<Dim>& u, const Grid<Dim>& grid,
                        const Horizon& hz, const Material& mat, const NeighborTable<Dim>& table,
                        const BondLedger& ledger) {
    const double alpha =
        micromodulus_alpha(mat.E, hz.delta, Dim,
                           Dim == 2 ? std::optional<double>(grid.thickness) : std::nullopt);
    const double vol = grid.cell_volume();
    const double h = grid.h;
    const index_t n = grid.n_nodes();
    for (int d = 0; d < Dim; ++d) std::fill(f.c[d].begin(), f.c[d].end(), 0.0);

    const bool any_broken = ledger.total_broken() > 0;
    for (index_t p = 0; p < n; ++p) {
        const bool check = any_broken && ledger.broken_count(p) > 0;
        std::array<double, Dim> acc{};
        for (const Neighbor<Dim>* nb = table.begin(p); nb != table.end(p); ++nb) {
            if (check && ledger.is_broken(p, nb->q)) continue;
            const double scale = alpha * nb->lambda * vol / (nb->dist * nb->dist * nb->dist);
            for (int a = 0; a < Dim; ++a) {
                double s = 0.0;
                for (int b = 0; b < Dim; ++b)
                    s += (nb->off[a] * h) * (nb->off[b] * h) * (u.c[b][nb->q] - u.c[b][p]);
                acc[a] += scale * s;
            }
        }
        for (int a = 0; a < Dim; ++a) f.c[a][p] = acc[a];
    }
}

/// Dense materializations, used by the decomposition tests and the assembly
/// scaling benchmark. Memory is Theta(N^2); keep N small.
namespace dense {

/// A_hat: the translation-invariant operator generated by the kernel stencil.
template <int Dim>
inline std::vector<double> materialize_tbt(const Grid<Dim>& grid, const KernelStack<Dim>& K,
                                           int a, int b) {
    const index_t n = grid.n_nodes();
    std::vector<double> A(static_cast<std::size_t>(n) * n, 0.0);
    const int M = K.band_halfwidth();
    for (index_t p = 0; p < n; ++p) {
        const IVec<Dim> c = grid.coords(p);
        A[static_cast<std::size_t>(p) * n + p] = K.center(a, b);
        K.for_each_offset([&](const IVec<Dim>& off) {
            IVec<Dim> q = c;
            for (int d = 0; d < Dim; ++d) q[d] += off[d];
            if (!grid.in_lattice(q)) return;
            A[static_cast<std::size_t>(p) * n + grid.lin(q)] = K.at(a, b, off);
        });
        (void)M;
    }
    return A;
}

/// The true stiffness rows: band entries with the history factor, diagonal as
/// negative row sum over present unbroken bonds; rows constrained in the
/// output direction fall back to the A_hat convention.
template <int Dim>
inline std::vector<double> materialize_stiffness(const Grid<Dim>& grid,
                                                 const KernelStack<Dim>& K,
                                                 const Regions<Dim>& regions,
                                                 const BondLedger& ledger, int a, int b) {
    const index_t n = grid.n_nodes();
    std::vector<double> A(static_cast<std::size_t>(n) * n, 0.0);
    for (index_t p = 0; p < n; ++p) {
        const IVec<Dim> c = grid.coords(p);
        if (regions.constrained(p, a)) {
            A[static_cast<std::size_t>(p) * n + p] = K.center(a, b);
            K.for_each_offset([&](const IVec<Dim>& off) {
                IVec<Dim> q = c;
                for (int d = 0; d < Dim; ++d) q[d] += off[d];
                if (!grid.in_lattice(q)) return;
                A[static_cast<std::size_t>(p) * n + grid.lin(q)] = K.at(a, b, off);
            });
            continue;
        }
        double diag = 0.0;
        K.for_each_offset([&](const IVec<Dim>& off) {
            IVec<Dim> q = c;
            for (int d = 0; d < Dim; ++d) q[d] += off[d];
            if (!grid.in_lattice(q)) return;
            const index_t qi = grid.lin(q);
            if (ledger.is_broken(p, qi)) return;
            const double v = K.at(a, b, off);
            A[static_cast<std::size_t>(p) * n + qi] = v;
            diag -= v;
        });
        A[static_cast<std::size_t>(p) * n + p] = diag;
    }
    return A;
}

}  // namespace dense

}  // namespace pdfast
