#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "pdfast/errors.hpp"
#include "pdfast/geometry.hpp"

namespace pdfast {

/// Uniform cell-centered lattice over a rectangle (2D) or box (3D).
/// Node (i,j[,k]) sits at origin + (i+1/2)h per axis, 0-based indices.
template <int Dim>
struct Grid {
    static_assert(Dim == 2 || Dim == 3);

    Vec<Dim> origin{};
    double h = 0.0;
    IVec<Dim> dims{};
    double thickness = 0.0;  // plate thickness, 2D only

    index_t n_nodes() const {
        index_t n = 1;
        for (int d = 0; d < Dim; ++d) n *= dims[d];
        return n;
    }

    index_t lin(const IVec<Dim>& c) const {
        if constexpr (Dim == 2) {
            return static_cast<index_t>(c[1]) * dims[0] + c[0];
        } else {
            return (static_cast<index_t>(c[2]) * dims[1] + c[1]) * dims[0] + c[0];
        }
    }

    IVec<Dim> coords(index_t p) const {
        IVec<Dim> c{};
        c[0] = static_cast<int>(p % dims[0]);
        p /= dims[0];
        c[1] = static_cast<int>(p % dims[1]);
        if constexpr (Dim == 3) c[2] = static_cast<int>(p / dims[1]);
        return c;
    }

    bool in_lattice(const IVec<Dim>& c) const {
        for (int d = 0; d < Dim; ++d)
            if (c[d] < 0 || c[d] >= dims[d]) return false;
        return true;
    }

    Vec<Dim> pos(const IVec<Dim>& c) const {
        Vec<Dim> x{};
        for (int d = 0; d < Dim; ++d) x[d] = origin[d] + (c[d] + 0.5) * h;
        return x;
    }

    Vec<Dim> pos(index_t p) const { return pos(coords(p)); }

    double extent(int axis) const { return dims[axis] * h; }

    /// Physical node volume. In 2D the cell is a prism through the plate, so
    /// the thickness in the micromodulus scale cancels and uniaxial tension
    /// recovers the effective modulus E.
    double cell_volume() const { return Dim == 2 ? h * h * thickness : h * h * h; }
};

/// 1-based node numbering p = (k-1)NxNy + (j-1)Nx + i.
template <int Dim>
inline index_t node_index(const Grid<Dim>& grid, const IVec<Dim>& ijk_1based) {
    IVec<Dim> c{};
    for (int d = 0; d < Dim; ++d) {
        if (ijk_1based[d] < 1 || ijk_1based[d] > grid.dims[d])
            throw OutOfRange("node index component " + std::to_string(d) + " out of range");
        c[d] = ijk_1based[d] - 1;
    }
    return grid.lin(c) + 1;
}

template <int Dim>
inline IVec<Dim> node_coords(const Grid<Dim>& grid, index_t p_1based) {
    if (p_1based < 1 || p_1based > grid.n_nodes())
        throw OutOfRange("node id out of range");
    IVec<Dim> c = grid.coords(p_1based - 1);
    for (int d = 0; d < Dim; ++d) c[d] += 1;
    return c;
}

template <int Dim>
inline Grid<Dim> build_grid(const Vec<Dim>& lo, const Vec<Dim>& hi, double target_h,
                            double thickness = 0.0) {
    Grid<Dim> g;
    g.origin = lo;
    g.h = target_h;
    g.thickness = thickness;
    for (int d = 0; d < Dim; ++d) {
        const double extent = hi[d] - lo[d];
        if (extent <= 0.0 || target_h <= 0.0)
            throw NonDivisibleExtent("extents and spacing must be positive");
        const double n = extent / target_h;
        const double rounded = std::round(n);
        if (rounded < 1.0 || std::abs(n - rounded) > 1e-9 * n)
            throw NonDivisibleExtent("extent on axis " + std::to_string(d) +
                                     " is not an integer multiple of h");
        g.dims[d] = static_cast<int>(rounded);
    }
    return g;
}

/// Horizon radius delta together with its band half-width M = delta/h.
/// delta must be an exact integer multiple of h; a fractional ratio would
/// silently truncate the interaction band.
struct Horizon {
    double delta = 0.0;
    int M = 0;

    static Horizon from_delta(double delta, double h) {
        const double ratio = delta / h;
        const double rounded = std::round(ratio);
        if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * ratio)
            throw NonDivisibleExtent("horizon delta must be a positive integer multiple of h");
        // normalize to the product every lattice distance is computed from,
        // so bonds on the rim |offset| = M sit exactly on the delta branch
        const int m = static_cast<int>(rounded);
        return Horizon{m * h, m};
    }

    static Horizon from_ratio(int m, double h) { return Horizon{m * h, m}; }
};

/// Volume correction factor for neighbor cells straddling the horizon edge.
/// The middle branch is (2 delta + h - 2 dist) / (2 h), written so the edge
/// values 1 and 1/2 come out exact.
inline double volume_correction(double dist, double delta, double h) {
    if (dist <= delta - 0.5 * h) return 1.0;
    if (dist <= delta) return 0.5 + (delta - dist) / h;
    return 0.0;
}

/// A bond exists iff its integer offset lies in the Euclidean band;
/// membership is decided in exact integer arithmetic.
template <int Dim>
inline bool in_band(const IVec<Dim>& off, int M) {
    return norm2<Dim>(off) <= static_cast<long>(M) * M;
}

/// lambda for a lattice offset; 0 outside the band.
template <int Dim>
inline double offset_lambda(const IVec<Dim>& off, const Horizon& hz, double h) {
    const long n2 = norm2<Dim>(off);
    if (n2 == 0 || n2 > static_cast<long>(hz.M) * hz.M) return 0.0;
    return volume_correction(h * std::sqrt(static_cast<double>(n2)), hz.delta, h);
}

enum class ConstraintKind { Displacement, Velocity };

/// Prescribed-value region: each flagged direction of every node inside the
/// box is overwritten after integration (displacement h(x) or velocity rate).
template <int Dim>
struct Constraint {
    Box<Dim> box;
    std::uint8_t dir_mask = 0;  // bit d = direction d
    ConstraintKind kind = ConstraintKind::Displacement;
    double value = 0.0;
};

/// Per-node sub-domain labels. Near-surface is a purely geometric test
/// (a horizon offset leaves the lattice); constraint flags are per direction
/// and overlay it, so a node may be constrained in x and near-surface in y.
/// Fracture adjacency is dynamic and read off the bond ledger.
template <int Dim>
class Regions {
  public:
    Regions() = default;

    Regions(const Grid<Dim>& grid, const Horizon& hz,
            const std::vector<Constraint<Dim>>& constraints)
        : M_(hz.M), near_surface_(grid.n_nodes(), 0), constrained_(grid.n_nodes(), 0) {
        const index_t n = grid.n_nodes();
        for (index_t p = 0; p < n; ++p) {
            const IVec<Dim> c = grid.coords(p);
            for (int d = 0; d < Dim; ++d) {
                if (c[d] < M_ || c[d] >= grid.dims[d] - M_) {
                    near_surface_[p] = 1;
                    break;
                }
            }
        }
        for (const auto& cs : constraints) {
            for (index_t p = 0; p < n; ++p) {
                if (cs.box.contains(grid.pos(p))) constrained_[p] |= cs.dir_mask;
            }
        }
    }

    bool near_surface(index_t p) const { return near_surface_[p] != 0; }
    bool interior(index_t p) const { return near_surface_[p] == 0; }
    bool constrained(index_t p, int dir) const { return (constrained_[p] >> dir) & 1u; }
    std::uint8_t constraint_mask(index_t p) const { return constrained_[p]; }
    int band_halfwidth() const { return M_; }

    index_t size() const { return static_cast<index_t>(near_surface_.size()); }

  private:
    int M_ = 0;
    std::vector<std::uint8_t> near_surface_;
    std::vector<std::uint8_t> constrained_;
};

template <int Dim, class Ledger>
inline bool fractured_adjacent(const Regions<Dim>&, const Ledger& ledger, index_t p) {
    return ledger.broken_count(p) > 0;
}

template <int Dim>
inline Regions<Dim> classify_regions(const Grid<Dim>& grid, const Horizon& hz,
                                     const std::vector<Constraint<Dim>>& constraints) {
    return Regions<Dim>(grid, hz, constraints);
}

}  // namespace pdfast
