#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "pdfast/geometry.hpp"
#include "pdfast/grid.hpp"
#include "pdfast/material.hpp"

namespace pdfast {

/// Number of distinct force-component pairs (xx, xy, yy / plus xz, yz, zz).
template <int Dim>
inline constexpr int n_pairs = Dim * (Dim + 1) / 2;

/// Symmetric pair index: 2D -> xx=0, xy=1, yy=2;
/// 3D -> xx=0, xy=1, xz=2, yy=3, yz=4, zz=5.
template <int Dim>
inline constexpr int pair_index(int a, int b) {
    if (a > b) std::swap(a, b);
    if constexpr (Dim == 2) {
        return a + b;
    } else {
        constexpr int row_start[3] = {0, 3, 5};
        return row_start[a] + b - a;
    }
}

/// The (2M+1)^d stiffness stencils, one per component pair. Every row of the
/// translation-invariant operator is this stencil; the center entry holds the
/// negative sum of all off-center entries so each full row sums to zero.
template <int Dim>
class KernelStack {
  public:
    KernelStack() = default;

    KernelStack(int M, double h)
        : M_(M), h_(h), side_(2 * M + 1) {
        std::size_t sz = 1;
        for (int d = 0; d < Dim; ++d) sz *= side_;
        for (auto& c : comps_) c.assign(sz, 0.0);
    }

    int band_halfwidth() const { return M_; }
    int side() const { return side_; }
    double spacing() const { return h_; }
    std::size_t stencil_size() const { return comps_[0].size(); }

    std::size_t offset_index(const IVec<Dim>& off) const {
        std::size_t idx = 0;
        for (int d = Dim - 1; d >= 0; --d) idx = idx * side_ + (off[d] + M_);
        return idx;
    }

    double at(int a, int b, const IVec<Dim>& off) const {
        return comps_[pair_index<Dim>(a, b)][offset_index(off)];
    }

    double& at(int a, int b, const IVec<Dim>& off) {
        return comps_[pair_index<Dim>(a, b)][offset_index(off)];
    }

    double center(int a, int b) const {
        return comps_[pair_index<Dim>(a, b)][offset_index(IVec<Dim>{})];
    }

    const std::vector<double>& component(int pair) const { return comps_[pair]; }

    /// Visit every in-band off-center offset in a fixed lexicographic order.
    template <class Fn>
    void for_each_offset(Fn&& fn) const {
        IVec<Dim> off{};
        visit_axis<0>(off, fn);
    }

  private:
    template <int Axis, class Fn>
    void visit_axis(IVec<Dim>& off, Fn&& fn) const {
        for (int v = -M_; v <= M_; ++v) {
            off[Axis] = v;
            if constexpr (Axis + 1 < Dim) {
                visit_axis<Axis + 1>(off, fn);
            } else {
                const long n2 = norm2<Dim>(off);
                if (n2 != 0 && n2 <= static_cast<long>(M_) * M_) fn(off);
            }
        }
    }

    int M_ = 0;
    double h_ = 0.0;
    int side_ = 1;
    std::array<std::vector<double>, n_pairs<Dim>> comps_{};
};

/// Build the kernel stencils from the micromodulus. Entries depend only on
/// the index offset, never on the node position.
template <int Dim>
inline KernelStack<Dim> build_kernel(const Grid<Dim>& grid, const Horizon& hz,
                                     const Material& mat) {
    const double h = grid.h;
    const double alpha =
        micromodulus_alpha(mat.E, hz.delta, Dim,
                           Dim == 2 ? std::optional<double>(grid.thickness) : std::nullopt);
    const double vol = grid.cell_volume();

    KernelStack<Dim> K(hz.M, h);
    K.for_each_offset([&](const IVec<Dim>& off) {
        const double dist = h * std::sqrt(static_cast<double>(norm2<Dim>(off)));
        const double lam = volume_correction(dist, hz.delta, h);
        const double scale = alpha * lam * vol / (dist * dist * dist);
        for (int a = 0; a < Dim; ++a)
            for (int b = a; b < Dim; ++b)
                K.at(a, b, off) = scale * (off[a] * h) * (off[b] * h);
    });

    // center = -(row sum) per component pair
    for (int a = 0; a < Dim; ++a)
        for (int b = a; b < Dim; ++b) {
            double sum = 0.0;
            K.for_each_offset([&](const IVec<Dim>& off) { sum += K.at(a, b, off); });
            IVec<Dim> zero{};
            K.at(a, b, zero) = -sum;
        }
    return K;
}

}  // namespace pdfast
