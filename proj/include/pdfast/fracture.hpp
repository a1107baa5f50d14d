#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "pdfast/field.hpp"
#include "pdfast/grid.hpp"
#include "pdfast/kernel.hpp"
#include "pdfast/ledger.hpp"

namespace pdfast {

/// Exact (non-linearized) bond stretch.
template <int Dim>
inline double bond_stretch(const Vec<Dim>& xp, const Vec<Dim>& xq, const Vec<Dim>& up,
                           const Vec<Dim>& uq) {
    double len0 = 0.0, len1 = 0.0;
    for (int d = 0; d < Dim; ++d) {
        const double r = xq[d] - xp[d];
        const double e = r + uq[d] - up[d];
        len0 += r * r;
        len1 += e * e;
    }
    len0 = std::sqrt(len0);
    len1 = std::sqrt(len1);
    return (len1 - len0) / len0;
}

namespace detail {

/// Orientation sign with a zero filter: configurations whose determinant
/// falls below the round-off bound of its own terms are degenerate (grazing
/// or collinear) and classify as zero. Lattice geometry keeps genuine
/// crossings many orders of magnitude above the filter, so the decision is
/// deterministic and mirror-consistent even though coordinates are inexact.
inline int orient2_sign(const Vec<2>& a, const Vec<2>& b, const Vec<2>& c) {
    const double t1 = (b[0] - a[0]) * (c[1] - a[1]);
    const double t2 = (b[1] - a[1]) * (c[0] - a[0]);
    const double det = t1 - t2;
    const double tol = 1e-10 * (std::abs(t1) + std::abs(t2));
    if (std::abs(det) <= tol) return 0;
    return det > 0.0 ? 1 : -1;
}

/// Proper (interior) segment crossing; collinear or grazing contact does not
/// count.
inline bool segments_cross(const Vec<2>& a, const Vec<2>& b, const Vec<2>& p, const Vec<2>& q) {
    const int o1 = orient2_sign(a, b, p);
    const int o2 = orient2_sign(a, b, q);
    const int o3 = orient2_sign(p, q, a);
    const int o4 = orient2_sign(p, q, b);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

}  // namespace detail

template <int Dim>
struct CrackSpec;

/// 2D cracks: line segments, optionally widened to a slot. A slot breaks the
/// bonds crossing either long face, reproducing a cut of finite width.
template <>
struct CrackSpec<2> {
    struct Segment {
        Vec<2> a{};
        Vec<2> b{};
        double width = 0.0;
    };
    std::vector<Segment> segments;

    bool empty() const { return segments.empty(); }

    bool bond_crosses(const Vec<2>& p, const Vec<2>& q) const {
        for (const auto& s : segments) {
            if (s.width <= 0.0) {
                if (detail::segments_cross(s.a, s.b, p, q)) return true;
                continue;
            }
            Vec<2> t = sub<2>(s.b, s.a);
            const double len = norm<2>(t);
            if (len == 0.0) continue;
            const Vec<2> nrm{-t[1] / len, t[0] / len};
            for (double side : {0.5 * s.width, -0.5 * s.width}) {
                const Vec<2> fa{s.a[0] + side * nrm[0], s.a[1] + side * nrm[1]};
                const Vec<2> fb{s.b[0] + side * nrm[0], s.b[1] + side * nrm[1]};
                if (detail::segments_cross(fa, fb, p, q)) return true;
            }
        }
        return false;
    }

    /// Axis-aligned hull of the crack geometry, for localized seeding.
    Box<2> bounds() const {
        Box<2> bb{{1e300, 1e300}, {-1e300, -1e300}};
        for (const auto& s : segments)
            for (const Vec<2>& v : {s.a, s.b})
                for (int d = 0; d < 2; ++d) {
                    bb.lo[d] = std::min(bb.lo[d], v[d] - s.width);
                    bb.hi[d] = std::max(bb.hi[d], v[d] + s.width);
                }
        return bb;
    }
};

/// 3D cracks: axis-normal rectangular notches of finite width. A bond breaks
/// when it pierces either face plane inside the rectangle bounds.
template <>
struct CrackSpec<3> {
    struct Notch {
        int axis = 0;       // normal direction
        double plane = 0.0; // mid-plane coordinate on `axis`
        double width = 0.0;
        Vec<3> lo{};        // in-plane extent (entry on `axis` ignored)
        Vec<3> hi{};
    };
    std::vector<Notch> notches;

    bool empty() const { return notches.empty(); }

    bool bond_crosses(const Vec<3>& p, const Vec<3>& q) const {
        for (const auto& nt : notches) {
            const double faces[2] = {nt.plane - 0.5 * nt.width, nt.plane + 0.5 * nt.width};
            const int n_faces = nt.width > 0.0 ? 2 : 1;
            for (int fi = 0; fi < n_faces; ++fi) {
                const double face = nt.width > 0.0 ? faces[fi] : nt.plane;
                const double dp = p[nt.axis] - face;
                const double dq = q[nt.axis] - face;
                // endpoints sitting on the face within round-off graze it
                const double tol =
                    1e-12 * (std::abs(p[nt.axis]) + std::abs(q[nt.axis]) + std::abs(face));
                if (std::abs(dp) <= tol || std::abs(dq) <= tol) continue;
                if (!((dp > 0.0 && dq < 0.0) || (dp < 0.0 && dq > 0.0))) continue;
                const double t = dp / (dp - dq);
                bool inside = true;
                for (int d = 0; d < 3; ++d) {
                    if (d == nt.axis) continue;
                    const double x = p[d] + t * (q[d] - p[d]);
                    inside = inside && x >= nt.lo[d] && x <= nt.hi[d];
                }
                if (inside) return true;
            }
        }
        return false;
    }

    Box<3> bounds() const {
        Box<3> bb{{1e300, 1e300, 1e300}, {-1e300, -1e300, -1e300}};
        for (const auto& nt : notches)
            for (int d = 0; d < 3; ++d) {
                double lo = d == nt.axis ? nt.plane - nt.width : nt.lo[d];
                double hi = d == nt.axis ? nt.plane + nt.width : nt.hi[d];
                bb.lo[d] = std::min(bb.lo[d], lo);
                bb.hi[d] = std::max(bb.hi[d], hi);
            }
        return bb;
    }
};

/// Breaks every bond whose segment pierces the crack geometry. Only nodes
/// within a horizon of the geometry are visited.
template <int Dim>
inline BondLedger seed_cracks(const CrackSpec<Dim>& spec, const Grid<Dim>& grid,
                              const Horizon& hz) {
    BondLedger ledger(grid.n_nodes());
    if (spec.empty()) return ledger;

    const Box<Dim> bb = spec.bounds();
    IVec<Dim> lo{}, hi{};
    for (int d = 0; d < Dim; ++d) {
        const double pad = hz.delta + grid.h;
        lo[d] = std::max(0, static_cast<int>(std::floor((bb.lo[d] - pad - grid.origin[d]) / grid.h)));
        hi[d] = std::min(grid.dims[d] - 1,
                         static_cast<int>(std::ceil((bb.hi[d] + pad - grid.origin[d]) / grid.h)));
    }

    KernelStack<Dim> proto(hz.M, grid.h);
    IVec<Dim> c{};
    auto visit = [&](auto&& self, int axis) -> void {
        if (axis == Dim) {
            const index_t p = grid.lin(c);
            const Vec<Dim> xp = grid.pos(c);
            proto.for_each_offset([&](const IVec<Dim>& off) {
                IVec<Dim> qc = c;
                for (int d = 0; d < Dim; ++d) qc[d] += off[d];
                if (!grid.in_lattice(qc)) return;
                const index_t q = grid.lin(qc);
                if (q < p) return;  // each unordered bond once
                if (spec.bond_crosses(xp, grid.pos(qc))) ledger.break_bond(p, q);
            });
            return;
        }
        for (c[axis] = lo[axis]; c[axis] <= hi[axis]; ++c[axis]) self(self, axis + 1);
    };
    visit(visit, 0);
    return ledger;
}

/// Stretch check over every intact bond (optionally restricted to a watch
/// region containing all expected cracks); bonds at or above the critical
/// stretch break irreversibly. Returns the newly broken bonds.
template <int Dim>
inline std::vector<std::pair<index_t, index_t>> update_bonds(
    const Grid<Dim>& grid, const Horizon& hz, const VecField<Dim>& u, BondLedger& ledger,
    double s0, const std::optional<Box<Dim>>& watch = std::nullopt) {
    std::vector<std::pair<index_t, index_t>> broken;
    KernelStack<Dim> proto(hz.M, grid.h);
    const index_t n = grid.n_nodes();
    for (index_t p = 0; p < n; ++p) {
        const IVec<Dim> cp = grid.coords(p);
        const Vec<Dim> xp = grid.pos(cp);
        if (watch && !watch->contains(xp)) continue;
        const Vec<Dim> up = u.at(p);
        proto.for_each_offset([&](const IVec<Dim>& off) {
            IVec<Dim> cq = cp;
            for (int d = 0; d < Dim; ++d) cq[d] += off[d];
            if (!grid.in_lattice(cq)) return;
            const index_t q = grid.lin(cq);
            if (q < p) return;
            const Vec<Dim> xq = grid.pos(cq);
            if (watch && !watch->contains(xq)) return;
            if (ledger.is_broken(p, q)) return;
            if (bond_stretch<Dim>(xp, xq, up, u.at(q)) >= s0) {
                ledger.break_bond(p, q);
                broken.emplace_back(p, q);
            }
        });
    }
    return broken;
}

/// Per-node fraction of broken bonds.
template <int Dim>
inline std::vector<double> damage_field(const Grid<Dim>& grid, const Horizon& hz,
                                        const BondLedger& ledger) {
    const index_t n = grid.n_nodes();
    std::vector<double> phi(static_cast<std::size_t>(n), 0.0);
    KernelStack<Dim> proto(hz.M, grid.h);
    for (index_t p = 0; p < n; ++p) {
        const IVec<Dim> cp = grid.coords(p);
        int total = 0;
        proto.for_each_offset([&](const IVec<Dim>& off) {
            IVec<Dim> cq = cp;
            for (int d = 0; d < Dim; ++d) cq[d] += off[d];
            if (grid.in_lattice(cq)) ++total;
        });
        if (total > 0) phi[p] = static_cast<double>(ledger.broken_count(p)) / total;
    }
    return phi;
}

}  // namespace pdfast
