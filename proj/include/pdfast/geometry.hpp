#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace pdfast {

template <int Dim>
using Vec = std::array<double, Dim>;

template <int Dim>
using IVec = std::array<int, Dim>;

using index_t = std::int64_t;

template <int Dim>
inline double dot(const Vec<Dim>& a, const Vec<Dim>& b) {
    double s = 0.0;
    for (int d = 0; d < Dim; ++d) s += a[d] * b[d];
    return s;
}

template <int Dim>
inline double norm(const Vec<Dim>& a) {
    return std::sqrt(dot<Dim>(a, a));
}

template <int Dim>
inline Vec<Dim> sub(const Vec<Dim>& a, const Vec<Dim>& b) {
    Vec<Dim> r{};
    for (int d = 0; d < Dim; ++d) r[d] = a[d] - b[d];
    return r;
}

template <int Dim>
inline Vec<Dim> add(const Vec<Dim>& a, const Vec<Dim>& b) {
    Vec<Dim> r{};
    for (int d = 0; d < Dim; ++d) r[d] = a[d] + b[d];
    return r;
}

/// Squared integer length of a lattice offset.
template <int Dim>
inline long norm2(const IVec<Dim>& d) {
    long s = 0;
    for (int k = 0; k < Dim; ++k) s += static_cast<long>(d[k]) * d[k];
    return s;
}

/// Closed axis-aligned box. Nodes sit at half-integer lattice positions,
/// so boxes whose faces lie on cell boundaries never contain a node face-on.
template <int Dim>
struct Box {
    Vec<Dim> lo{};
    Vec<Dim> hi{};

    bool contains(const Vec<Dim>& p) const {
        for (int d = 0; d < Dim; ++d)
            if (p[d] < lo[d] || p[d] > hi[d]) return false;
        return true;
    }
};

}  // namespace pdfast
