#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "pdfast/geometry.hpp"

namespace pdfast {

/// Vector field over the lattice: one contiguous array per component.
template <int Dim>
struct VecField {
    std::array<std::vector<double>, Dim> c{};

    VecField() = default;
    explicit VecField(index_t n) { resize(n); }

    void resize(index_t n) {
        for (auto& v : c) v.assign(static_cast<std::size_t>(n), 0.0);
    }

    index_t size() const { return static_cast<index_t>(c[0].size()); }

    void fill(double value) {
        for (auto& v : c) std::fill(v.begin(), v.end(), value);
    }

    Vec<Dim> at(index_t p) const {
        Vec<Dim> r{};
        for (int d = 0; d < Dim; ++d) r[d] = c[d][p];
        return r;
    }

    void set(index_t p, const Vec<Dim>& v) {
        for (int d = 0; d < Dim; ++d) c[d][p] = v[d];
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : c)
            for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }
};

template <int Dim>
inline double max_abs_diff(const VecField<Dim>& a, const VecField<Dim>& b) {
    double m = 0.0;
    for (int d = 0; d < Dim; ++d)
        for (std::size_t i = 0; i < a.c[d].size(); ++i)
            m = std::max(m, std::abs(a.c[d][i] - b.c[d][i]));
    return m;
}

}  // namespace pdfast
