#pragma once

#include <cmath>
#include <numbers>
#include <optional>

#include "pdfast/errors.hpp"

namespace pdfast {

enum class PlaneMode { Stress, Strain };

/// Micromodulus scale matching bond-based strain energy to linear elasticity.
/// 2D needs the plate thickness; bond-based theory fixes the Poisson ratio.
inline double micromodulus_alpha(double E, double delta, int dim,
                                 std::optional<double> thickness = std::nullopt) {
    const double pi = std::numbers::pi;
    if (dim == 2) {
        if (!thickness || *thickness <= 0.0)
            throw MissingThickness("2D micromodulus requires the plate thickness");
        return 9.0 * E / (pi * delta * delta * delta * (*thickness));
    }
    return 12.0 * E / (pi * delta * delta * delta * delta);
}

/// Critical bond stretch from the energy release rate.
inline double critical_stretch(double G0, double E, double delta, PlaneMode mode) {
    const double pi = std::numbers::pi;
    if (mode == PlaneMode::Stress) return std::sqrt(4.0 * pi * G0 / (9.0 * E * delta));
    return std::sqrt(5.0 * pi * G0 / (12.0 * E * delta));
}

struct Material {
    double E = 0.0;    // elastic modulus, Pa
    double nu = 0.0;   // informational: bond-based PD fixes it
    double rho = 0.0;  // density, kg/m^3
    std::optional<double> G0;           // energy release rate, J/m^2
    std::optional<double> s0_override;  // direct critical stretch
    PlaneMode mode = PlaneMode::Stress;

    bool valid() const { return E > 0.0 && rho > 0.0; }

    /// Resolved critical stretch; the override bypasses the formula.
    std::optional<double> s0(double delta) const {
        if (s0_override) return s0_override;
        if (G0) return critical_stretch(*G0, E, delta, mode);
        return std::nullopt;
    }
};

}  // namespace pdfast
