#include <catch_amalgamated.hpp>
#include <numbers>
#include <random>

#include "pdfast/kernel.hpp"
#include "support/oracles.hpp"

using namespace pdfast;

TEST_CASE("micromodulus scale") {
    CHECK(micromodulus_alpha(2e11, 0.03, 2, 0.0025) ==
          Catch::Approx(8.488263631567753e18).epsilon(1e-14));
    CHECK(micromodulus_alpha(std::numbers::pi, 1.0, 3) == Catch::Approx(12.0).epsilon(1e-14));
    CHECK(micromodulus_alpha(2e11, 0.003, 3) ==
          Catch::Approx(9.431404035075278e21).epsilon(1e-14));
    CHECK_THROWS_AS(micromodulus_alpha(2e11, 0.03, 2), MissingThickness);
}

TEST_CASE("critical stretch") {
    const double pi = std::numbers::pi;
    CHECK(critical_stretch(100.0, 2e11, 0.03, PlaneMode::Stress) ==
          Catch::Approx(0.00015254853881062816).epsilon(1e-14));
    CHECK(critical_stretch(100.0, 2e11, 0.03, PlaneMode::Strain) ==
          Catch::Approx(0.00014770448757545966).epsilon(1e-14));
    // radicand forced to one
    const double E = 3e9, delta = 0.02;
    CHECK(critical_stretch(9.0 * E * delta / (4.0 * pi), E, delta, PlaneMode::Stress) ==
          Catch::Approx(1.0).epsilon(1e-14));

    Material m{2e11, 1.0 / 3.0, 7850.0, 100.0, std::nullopt, PlaneMode::Stress};
    CHECK(*m.s0(0.03) == critical_stretch(100.0, 2e11, 0.03, PlaneMode::Stress));
    m.s0_override = 0.01;
    CHECK(*m.s0(0.03) == 0.01);  // override bypasses the formula
    Material none{2e11, 0.25, 7850.0, std::nullopt, std::nullopt, PlaneMode::Stress};
    CHECK_FALSE(none.s0(0.03).has_value());
}

namespace {

template <int Dim>
Grid<Dim> test_grid(double h) {
    Grid<Dim> g;
    g.h = h;
    for (int d = 0; d < Dim; ++d) g.dims[d] = 16;
    g.thickness = 0.0025;
    return g;
}

/// Brute-force evaluation of one stencil entry straight from the bond form.
template <int Dim>
double entry_oracle(const IVec<Dim>& off, double h, double delta, double alpha, int a, int b) {
    const long n2 = norm2<Dim>(off);
    if (n2 == 0) return 0.0;
    const double dist = h * std::sqrt(static_cast<double>(n2));
    const double lam = volume_correction(dist, delta, h);
    if (lam <= 0.0) return 0.0;
    const double vol = Dim == 2 ? h * h * 0.0025 : h * h * h;  // test grids: 2.5 mm plate
    return alpha * (off[a] * h) * (off[b] * h) / (dist * dist * dist) * lam * vol;
}

}  // namespace

TEST_CASE("kernel stencil entries and row sums") {
    auto g = test_grid<2>(0.0025);
    Horizon hz = Horizon::from_ratio(3, g.h);
    Material mat{2e11, 1.0 / 3.0, 7850.0, {}, {}, PlaneMode::Stress};
    auto K = build_kernel(g, hz, mat);
    const double alpha = micromodulus_alpha(mat.E, hz.delta, 2, g.thickness);

    SECTION("off-center entries match the bond formula") {
        K.for_each_offset([&](const IVec<2>& off) {
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    CHECK(K.at(a, b, off) ==
                          Catch::Approx(entry_oracle<2>(off, g.h, hz.delta, alpha, a, b))
                              .epsilon(1e-13).margin(1e-280));
        });
    }

    SECTION("entries beyond the band are zero") {
        CHECK(K.at(0, 0, {hz.M, hz.M}) == 0.0);       // corner outside the disk
        CHECK(K.at(0, 0, {hz.M, 1}) == 0.0);          // just outside the disk
        CHECK(K.at(0, 1, {1, 0}) == 0.0);             // axis bond has no shear coupling
        CHECK(K.at(0, 0, {hz.M, 0}) != 0.0);          // on the rim, lambda = 1/2
    }

    SECTION("center equals the negative sum of off-center entries") {
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                double sum = 0.0;
                int nonzero = 0;
                K.for_each_offset([&](const IVec<2>& off) {
                    sum += K.at(a, b, off);
                    nonzero += K.at(a, b, off) != 0.0;
                });
                CHECK(K.center(a, b) == -sum);
                if (a == 0 && b == 0) CHECK(nonzero == 22);  // M=3 disk, axis entries excluded by the x^2 numerator
            }
    }

    SECTION("diagonal-component entries are nonnegative off center") {
        K.for_each_offset([&](const IVec<2>& off) {
            CHECK(K.at(0, 0, off) >= 0.0);
            CHECK(K.at(1, 1, off) >= 0.0);
        });
    }

    SECTION("parity under offset negation") {
        K.for_each_offset([&](const IVec<2>& off) {
            IVec<2> neg{-off[0], -off[1]};
            CHECK(K.at(0, 0, off) == K.at(0, 0, neg));
            CHECK(K.at(0, 1, off) == K.at(0, 1, neg));
            CHECK(K.at(1, 1, off) == K.at(1, 1, neg));
        });
    }

    SECTION("translation invariance: origin shift changes nothing") {
        Grid<2> shifted = g;
        shifted.origin = {1.75, -0.5};
        auto K2 = build_kernel(shifted, hz, mat);
        K.for_each_offset([&](const IVec<2>& off) {
            CHECK(K.at(0, 0, off) == K2.at(0, 0, off));
            CHECK(K.at(0, 1, off) == K2.at(0, 1, off));
        });
        CHECK(K.center(1, 1) == K2.center(1, 1));
    }
}

TEST_CASE("3D kernel stencil") {
    auto g = test_grid<3>(0.001);
    Horizon hz = Horizon::from_ratio(3, g.h);
    Material mat{2e11, 0.25, 7850.0, {}, {}, PlaneMode::Stress};
    auto K = build_kernel(g, hz, mat);
    const double alpha = micromodulus_alpha(mat.E, hz.delta, 3);

    SECTION("all six component stencils match the bond formula") {
        K.for_each_offset([&](const IVec<3>& off) {
            for (int a = 0; a < 3; ++a)
                for (int b = a; b < 3; ++b)
                    CHECK(K.at(a, b, off) ==
                          Catch::Approx(entry_oracle<3>(off, g.h, hz.delta, alpha, a, b))
                              .epsilon(1e-13).margin(1e-280));
        });
    }

    SECTION("component symmetry and zero row sums") {
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                double sum = 0.0;
                K.for_each_offset([&](const IVec<3>& off) {
                    CHECK(K.at(a, b, off) == K.at(b, a, off));
                    sum += K.at(a, b, off);
                });
                CHECK(K.center(a, b) == -sum);
            }
    }
}
