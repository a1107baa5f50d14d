#include <catch_amalgamated.hpp>
#include <random>

#include "pdfast/convolution.hpp"
#include "support/oracles.hpp"

using namespace pdfast;

namespace {

template <int Dim>
Grid<Dim> lattice(IVec<Dim> dims, double h = 0.5) {
    Grid<Dim> g;
    g.h = h;
    g.dims = dims;
    g.thickness = 1.0;
    return g;
}

}  // namespace

TEST_CASE("kernel embedding layout") {
    std::mt19937 rng(11);
    const int M = 1;
    Grid<2> g = lattice<2>({4, 4});
    auto K = oracle::random_kernel<2>(M, g.h, rng);
    PadTransform<2> tr(g.dims, M);
    auto G = tr.embed_real(K, 0, 0);
    const int Px = 2 * g.dims[0], Py = 2 * g.dims[1];

    SECTION("matches the 1-based wrap map") {
        // m = i + M for i in [1, M+1]; m = i - 2Nx + M for i in [2Nx-M+1, 2Nx]
        auto stencil_1b = [&](int m, int n) {  // 1-based stencil indices
            IVec<2> off{m - (M + 1), n - (M + 1)};
            if (norm2<2>(off) > static_cast<long>(M) * M)
                return off[0] == 0 && off[1] == 0 ? K.center(0, 0) : 0.0;
            return off[0] == 0 && off[1] == 0 ? K.center(0, 0) : K.at(0, 0, off);
        };
        for (int i = 1; i <= Px; ++i) {
            for (int j = 1; j <= Py; ++j) {
                double expect = 0.0;
                const bool i_live = i <= M + 1 || i >= Px - M + 1;
                const bool j_live = j <= M + 1 || j >= Py - M + 1;
                if (i_live && j_live) {
                    const int m = i <= M + 1 ? i + M : i - Px + M;
                    const int n = j <= M + 1 ? j + M : j - Py + M;
                    expect = stencil_1b(m, n);
                }
                IVec<2> c{i - 1, j - 1};
                CHECK(G[tr.padded_lin(c)] == expect);
            }
        }
        // the quoted wrapped corner: G_{1,8} holds K_{2,1}
        CHECK(G[tr.padded_lin({0, 7})] == stencil_1b(2, 1));
    }

    SECTION("nonzero count is at most the stencil size") {
        int nz = 0;
        for (double v : G) nz += v != 0.0;
        CHECK(nz <= (2 * M + 1) * (2 * M + 1));
    }

    SECTION("identity stencil embeds at the origin only") {
        KernelStack<2> I(M, g.h);
        IVec<2> zero{};
        I.at(0, 0, zero) = 1.0;
        auto GI = tr.embed_real(I, 0, 0);
        CHECK(GI[0] == 1.0);
        CHECK(std::count(GI.begin(), GI.end(), 0.0) == static_cast<long>(GI.size()) - 1);
    }

    SECTION("horizon too large for the lattice is rejected") {
        CHECK_THROWS_AS(PadTransform<2>({4, 4}, 4), HorizonTooLargeForGrid);
        CHECK_NOTHROW(PadTransform<2>({5, 5}, 4));
    }
}

TEST_CASE("single-stencil spectral product") {
    std::mt19937 rng(23);

    SECTION("identity stencil acts as a scalar") {
        Grid<2> g = lattice<2>({6, 5});
        KernelStack<2> I(2, g.h);
        IVec<2> zero{};
        I.at(0, 0, zero) = 3.25;
        Convolver<2> conv(g.dims, I);
        std::vector<double> u(g.n_nodes());
        for (auto& x : u) x = std::uniform_real_distribution<double>(-1, 1)(rng);
        std::vector<double> f;
        conv.apply(u, f);
        for (index_t p = 0; p < g.n_nodes(); ++p)
            CHECK(f[p] == Catch::Approx(3.25 * u[p]).epsilon(1e-12));
    }

    SECTION("zero field maps to zero") {
        Grid<2> g = lattice<2>({8, 6});
        auto K = oracle::random_kernel<2>(2, g.h, rng);
        Convolver<2> conv(g.dims, K);
        std::vector<double> u(g.n_nodes(), 0.0), f;
        conv.apply(u, f);
        for (double v : f) CHECK(v == 0.0);
    }

    SECTION("random stencil matches the direct operator, 8x6, M=2") {
        Grid<2> g = lattice<2>({8, 6});
        auto K = oracle::random_kernel<2>(2, g.h, rng);
        Convolver<2> conv(g.dims, K);
        std::vector<double> u(g.n_nodes()), f;
        for (auto& x : u) x = std::uniform_real_distribution<double>(-1, 1)(rng);
        conv.apply(u, f);
        auto ref = oracle::tbt_apply<2>(g, K, 0, 0, u);
        double scale = 0.0, diff = 0.0;
        for (index_t p = 0; p < g.n_nodes(); ++p) {
            scale = std::max(scale, std::abs(ref[p]));
            diff = std::max(diff, std::abs(f[p] - ref[p]));
        }
        CHECK(diff <= 1e-12 * scale);
    }

    SECTION("shape mismatch is rejected") {
        Grid<2> g = lattice<2>({8, 6});
        auto K = oracle::random_kernel<2>(2, g.h, rng);
        Convolver<2> conv(g.dims, K);
        std::vector<double> u(g.n_nodes() + 1), f;
        CHECK_THROWS_AS(conv.apply(u, f), ShapeMismatch);
    }
}

TEMPLATE_TEST_CASE_SIG("full-stack spectral force matches the direct operator", "",
                       ((int Dim), Dim), 2, 3) {
    std::mt19937 rng(37 + Dim);
    std::vector<IVec<Dim>> shapes;
    std::vector<int> bands;
    if constexpr (Dim == 2) {
        shapes = {{16, 12}, {32, 32}, {40, 20}, {9, 7}};
        bands = {2, 3, 4, 2};
    } else {
        shapes = {{8, 8, 8}, {12, 10, 8}, {16, 16, 16}};
        bands = {2, 3, 4};
    }
    for (std::size_t k = 0; k < shapes.size(); ++k) {
        Grid<Dim> g = lattice<Dim>(shapes[k]);
        auto K = oracle::random_kernel<Dim>(bands[k], g.h, rng);
        Horizon hz{bands[k] * g.h, bands[k]};
        FastForce<Dim> engine(g, hz, K);
        auto u = oracle::random_field<Dim>(g.n_nodes(), rng);
        VecField<Dim> f(g.n_nodes());
        engine.apply(u, f);
        auto ref = oracle::tbt_apply_all<Dim>(g, K, u);
        const double err = max_abs_diff<Dim>(f, ref) / ref.max_abs();
        INFO("shape " << shapes[k][0] << "x" << shapes[k][1] << " M=" << bands[k]);
        CHECK(err <= 1e-10);
        CHECK(engine.last_imag_residue() <= 1e-10);
    }
}

TEST_CASE("spectral force on the physical kernel") {
    Grid<2> g = lattice<2>({20, 14}, 0.0025);
    g.thickness = 0.0025;
    Horizon hz = Horizon::from_ratio(3, g.h);
    Material mat{2e11, 1.0 / 3.0, 7850.0, {}, {}, PlaneMode::Stress};
    auto K = build_kernel(g, hz, mat);
    FastForce<2> engine(g, hz, K);

    SECTION("constant x-displacement: zero at full-band rows, boundary defect elsewhere") {
        VecField<2> u(g.n_nodes()), f(g.n_nodes());
        const double c = 1e-3;
        std::fill(u.c[0].begin(), u.c[0].end(), c);
        engine.apply(u, f);
        auto regions = classify_regions<2>(g, hz, {});
        auto ref = oracle::tbt_apply_all<2>(g, K, u);
        const double scale = ref.max_abs();
        for (index_t p = 0; p < g.n_nodes(); ++p) {
            if (regions.interior(p)) {
                // full rows sum to zero in every component pair
                CHECK(std::abs(f.c[0][p]) <= 1e-12 * scale);
                CHECK(std::abs(f.c[1][p]) <= 1e-12 * scale);
            } else {
                // the boundary defect the diagonal correction later repairs
                const IVec<2> cp = g.coords(p);
                for (int a = 0; a < 2; ++a) {
                    double missing = 0.0;
                    K.for_each_offset([&](const IVec<2>& off) {
                        IVec<2> q{cp[0] + off[0], cp[1] + off[1]};
                        if (!g.in_lattice(q)) missing += K.at(a, 0, off);
                    });
                    CHECK(f.c[a][p] ==
                          Catch::Approx(-missing * c).epsilon(1e-9).margin(1e-11 * scale));
                }
            }
        }
    }

    SECTION("linearity to round-off") {
        std::mt19937 rng(91);
        auto u = oracle::random_field<2>(g.n_nodes(), rng);
        auto v = oracle::random_field<2>(g.n_nodes(), rng);
        const double a = 1.7, b = -0.35;
        VecField<2> fu(g.n_nodes()), fv(g.n_nodes()), fc(g.n_nodes()), combo(g.n_nodes());
        engine.apply(u, fu);
        engine.apply(v, fv);
        for (int d = 0; d < 2; ++d)
            for (index_t p = 0; p < g.n_nodes(); ++p)
                combo.c[d][p] = a * u.c[d][p] + b * v.c[d][p];
        engine.apply(combo, fc);
        double scale = fc.max_abs(), diff = 0.0;
        for (int d = 0; d < 2; ++d)
            for (index_t p = 0; p < g.n_nodes(); ++p)
                diff = std::max(diff,
                                std::abs(fc.c[d][p] - (a * fu.c[d][p] + b * fv.c[d][p])));
        CHECK(diff <= 1e-12 * scale);
    }
}
