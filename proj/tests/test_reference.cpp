#include <catch_amalgamated.hpp>
#include <random>

#include "pdfast/reference.hpp"
#include "support/oracles.hpp"

using namespace pdfast;

namespace {

// power-of-two spacing keeps position arithmetic exact for the naive oracle
Grid<2> small_grid(IVec<2> dims, double h = 0.125) {
    Grid<2> g;
    g.h = h;
    g.dims = dims;
    g.thickness = 0.0025;
    return g;
}

const Material kSteel{2e11, 1.0 / 3.0, 7850.0, {}, {}, PlaneMode::Stress};

}  // namespace

TEST_CASE("neighbor table counts") {
    Grid<2> g = small_grid({10, 10});

    SECTION("M = 1: axis partners only, diagonals fall outside the disk") {
        Horizon hz = Horizon::from_ratio(1, g.h);
        auto table = build_neighbor_table(g, hz);
        CHECK(table.count(g.lin({5, 5})) == 4);
        CHECK(table.count(g.lin({0, 0})) == 2);
    }

    SECTION("interior count matches the admissible stencil size") {
        for (int M : {1, 2, 3}) {
            Horizon hz = Horizon::from_ratio(M, g.h);
            auto table = build_neighbor_table(g, hz);
            KernelStack<2> proto(M, g.h);
            int admissible = 0;
            proto.for_each_offset([&](const IVec<2>&) { ++admissible; });
            CHECK(table.count(g.lin({4, 4})) == admissible);
            for (index_t p = 0; p < g.n_nodes(); ++p) CHECK(table.count(p) <= admissible);
        }
    }

    SECTION("symmetry: q lists p iff p lists q") {
        Horizon hz = Horizon::from_ratio(3, g.h);
        auto table = build_neighbor_table(g, hz);
        for (index_t p = 0; p < g.n_nodes(); ++p)
            for (auto* nb = table.begin(p); nb != table.end(p); ++nb) {
                bool found = false;
                for (auto* back = table.begin(nb->q); back != table.end(nb->q); ++back)
                    found = found || back->q == p;
                CHECK(found);
            }
    }

    SECTION("entries carry positive weights within the horizon") {
        Horizon hz = Horizon::from_ratio(2, g.h);
        auto table = build_neighbor_table(g, hz);
        for (index_t p = 0; p < g.n_nodes(); ++p)
            for (auto* nb = table.begin(p); nb != table.end(p); ++nb) {
                CHECK(nb->lambda > 0.0);
                CHECK(nb->dist <= hz.delta);
                CHECK(nb->q != p);
            }
    }
}

TEST_CASE("meshfree force baseline") {
    Grid<2> g = small_grid({8, 8});
    Horizon hz = Horizon::from_ratio(2, g.h);
    auto table = build_neighbor_table(g, hz);

    SECTION("zero displacement, zero force") {
        VecField<2> u(g.n_nodes()), f(g.n_nodes());
        dense_force(f, u, g, hz, kSteel, table, BondLedger(g.n_nodes()));
        CHECK(f.max_abs() == 0.0);
    }

    SECTION("rigid translation, zero force everywhere") {
        VecField<2> u(g.n_nodes()), f(g.n_nodes());
        u.fill(1e-3);
        dense_force(f, u, g, hz, kSteel, table, BondLedger(g.n_nodes()));
        auto K = build_kernel(g, hz, kSteel);
        double row_scale = 0.0;
        K.for_each_offset([&](const IVec<2>& off) { row_scale += std::abs(K.at(0, 0, off)); });
        CHECK(f.max_abs() <= 1e-12 * row_scale * 1e-3);
    }

    SECTION("matches the naive position-based double loop") {
        std::mt19937 rng(42);
        for (unsigned seed = 0; seed < 3; ++seed) {
            auto u = oracle::random_field<2>(g.n_nodes(), rng, 1e-3);
            auto ledger = oracle::random_ledger<2>(g, 2, 10, rng);
            VecField<2> f(g.n_nodes());
            dense_force(f, u, g, hz, kSteel, table, ledger);
            auto ref = oracle::naive_force<2>(g, hz, kSteel, ledger, u);
            CHECK(max_abs_diff<2>(f, ref) <= 1e-12 * ref.max_abs());
        }
    }

    SECTION("bond-force antisymmetry sums to zero on crack-free interiors") {
        std::mt19937 rng(43);
        auto u = oracle::random_field<2>(g.n_nodes(), rng, 1e-3);
        VecField<2> f(g.n_nodes());
        dense_force(f, u, g, hz, kSteel, table, BondLedger(g.n_nodes()));
        for (int a = 0; a < 2; ++a) {
            double total = 0.0, scale = 0.0;
            for (index_t p = 0; p < g.n_nodes(); ++p) {
                total += f.c[a][p];
                scale = std::max(scale, std::abs(f.c[a][p]));
            }
            CHECK(std::abs(total) <= 1e-10 * scale * static_cast<double>(g.n_nodes()));
        }
    }
}

TEST_CASE("3D meshfree force vs naive double loop") {
    Grid<3> g;
    g.h = 0.25;
    g.dims = {5, 4, 4};
    Horizon hz = Horizon::from_ratio(2, g.h);
    Material mat{2e11, 0.25, 7850.0, {}, {}, PlaneMode::Stress};
    auto table = build_neighbor_table(g, hz);
    std::mt19937 rng(44);
    auto u = oracle::random_field<3>(g.n_nodes(), rng, 1e-3);
    auto ledger = oracle::random_ledger<3>(g, 2, 8, rng);
    VecField<3> f(g.n_nodes());
    dense_force(f, u, g, hz, mat, table, ledger);
    auto ref = oracle::naive_force<3>(g, hz, mat, ledger, u);
    CHECK(max_abs_diff<3>(f, ref) <= 1e-12 * ref.max_abs());
}
