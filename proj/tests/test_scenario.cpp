#include <catch_amalgamated.hpp>

#include "pdfast/scenario.hpp"

using namespace pdfast;

TEST_CASE("config grammar") {
    SECTION("round trip through dump and parse") {
        for (const auto& name : preset_names()) {
            auto cfg = preset(name);
            auto back = parse_config_string(dump_config(cfg));
            CHECK(back == cfg);
        }
    }

    SECTION("comments, blank lines and spacing are tolerated") {
        auto cfg = parse_config_string(
            "# a comment\n"
            "[geometry]\n"
            "  dim = 2   # trailing comment\n"
            "\n"
            "extent =  1.0\t0.5\n"
            "h=0.0025\n"
            "thickness = 0.0025\n");
        CHECK(cfg.dim == 2);
        CHECK(cfg.extent[0] == 1.0);
        CHECK(cfg.extent[1] == 0.5);
        CHECK(cfg.h == 0.0025);
    }

    SECTION("parse errors carry line and column") {
        try {
            parse_config_string("[geometry]\ndim = 2\nbogus_key = 1\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == 3);
            CHECK(e.column == 1);
        }
        try {
            parse_config_string("[geometry]\n   extent = 1.0 oops\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == 2);
            CHECK(e.column == 4);
        }
        CHECK_THROWS_AS(parse_config_string("[nonsense]\n"), ParseError);
        CHECK_THROWS_AS(parse_config_string("key_without_section = 1\n"), ParseError);
        CHECK_THROWS_AS(parse_config_string("[geometry\n"), ParseError);
    }

    SECTION("validation collects every violation") {
        ScenarioConfig cfg;  // deliberately unusable
        cfg.dim = 2;
        cfg.h = 0.0;
        cfg.E = -1.0;
        auto bad = validate_config(cfg);
        CHECK(bad.size() >= 3);  // h, extent, E, rho, horizon at least
        CHECK_THROWS_AS(make_problem<2>(cfg), ValidationError);
    }

    SECTION("boxes outside the domain are rejected") {
        auto cfg = preset("precracked_plate", 0.05 / 50.0);
        cfg.constraints[0].box[4] = 0.06;  // hi.y beyond the plate
        auto bad = validate_config(cfg);
        REQUIRE(bad.size() == 1);
        CHECK(bad[0].find("constraint") != std::string::npos);
    }
}

TEST_CASE("presets pin the scenario parameters") {
    SECTION("plate_tension") {
        auto cfg = preset("plate_tension");
        CHECK(cfg.dim == 2);
        CHECK(cfg.extent[0] == 1.0);
        CHECK(cfg.extent[1] == 0.5);
        CHECK(cfg.h == 0.0025);
        CHECK(cfg.thickness == 0.0025);
        CHECK(cfg.E == 2e11);
        CHECK(cfg.nu == Catch::Approx(1.0 / 3.0));
        CHECK(cfg.rho == 7850.0);
        CHECK(*cfg.delta == 0.03);
        CHECK(cfg.integrator == Integrator::Adr);
        CHECK(cfg.steps == 3000);
        REQUIRE(cfg.loads.size() == 2);
        // traction 200 MPa spread over one boundary layer
        CHECK(cfg.loads[0].value[0] == Catch::Approx(-2e8 / 0.0025));
        CHECK(cfg.loads[1].value[0] == Catch::Approx(2e8 / 0.0025));
        auto prob = make_problem<2>(cfg);
        CHECK(prob.grid.dims[0] == 400);
        CHECK(prob.grid.dims[1] == 200);
        CHECK(prob.horizon.M == 12);
        CHECK_FALSE(prob.s0.has_value());
    }

    SECTION("precracked_plate") {
        auto cfg = preset("precracked_plate");
        CHECK(cfg.extent[0] == 0.05);
        CHECK(cfg.extent[1] == 0.05);
        CHECK(*cfg.ratio == 3);
        CHECK(*cfg.s0 == 0.01);
        CHECK(cfg.dt == 1.3367e-8);
        REQUIRE(cfg.cracks.size() == 1);
        CHECK(cfg.cracks[0].segment[2] - cfg.cracks[0].segment[0] == Catch::Approx(0.01));
        CHECK(cfg.cracks[0].segment[1] == 0.025);
        REQUIRE(cfg.constraints.size() == 2);
        CHECK(cfg.constraints[0].kind == ConstraintKind::Velocity);
        CHECK(cfg.constraints[0].value == 20.0);
        CHECK(cfg.constraints[1].value == -20.0);
        auto prob = make_problem<2>(preset("precracked_plate", 0.05 / 100.0));
        CHECK(prob.grid.dims[0] == 100);
        CHECK(prob.horizon.M == 3);
        CHECK(*prob.s0 == 0.01);
    }

    SECTION("block_tension_3d") {
        auto cfg = preset("block_tension_3d");
        CHECK(cfg.dim == 3);
        CHECK(cfg.extent == std::array<double, 3>{1.0, 0.3, 0.3});
        CHECK(cfg.nu == 0.25);
        REQUIRE(cfg.constraints.size() == 1);
        CHECK(cfg.constraints[0].directions == "xyz");
        CHECK(cfg.constraints[0].kind == ConstraintKind::Displacement);
        auto prob = make_problem<3>(cfg);
        CHECK(prob.grid.dims == IVec<3>{100, 30, 30});
    }

    SECTION("kalthoff_winkler") {
        auto cfg = preset("kalthoff_winkler");
        CHECK(cfg.extent == std::array<double, 3>{0.2, 0.1, 0.009});
        CHECK(*cfg.s0 == 0.01);
        CHECK(cfg.dt == 1.3367e-8);
        CHECK(cfg.steps == 1350);
        REQUIRE(cfg.notches.size() == 2);
        CHECK(cfg.notches[0].width == 0.0015);
        CHECK(cfg.notches[0].hi[0] == 0.05);                      // notch length
        CHECK(cfg.notches[1].plane - cfg.notches[0].plane == Catch::Approx(0.05));
        REQUIRE(cfg.initial_velocities.size() == 1);
        CHECK(cfg.initial_velocities[0].value[0] == 32.0);
        auto prob = make_problem<3>(cfg);
        CHECK(prob.grid.dims == IVec<3>{200, 100, 9});
    }

    SECTION("unknown preset") {
        CHECK_THROWS_AS(preset("no_such_scenario"), ValidationError);
    }
}

TEST_CASE("preset dumps match their golden files") {
    // regenerate with: pdfast dump --preset <name>
    for (const auto& name : preset_names()) {
        std::ifstream in(std::string(TEST_DATA_DIR) + "/" + name + ".cfg");
        REQUIRE(in.good());
        std::stringstream buf;
        buf << in.rdbuf();
        INFO("preset " << name);
        CHECK(dump_config(preset(name)) == buf.str());
    }
}
