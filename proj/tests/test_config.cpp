#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "gldens/config.hpp"
#include "gldens/io.hpp"
#include "gldens/minimize.hpp"

using namespace gldens;

TEST_CASE("minimal config parses with defaults filled") {
    ParseResult res = parse_config("energy.n = 2\nenergy.p = 1.4\nenergy.m = 3\nenergy.lambda = 1\n");
    REQUIRE(res.ok());
    CHECK(res.config->p == 1.4);
    CHECK(res.config->seed == 42);
    CHECK(res.config->spacing == 0.25);
    CHECK(res.config->energy_seed == 42); // inherits the global seed
}

TEST_CASE("admissibility violation is rejected with the inequality named") {
    ParseResult res = parse_config("energy.p = 1.9\nenergy.n = 3\n");
    REQUIRE_FALSE(res.ok());
    bool found = false;
    for (const auto& e : res.errors)
        if (e.key == "energy.p" && e.message.find("p < n/(n-1)") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("duplicate keys are rejected with both line numbers") {
    ParseResult res = parse_config("energy.p = 1.3\n# comment\nenergy.p = 1.2\n");
    REQUIRE_FALSE(res.ok());
    REQUIRE(res.errors.size() >= 1);
    CHECK(res.errors[0].key == "energy.p");
    CHECK(res.errors[0].line == 3);
    CHECK(res.errors[0].message.find("line 1") != std::string::npos);
}

TEST_CASE("unknown keys are rejected") {
    ParseResult res = parse_config("energy.q = 1.3\n");
    REQUIRE_FALSE(res.ok());
    CHECK(res.errors[0].key == "energy.q");
    CHECK(res.errors[0].message == "unknown key");
}

TEST_CASE("malformed lines and values carry line numbers") {
    ParseResult res = parse_config("just some text\nenergy.p = fast\n");
    REQUIRE_FALSE(res.ok());
    CHECK(res.errors[0].line == 1);
    CHECK(res.errors[1].line == 2);
    CHECK(res.errors[1].key == "energy.p");
}

TEST_CASE("serialize/parse round trip is exact") {
    ExperimentConfig c;
    c.seed = 1234567;
    c.p = 1.3721;
    c.m = 2.9;
    c.lambda = 1.75;
    c.spacing = 0.0625;
    c.radii = {4.0, 8.0, 16.0, 64.0};
    c.t_infty = -0.637;
    c.a_mode = CoeffMode::Random;
    c.energy_seed = 99;

    SUBCASE("without a pin") {
        ParseResult res = parse_config(serialize_config(c));
        REQUIRE(res.ok());
        CHECK(*res.config == c);
    }
    SUBCASE("with a pin") {
        c.pin_value = 0.12345678901234567;
        ParseResult res = parse_config(serialize_config(c));
        REQUIRE(res.ok());
        CHECK(*res.config == c);
    }
}

TEST_CASE("field dump round trip is bit exact") {
    Grid g = Grid::cube(2, 3.0, 0.33);
    ScalarField u = ScalarField::from_function(g, [](const Point& x) {
        return std::clamp(std::sin(12345.678 * (x[0] + 2.0) * (x[1] + 3.0)), -1.0, 1.0);
    });
    auto path = std::filesystem::temp_directory_path() / "gldens_test_field.dat";
    write_field(u, path);
    ScalarField v = read_field(path);
    REQUIRE(v.grid == u.grid);
    for (std::size_t c = 0; c < u.values.size(); ++c) CHECK(v.values[c] == u.values[c]);
    std::filesystem::remove(path);
}

TEST_CASE("mask CSV lists every cell center with its bit") {
    Grid g = Grid::cube(2, 1.0, 0.5);
    RegionMask m = ball_mask(g, {0.0, 0.0, 0.0}, 0.6);
    auto path = std::filesystem::temp_directory_path() / "gldens_test_mask.csv";
    write_mask_csv(m, path);
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "# x1,x2,member");
    std::size_t rows = 0, members = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK((line.back() == '0' || line.back() == '1'));
        if (line.back() == '1') ++members;
    }
    CHECK(rows == g.cell_count());
    CHECK(members == m.count());
    std::filesystem::remove(path);
}

TEST_CASE("config helpers build consistent objects") {
    ExperimentConfig c;
    c.pin_value = 0.0;
    EnergySpec spec = spec_from_config(c);
    CHECK(spec.params.p == c.p);
    Grid g = grid_from_config(c);
    CHECK(g.dim == c.n);
    SolveOptions opts = solve_options_from_config(c);
    REQUIRE(opts.pin.has_value());
    CHECK(opts.pin->value == 0.0);
}
