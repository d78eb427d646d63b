// test_cli.cpp - config validation, output formats, and the installed binary
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "pathsum/config.hpp"
#include "pathsum/expm.hpp"
#include "pathsum/errors.hpp"
#include "pathsum/output.hpp"
#include "pathsum/runner.hpp"

using namespace pathsum;

namespace {

const char* kMinimalTwoLevel = R"({
  "order": 4,
  "time": {"start": 0.0, "end": 1.0, "steps": 3},
  "system": {
    "eigenvalues": [0.0, 1.0],
    "h1": [[[0.0, 0.0], [0.1, 0.0]], [[0.1, 0.0], [0.0, 0.0]]]
  }
})";

std::string slurp(const std::string& path) {
    std::ifstream is(path);
    std::ostringstream buf;
    buf << is.rdbuf();
    return buf.str();
}

std::string temp_path(const std::string& name) {
    return std::string("cli_test_") + name;
}

}  // namespace

TEST_CASE("minimal two-level config parses") {
    const RunConfig cfg = parse_config(kMinimalTwoLevel, "propagate");
    CHECK(cfg.order == 4);
    CHECK(cfg.time.steps == 3);
    REQUIRE(cfg.system.has_value());
    CHECK(cfg.system->dim() == 2);
    CHECK(cfg.tolerances.degeneracy == kDefaultDegeneracyTol);
}

TEST_CASE("validation errors name the offending field") {
    // non-square h1
    const char* nonsquare = R"({
      "order": 1, "time": {"start": 0, "end": 1, "steps": 1},
      "system": {"eigenvalues": [0.0, 1.0],
                 "h1": [[[0,0],[0,0]],[[0,0],[0,0]],[[0,0],[0,0]]]}
    })";
    CHECK_THROWS_WITH_AS(parse_config(nonsquare, "propagate"),
                         doctest::Contains("system.h1"), validation_error);

    // ragged row
    const char* ragged = R"({
      "order": 1, "time": {"start": 0, "end": 1, "steps": 1},
      "system": {"eigenvalues": [0.0, 1.0],
                 "h1": [[[0,0],[0,0]],[[0,0]]]}
    })";
    CHECK_THROWS_WITH_AS(parse_config(ragged, "propagate"), doctest::Contains("system.h1[1]"),
                         validation_error);

    // negative degeneracy tolerance
    const char* badtol = R"({
      "order": 1, "time": {"start": 0, "end": 1, "steps": 1},
      "tolerances": {"degeneracy": -1e-9},
      "system": {"eigenvalues": [0.0, 1.0],
                 "h1": [[[0,0],[0.1,0]],[[0.1,0],[0,0]]]}
    })";
    CHECK_THROWS_WITH_AS(parse_config(badtol, "propagate"),
                         doctest::Contains("tolerances.degeneracy"), validation_error);

    // non-Hermitian without the override
    const char* nonherm = R"({
      "order": 1, "time": {"start": 0, "end": 1, "steps": 1},
      "system": {"eigenvalues": [0.0, 1.0],
                 "h1": [[[0,0],[0.3,0]],[[0.1,0],[0,0]]]}
    })";
    CHECK_THROWS_WITH_AS(parse_config(nonherm, "propagate"), doctest::Contains("Hermitian"),
                         validation_error);
    // ... and passes with it
    const char* overridden = R"({
      "order": 1, "time": {"start": 0, "end": 1, "steps": 1},
      "system": {"eigenvalues": [0.0, 1.0], "allow_non_hermitian": true,
                 "h1": [[[0,0],[0.3,0]],[[0.1,0],[0,0]]]}
    })";
    CHECK_NOTHROW(parse_config(overridden, "propagate"));

    // steps below one
    const char* badsteps = R"({
      "order": 1, "time": {"start": 0, "end": 1, "steps": 0},
      "system": {"eigenvalues": [0.0, 1.0],
                 "h1": [[[0,0],[0.1,0]],[[0.1,0],[0,0]]]}
    })";
    CHECK_THROWS_WITH_AS(parse_config(badsteps, "propagate"), doctest::Contains("time.steps"),
                         validation_error);

    CHECK_THROWS_AS(parse_config("{not json", "propagate"), validation_error);
    CHECK_THROWS_AS(parse_config("{}", "nonsense"), validation_error);

    // unnormalized state needs the explicit flag
    const char* offnorm = R"({
      "order": 1, "time": {"start": 0, "end": 1, "steps": 1},
      "system": {"eigenvalues": [0.0, 1.0],
                 "h1": [[[0,0],[0.1,0]],[[0.1,0],[0,0]]]},
      "state": {"amplitudes": [[2.0, 0.0], [0.0, 0.0]]}
    })";
    CHECK_THROWS_WITH_AS(parse_config(offnorm, "evolve"),
                         doctest::Contains("state.amplitudes"), validation_error);
    const char* offnorm_ok = R"({
      "order": 1, "time": {"start": 0, "end": 1, "steps": 1},
      "system": {"eigenvalues": [0.0, 1.0],
                 "h1": [[[0,0],[0.1,0]],[[0.1,0],[0,0]]]},
      "state": {"amplitudes": [[2.0, 0.0], [0.0, 0.0]], "allow_unnormalized": true}
    })";
    CHECK_NOTHROW(parse_config(offnorm_ok, "evolve"));
}

TEST_CASE("rows format") {
    ResultSet empty;
    empty.command = "evolve";
    std::ostringstream eo;
    write_rows(empty, eo);
    CHECK(eo.str() == "t index re im abs2\n");

    ResultSet one;
    one.command = "evolve";
    one.records.push_back({0.0, 0, 1.0, 0.0});
    std::ostringstream oo;
    write_rows(one, oo);
    CHECK(oo.str() == "t index re im abs2\n0 0 1 0 1\n");
}

TEST_CASE("structured round trip") {
    const RunConfig cfg = parse_config(kMinimalTwoLevel, "propagate");
    const ResultSet results = run(cfg);
    CHECK(results.records.size() == 3u * 4u);

    std::ostringstream os;
    write_structured(results, os);
    std::istringstream is(os.str());
    const ResultSet back = parse_structured(is);
    CHECK(back == results);

    // emission is deterministic
    std::ostringstream os2;
    write_structured(run(cfg), os2);
    CHECK(os.str() == os2.str());
}

TEST_CASE("propagate with zero coupling gives diagonal phases") {
    const char* freecfg = R"({
      "order": 3, "time": {"start": 0.5, "end": 0.5, "steps": 1},
      "system": {"eigenvalues": [0.25, -1.5],
                 "h1": [[[0,0],[0,0]],[[0,0],[0,0]]]}
    })";
    const ResultSet rs = run(parse_config(freecfg, "propagate"));
    REQUIRE(rs.records.size() == 4);
    // order: row-major over (row, col)
    CHECK(rs.records[0].re == doctest::Approx(std::cos(0.25 * 0.5)));
    CHECK(rs.records[0].im == doctest::Approx(-std::sin(0.25 * 0.5)));
    CHECK(rs.records[1].re == 0.0);
    CHECK(rs.records[2].re == 0.0);
    CHECK(rs.records[3].re == doctest::Approx(std::cos(1.5 * 0.5)));
    CHECK(rs.records[3].im == doctest::Approx(std::sin(1.5 * 0.5)));
}

TEST_CASE("evolve command matches the dense oracle") {
    const char* cfg = R"({
      "order": 8,
      "time": {"start": 0.0, "end": 2.0, "steps": 3},
      "system": {"eigenvalues": [0.0, 1.0],
                 "h1": [[[0,0],[0.2,0]],[[0.2,0],[0,0]]]},
      "state": {"basis_index": 0}
    })";
    const RunConfig rc = parse_config(cfg, "evolve");
    const ResultSet rs = run(rc);
    REQUIRE(rs.records.size() == 6);
    for (double t : {0.0, 1.0, 2.0}) {
        const CMatrix u = dense_exp(rc.system->total(), t);
        for (int g = 0; g < 2; ++g) {
            const auto& rec = rs.records[static_cast<std::size_t>(t) * 2 + g];
            CHECK(rec.t == doctest::Approx(t));
            CHECK(std::abs(Complex{rec.re, rec.im} - u(g, 0)) < 1e-6);
        }
    }
}

TEST_CASE("coeffs command emits three agreeing routes") {
    const char* cfg = R"({"coeffs": {"energies": [3.0, 2.0, 1.0], "n": 3}})";
    const ResultSet rs = run(parse_config(cfg, "coeffs"));
    REQUIRE(rs.records.size() == 3);
    for (const auto& rec : rs.records) CHECK(rec.re == doctest::Approx(6.0));
}

#ifdef PATHSUM_CLI_PATH
TEST_CASE("binary: exit codes and byte-identical reruns") {
    const std::string bin = PATHSUM_CLI_PATH;
    const std::string cfg_path = temp_path("cfg.json");
    {
        std::ofstream os(cfg_path);
        os << kMinimalTwoLevel;
    }

    const std::string out1 = temp_path("out1.json");
    const std::string out2 = temp_path("out2.json");
    const std::string cmd1 = bin + " propagate --config " + cfg_path +
                             " --format structured --out " + out1;
    const std::string cmd2 = bin + " propagate --config " + cfg_path +
                             " --format structured --out " + out2;
    CHECK(std::system(cmd1.c_str()) == 0);
    CHECK(std::system(cmd2.c_str()) == 0);
    CHECK(slurp(out1) == slurp(out2));
    CHECK(!slurp(out1).empty());

    // validation failure -> exit 2
    const std::string bad_path = temp_path("bad.json");
    {
        std::ofstream os(bad_path);
        os << R"({"order": 1, "time": {"start": 0, "end": 1, "steps": 1},
                  "system": {"eigenvalues": [0.0], "h1": [[[0,0],[0,0]]]}})";
    }
    const int bad = std::system((bin + " propagate --config " + bad_path + " >/dev/null 2>&1")
                                    .c_str());
    CHECK(WEXITSTATUS(bad) == 2);

    // budget overrun -> exit 3
    const std::string big_path = temp_path("big.json");
    {
        std::ofstream os(big_path);
        os << R"({"order": 40, "evaluator": "paths",
                  "time": {"start": 1, "end": 1, "steps": 1},
                  "system": {"eigenvalues": [0.0, 1.0, 2.0, 3.0],
                             "h1": [[[0,0],[0.1,0],[0,0],[0,0]],
                                    [[0.1,0],[0,0],[0.1,0],[0,0]],
                                    [[0,0],[0.1,0],[0,0],[0.1,0]],
                                    [[0,0],[0,0],[0.1,0],[0,0]]]}})";
    }
    const int big = std::system((bin + " propagate --config " + big_path + " >/dev/null 2>&1")
                                    .c_str());
    CHECK(WEXITSTATUS(big) == 3);

    for (const std::string& p : {cfg_path, out1, out2, bad_path, big_path})
        std::remove(p.c_str());
}
#endif
