// config.hpp - run configuration: one JSON document, validated up front with
// field-precise errors so nothing malformed reaches the numerics.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pathsum/lattice.hpp"
#include "pathsum/propagator.hpp"
#include "pathsum/types.hpp"

namespace pathsum {

struct TimeGrid {
    double start = 0.0;
    double end = 0.0;
    int steps = 1;  // evenly spaced points, inclusive of both ends

    std::vector<double> points() const;
};

struct Tolerances {
    double degeneracy = kDefaultDegeneracyTol;
    double oracle = 1e-9;
};

struct RunConfig {
    std::string command;
    std::uint64_t seed = 1;
    int order = 0;
    TimeGrid time;
    Tolerances tolerances;
    Evaluator evaluator = Evaluator::Auto;

    std::optional<SplitHamiltonian> system;
    std::optional<LatticeSystem> lattice;
    std::optional<CVector> state;    // evolve / lattice initial state
    std::optional<CMatrix> density;  // density initial state

    // coeffs command payload
    std::vector<double> coeff_energies;
    int coeff_power = 0;

    int ptcheck_max_k = 1;

    SeriesOptions series_options() const;
};

/// Parses and validates a configuration document for the given command; every
/// error names the offending field.
RunConfig parse_config(const std::string& text, const std::string& command);

/// Convenience: read the file then parse.
RunConfig parse_config_file(const std::string& path, const std::string& command);

}  // namespace pathsum
