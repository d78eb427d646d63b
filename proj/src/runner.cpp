// runner.cpp - maps each command onto the library and flattens the results

#include "pathsum/runner.hpp"

#include <string>

#include "pathsum/coeffs.hpp"
#include "pathsum/dynamics.hpp"
#include "pathsum/errors.hpp"
#include "pathsum/verify.hpp"

namespace pathsum {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json meta_for(const RunConfig& cfg) {
    ordered_json meta;
    meta["seed"] = cfg.seed;
    meta["order"] = cfg.order;
    meta["tolerances"] = {{"degeneracy", cfg.tolerances.degeneracy},
                          {"oracle", cfg.tolerances.oracle}};
    switch (cfg.evaluator) {
        case Evaluator::Paths: meta["evaluator"] = "paths"; break;
        case Evaluator::BlockOracle: meta["evaluator"] = "block-oracle"; break;
        case Evaluator::Auto: meta["evaluator"] = "auto"; break;
    }
    return meta;
}

void push_vector(ResultSet& rs, double t, const CVector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        rs.records.push_back({t, static_cast<long>(i), v(i).real(), v(i).imag()});
}

void push_matrix(ResultSet& rs, double t, const CMatrix& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            rs.records.push_back(
                {t, static_cast<long>(r * m.cols() + c), m(r, c).real(), m(r, c).imag()});
}

ResultSet run_coeffs(const RunConfig& cfg) {
    ResultSet rs;
    rs.command = cfg.command;
    rs.meta = meta_for(cfg);
    const std::vector<double>& e = cfg.coeff_energies;
    const int n = cfg.coeff_power;
    const double routes[3] = {coeff_enumerated(e, n), coeff_recurrence(e, n),
                              coeff_closed(e, n, cfg.tolerances.degeneracy)};
    for (long r = 0; r < 3; ++r)
        rs.records.push_back({static_cast<double>(n), r, routes[r], 0.0});
    rs.summary = {{"l", e.size() - 1},
                  {"n", n},
                  {"route_names", {"enumerated", "recurrence", "closed"}}};
    return rs;
}

ResultSet run_verify_command(const RunConfig& cfg) {
    ResultSet rs;
    rs.command = cfg.command;
    rs.meta = meta_for(cfg);
    const VerifyReport report =
        run_verify(cfg.seed, cfg.tolerances.degeneracy, cfg.tolerances.oracle);
    ordered_json suites = ordered_json::array();
    long idx = 0;
    for (const SuiteResult& s : report.suites) {
        rs.records.push_back({0.0, idx++, s.worst_residual, 0.0});
        suites.push_back({{"name", s.name},
                          {"cases", s.cases},
                          {"failures", s.failures},
                          {"worst_residual", s.worst_residual}});
    }
    rs.summary = {{"suites", suites}, {"all_passed", report.all_passed()}};
    return rs;
}

ResultSet run_ptcheck(const RunConfig& cfg) {
    ResultSet rs;
    rs.command = cfg.command;
    rs.meta = meta_for(cfg);
    ordered_json per_k = ordered_json::array();
    for (int k = 1; k <= cfg.ptcheck_max_k; ++k) {
        const PTCheckReport report =
            stationary_residuals(*cfg.system, k, cfg.series_options());
        for (std::size_t p = 0; p < report.per_equation.size(); ++p)
            rs.records.push_back({static_cast<double>(k), static_cast<long>(p),
                                  report.per_equation[p], 0.0});
        per_k.push_back({{"K", k}, {"max_residual", report.max_residual}});
    }
    rs.summary = {{"per_order", per_k}};
    return rs;
}

}  // namespace

ResultSet run(const RunConfig& cfg) {
    if (cfg.command == "coeffs") return run_coeffs(cfg);
    if (cfg.command == "verify") return run_verify_command(cfg);
    if (cfg.command == "ptcheck") return run_ptcheck(cfg);

    ResultSet rs;
    rs.command = cfg.command;
    rs.meta = meta_for(cfg);
    const SeriesOptions opts = cfg.series_options();

    try {
        if (cfg.command == "propagate") {
            rs.meta["dim"] = cfg.system->dim();
            for (double t : cfg.time.points())
                push_matrix(rs, t, truncated_propagator(*cfg.system, cfg.order, t, opts));
        } else if (cfg.command == "evolve") {
            rs.meta["dim"] = cfg.system->dim();
            for (double t : cfg.time.points())
                push_vector(rs, t, evolve_state(*cfg.system, *cfg.state, cfg.order, t, opts));
        } else if (cfg.command == "density") {
            rs.meta["dim"] = cfg.system->dim();
            for (double t : cfg.time.points())
                push_matrix(rs, t, evolve_density(*cfg.system, *cfg.density, cfg.order, t, opts));
        } else if (cfg.command == "lattice") {
            rs.meta["grid_points"] = cfg.lattice->n;
            for (double t : cfg.time.points())
                push_vector(rs, t,
                            evolve_wavefunction(*cfg.lattice, *cfg.state, cfg.order, t, opts));
        } else {
            throw validation_error("unknown command '" + cfg.command + "'");
        }
    } catch (const budget_exceeded_error& err) {
        throw budget_exceeded_error(cfg.command + ": " + err.what());
    }
    return rs;
}

}  // namespace pathsum
