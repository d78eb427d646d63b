// config.cpp - JSON configuration parsing and validation

#include "pathsum/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pathsum/coeffs.hpp"
#include "pathsum/errors.hpp"

namespace pathsum {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& field, const std::string& why) {
    throw validation_error("config field '" + field + "': " + why);
}

const json& require(const json& j, const std::string& field, const std::string& path) {
    if (!j.contains(field)) fail(path.empty() ? field : path + "." + field, "missing");
    return j.at(field);
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(path, "must be finite");
    return v;
}

int as_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<int>();
}

// a complex entry is a [re, im] pair
Complex as_complex(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) fail(path, "expected a [re, im] pair");
    return Complex{as_number(j[0], path + "[0]"), as_number(j[1], path + "[1]")};
}

CVector as_complex_vector(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of [re, im] pairs");
    CVector v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = as_complex(j[i], path + "[" + std::to_string(i) + "]");
    return v;
}

CMatrix as_complex_matrix(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    if (cols == 0) fail(path + "[0]", "expected a non-empty row");
    CMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string rpath = path + "[" + std::to_string(r) + "]";
        if (!j[r].is_array()) fail(rpath, "expected a row array");
        if (j[r].size() != cols)
            fail(rpath, "row has " + std::to_string(j[r].size()) + " entries, expected " +
                            std::to_string(cols));
        for (std::size_t c = 0; c < cols; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                as_complex(j[r][c], rpath + "[" + std::to_string(c) + "]");
    }
    return m;
}

RVector as_real_vector(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of numbers");
    RVector v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = as_number(j[i], path + "[" + std::to_string(i) + "]");
    return v;
}

SplitHamiltonian parse_system(const json& j) {
    if (!j.is_object()) fail("system", "expected an object");
    const RVector e = as_real_vector(require(j, "eigenvalues", "system"), "system.eigenvalues");
    const CMatrix h1 = as_complex_matrix(require(j, "h1", "system"), "system.h1");
    bool allow = false;
    if (j.contains("allow_non_hermitian")) {
        if (!j.at("allow_non_hermitian").is_boolean())
            fail("system.allow_non_hermitian", "expected a boolean");
        allow = j.at("allow_non_hermitian").get<bool>();
    }
    if (h1.rows() != h1.cols())
        fail("system.h1", "must be square, got " + std::to_string(h1.rows()) + "x" +
                              std::to_string(h1.cols()));
    if (h1.rows() != e.size())
        fail("system.h1", "dimension " + std::to_string(h1.rows()) +
                              " does not match system.eigenvalues length " +
                              std::to_string(e.size()));
    try {
        return SplitHamiltonian::make(e, h1, allow);
    } catch (const validation_error& err) {
        fail("system", err.what());
    }
}

LatticeSystem parse_lattice(const json& j) {
    if (!j.is_object()) fail("lattice", "expected an object");
    const int n = as_int(require(j, "grid_points", "lattice"), "lattice.grid_points");
    const double box =
        as_number(require(j, "box_length", "lattice"), "lattice.box_length");
    const double mass = as_number(require(j, "mass", "lattice"), "lattice.mass");
    const json& pot = require(j, "potential", "lattice");
    RVector samples;
    if (pot.is_object() && pot.contains("samples")) {
        samples = as_real_vector(pot.at("samples"), "lattice.potential.samples");
    } else if (pot.is_object() && pot.contains("cosine_amplitude")) {
        const double v =
            as_number(pot.at("cosine_amplitude"), "lattice.potential.cosine_amplitude");
        if (n < 4 || n % 2 != 0) fail("lattice.grid_points", "must be even and >= 4");
        samples.resize(n);
        for (int m = 0; m < n; ++m)
            samples(m) = 2.0 * v * std::cos(2.0 * std::numbers::pi * m / n);
    } else {
        fail("lattice.potential", "expected 'samples' or 'cosine_amplitude'");
    }
    try {
        return LatticeSystem::make(n, box, mass, samples);
    } catch (const validation_error& err) {
        fail("lattice", err.what());
    }
}

CVector parse_lattice_state(const json& j, const LatticeSystem& sys) {
    if (!j.is_object()) fail("state", "expected an object");
    if (j.contains("samples")) {
        CVector psi = as_complex_vector(j.at("samples"), "state.samples");
        if (psi.size() != sys.n)
            fail("state.samples", "needs " + std::to_string(sys.n) + " entries, got " +
                                      std::to_string(psi.size()));
        return psi;
    }
    if (j.contains("gaussian")) {
        const json& g = j.at("gaussian");
        const double center = as_number(require(g, "center", "state.gaussian"),
                                        "state.gaussian.center");
        const double width =
            as_number(require(g, "width", "state.gaussian"), "state.gaussian.width");
        if (!(width > 0.0)) fail("state.gaussian.width", "must be > 0");
        double momentum = 0.0;
        if (g.contains("momentum"))
            momentum = as_number(g.at("momentum"), "state.gaussian.momentum");
        CVector psi(sys.n);
        for (int m = 0; m < sys.n; ++m) {
            const double x = sys.box_length * m / sys.n;
            const double dx = x - center;
            psi(m) = std::exp(Complex(-dx * dx / (4.0 * width * width), momentum * x));
        }
        psi /= psi.norm();
        return psi;
    }
    fail("state", "expected 'samples' or 'gaussian'");
}

CVector parse_state(const json& j, int dim) {
    if (!j.is_object()) fail("state", "expected an object");
    if (j.contains("basis_index")) {
        const int idx = as_int(j.at("basis_index"), "state.basis_index");
        if (idx < 0 || idx >= dim) fail("state.basis_index", "out of range");
        CVector psi = CVector::Zero(dim);
        psi(idx) = 1.0;
        return psi;
    }
    if (j.contains("amplitudes")) {
        CVector psi = as_complex_vector(j.at("amplitudes"), "state.amplitudes");
        if (psi.size() != dim)
            fail("state.amplitudes", "needs " + std::to_string(dim) + " entries, got " +
                                         std::to_string(psi.size()));
        bool allow = false;
        if (j.contains("allow_unnormalized")) {
            if (!j.at("allow_unnormalized").is_boolean())
                fail("state.allow_unnormalized", "expected a boolean");
            allow = j.at("allow_unnormalized").get<bool>();
        }
        if (!allow && std::abs(psi.norm() - 1.0) > 1e-9)
            fail("state.amplitudes", "norm is " + std::to_string(psi.norm()) +
                                         ", not 1; set state.allow_unnormalized to keep it");
        return psi;
    }
    fail("state", "expected 'basis_index' or 'amplitudes'");
}

CMatrix parse_density(const json& j, int dim) {
    if (!j.is_object()) fail("density", "expected an object");
    if (j.contains("pure_basis_index")) {
        const int idx = as_int(j.at("pure_basis_index"), "density.pure_basis_index");
        if (idx < 0 || idx >= dim) fail("density.pure_basis_index", "out of range");
        CMatrix rho = CMatrix::Zero(dim, dim);
        rho(idx, idx) = 1.0;
        return rho;
    }
    if (j.contains("matrix")) {
        CMatrix rho = as_complex_matrix(j.at("matrix"), "density.matrix");
        if (rho.rows() != dim || rho.cols() != dim)
            fail("density.matrix", "needs dimension " + std::to_string(dim));
        return rho;
    }
    fail("density", "expected 'pure_basis_index' or 'matrix'");
}

}  // namespace

std::vector<double> TimeGrid::points() const {
    std::vector<double> ts;
    ts.reserve(steps);
    if (steps == 1) {
        ts.push_back(start);
        return ts;
    }
    for (int i = 0; i < steps; ++i)
        ts.push_back(start + (end - start) * i / (steps - 1));
    return ts;
}

SeriesOptions RunConfig::series_options() const {
    SeriesOptions opts;
    opts.cluster_tol = tolerances.degeneracy;
    opts.evaluator = evaluator;
    return opts;
}

RunConfig parse_config(const std::string& text, const std::string& command) {
    static const std::set<std::string> commands = {"coeffs",  "verify",  "propagate", "evolve",
                                                   "density", "lattice", "ptcheck"};
    if (!commands.contains(command))
        throw validation_error("unknown command '" + command + "'");

    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& err) {
        throw validation_error(std::string("config is not valid JSON: ") + err.what());
    }
    if (!doc.is_object()) throw validation_error("config root must be an object");

    RunConfig cfg;
    cfg.command = command;

    if (doc.contains("seed")) {
        if (!doc.at("seed").is_number_unsigned() && !doc.at("seed").is_number_integer())
            fail("seed", "expected a non-negative integer");
        const auto s = doc.at("seed").get<long long>();
        if (s < 0) fail("seed", "must be >= 0");
        cfg.seed = static_cast<std::uint64_t>(s);
    }
    if (doc.contains("order")) {
        cfg.order = as_int(doc.at("order"), "order");
        if (cfg.order < 0) fail("order", "must be >= 0");
    }
    if (doc.contains("tolerances")) {
        const json& tj = doc.at("tolerances");
        if (!tj.is_object()) fail("tolerances", "expected an object");
        if (tj.contains("degeneracy")) {
            cfg.tolerances.degeneracy = as_number(tj.at("degeneracy"), "tolerances.degeneracy");
            if (!(cfg.tolerances.degeneracy > 0.0)) fail("tolerances.degeneracy", "must be > 0");
        }
        if (tj.contains("oracle")) {
            cfg.tolerances.oracle = as_number(tj.at("oracle"), "tolerances.oracle");
            if (!(cfg.tolerances.oracle > 0.0)) fail("tolerances.oracle", "must be > 0");
        }
    }
    if (doc.contains("evaluator")) {
        const json& ej = doc.at("evaluator");
        if (!ej.is_string()) fail("evaluator", "expected 'paths' or 'block-oracle'");
        const std::string ev = ej.get<std::string>();
        if (ev == "paths")
            cfg.evaluator = Evaluator::Paths;
        else if (ev == "block-oracle")
            cfg.evaluator = Evaluator::BlockOracle;
        else if (ev == "auto")
            cfg.evaluator = Evaluator::Auto;
        else
            fail("evaluator", "expected 'paths' or 'block-oracle', got '" + ev + "'");
    }

    const bool needs_time = command == "propagate" || command == "evolve" ||
                            command == "density" || command == "lattice";
    if (needs_time) {
        const json& tj = require(doc, "time", "");
        if (!tj.is_object()) fail("time", "expected an object");
        cfg.time.start = as_number(require(tj, "start", "time"), "time.start");
        cfg.time.end = as_number(require(tj, "end", "time"), "time.end");
        cfg.time.steps = as_int(require(tj, "steps", "time"), "time.steps");
        if (cfg.time.steps < 1) fail("time.steps", "must be >= 1");
    }

    if (command == "propagate" || command == "evolve" || command == "density" ||
        command == "ptcheck") {
        cfg.system = parse_system(require(doc, "system", ""));
    }
    if (command == "evolve") cfg.state = parse_state(require(doc, "state", ""), cfg.system->dim());
    if (command == "density")
        cfg.density = parse_density(require(doc, "density", ""), cfg.system->dim());
    if (command == "lattice") {
        cfg.lattice = parse_lattice(require(doc, "lattice", ""));
        cfg.state = parse_lattice_state(require(doc, "state", ""), *cfg.lattice);
    }
    if (command == "coeffs") {
        const json& cj = require(doc, "coeffs", "");
        if (!cj.is_object()) fail("coeffs", "expected an object");
        const RVector e = as_real_vector(require(cj, "energies", "coeffs"), "coeffs.energies");
        if (e.size() < 2) fail("coeffs.energies", "needs at least 2 entries");
        cfg.coeff_energies.assign(e.data(), e.data() + e.size());
        cfg.coeff_power = as_int(require(cj, "n", "coeffs"), "coeffs.n");
        if (cfg.coeff_power < 0) fail("coeffs.n", "must be >= 0");
        if (has_coincident_pair(cfg.coeff_energies, cfg.tolerances.degeneracy))
            fail("coeffs.energies", "entries must be pairwise distinct at the configured "
                                    "degeneracy tolerance");
        // keep the enumeration route tractable
        const int l = static_cast<int>(cfg.coeff_energies.size()) - 1;
        const double tuples =
            std::pow(static_cast<double>(cfg.coeff_power - l + 1), l);
        if (cfg.coeff_power > 64 || tuples > 1e8)
            fail("coeffs.n", "enumeration too large for this energy vector");
    }
    if (command == "ptcheck") {
        const json& pj = require(doc, "ptcheck", "");
        if (!pj.is_object()) fail("ptcheck", "expected an object");
        cfg.ptcheck_max_k = as_int(require(pj, "max_k", "ptcheck"), "ptcheck.max_k");
        if (cfg.ptcheck_max_k < 1) fail("ptcheck.max_k", "must be >= 1");
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path, const std::string& command) {
    std::ifstream is(path);
    if (!is) throw validation_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_config(buf.str(), command);
}

}  // namespace pathsum
