// divided_exp.cpp - distinct and confluent evaluation of the phase factor

#include "pathsum/divided_exp.hpp"

#include <algorithm>
#include <cmath>

#include "pathsum/coeffs.hpp"
#include "pathsum/errors.hpp"
#include "pathsum/expm.hpp"

namespace pathsum {
namespace {

// nodes expanded with multiplicity, e.g. {(a,2),(b,1)} -> {a,a,b}
std::vector<double> expand_nodes(const ClusteredSpectrum& s) {
    std::vector<double> x;
    x.reserve(s.total_multiplicity());
    for (const auto& nd : s.nodes)
        for (int r = 0; r < nd.multiplicity; ++r) x.push_back(nd.energy);
    return x;
}

double spread_of(const std::vector<double>& x) {
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    return *hi - *lo;
}

// Divided difference of e^{-i x t} via the shifted Taylor series
//   dd = e^{-i mu t} sum_{j >= 0} c_{m-1+j} h_j(x - mu),   c_k = (-i t)^k / k!,
// where h_j is the complete homogeneous symmetric polynomial. Converges for
// any argument; term growth (and so the usable range) is set by spread * |t|.
Complex taylor_divided_difference(const std::vector<double>& x, double t) {
    const int m = static_cast<int>(x.size());
    double mu = 0.0;
    for (double v : x) mu += v;
    mu /= m;
    std::vector<double> xi(x);
    for (double& v : xi) v -= mu;

    Complex ck{1.0, 0.0};  // c_{m-1+j}, starts at k = m-1
    for (int k = 1; k <= m - 1; ++k) ck *= Complex(0.0, -t) / double(k);

    // h_row[p] = h_j over the first p shifted nodes; j = 0 row is all ones
    std::vector<double> h_row(m + 1, 1.0);
    Complex acc = ck;  // j = 0 term, h_0 = 1
    int quiet = 0;     // symmetric node sets zero out alternate terms, so a
                       // single small term must not end the summation
    for (int j = 1; j <= 400; ++j) {
        ck *= Complex(0.0, -t) / double(m - 1 + j);
        h_row[0] = 0.0;
        for (int p = 1; p <= m; ++p) h_row[p] = h_row[p - 1] + xi[p - 1] * h_row[p];
        const Complex term = ck * h_row[m];
        acc += term;
        quiet = std::abs(term) < 1e-17 * (std::abs(acc) + 1e-300) ? quiet + 1 : 0;
        if (quiet >= 2 && j > 3) break;
    }
    return std::exp(Complex(0.0, -mu * t)) * acc;
}

// Bidiagonal (Opitz) route: the (1, m) entry of e^{-i Z t} with the expanded
// nodes on the diagonal of Z and ones on the superdiagonal equals the
// divided difference over those nodes.
Complex bidiagonal_divided_difference(const std::vector<double>& x, double t) {
    const int m = static_cast<int>(x.size());
    CMatrix z = CMatrix::Zero(m, m);
    for (int i = 0; i < m; ++i) z(i, i) = x[i];
    for (int i = 0; i + 1 < m; ++i) z(i, i + 1) = 1.0;
    const CMatrix f = dense_exp(z, t);
    return f(0, m - 1);
}

}  // namespace

ClusteredSpectrum cluster_energies(const std::vector<double>& energies, double tol) {
    if (tol <= 0.0) throw validation_error("cluster tolerance must be > 0");
    if (energies.empty()) throw validation_error("cluster input must be non-empty");
    std::vector<double> sorted(energies);
    std::sort(sorted.begin(), sorted.end());

    ClusteredSpectrum out;
    out.cluster_tolerance = tol;
    double sum = sorted[0];
    int count = 1;
    double prev = sorted[0];
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        const double cur = sorted[i];
        const double gap_tol = tol * std::max({1.0, std::abs(prev), std::abs(cur)});
        if (cur - prev <= gap_tol) {
            sum += cur;
            ++count;
        } else {
            out.nodes.push_back({sum / count, count});
            sum = cur;
            count = 1;
        }
        prev = cur;
    }
    out.nodes.push_back({sum / count, count});
    return out;
}

Complex phase_factor(const std::vector<double>& energies, double t, double tol) {
    if (energies.size() < 2)
        throw validation_error("phase factor needs at least 2 energies");
    if (has_coincident_pair(energies, tol))
        throw degenerate_energies_error("phase factor requires distinct energies");

    if (energies.size() == 2) {
        // two-node divided difference in the cancellation-free form
        //   -i t e^{-i mu t} sinc(delta t / 2)
        const double mu = 0.5 * (energies[0] + energies[1]);
        const double delta = energies[0] - energies[1];
        const double half = 0.5 * delta * t;
        const double sinc = half == 0.0 ? 1.0 : std::sin(half) / half;
        return Complex(0.0, -t) * std::exp(Complex(0.0, -mu * t)) * sinc;
    }

    // The alternating sum cancels catastrophically while the phases have not
    // decorrelated (the terms sum to zero for every power below l); in that
    // regime the shifted series evaluates the same value without cancellation.
    if (spread_of(energies) * std::abs(t) < 4.0)
        return taylor_divided_difference(energies, t);

    const std::vector<double> d = denominators(energies);
    Complex sum{0.0, 0.0};
    double sign = 1.0;
    for (std::size_t i = 0; i < energies.size(); ++i) {
        sum += sign * std::exp(Complex(0.0, -energies[i] * t)) / d[i];
        sign = -sign;
    }
    return sum;
}

Complex phase_factor_confluent(const ClusteredSpectrum& spectrum, double t) {
    if (spectrum.nodes.empty()) throw validation_error("empty spectrum");
    for (const auto& nd : spectrum.nodes)
        if (nd.multiplicity < 1) throw validation_error("multiplicity must be >= 1");

    // fully confluent cluster: (-i t)^m e^{-i E t} / m!
    if (spectrum.nodes.size() == 1) {
        const int m = spectrum.nodes[0].multiplicity - 1;
        Complex amp{1.0, 0.0};
        for (int k = 1; k <= m; ++k) amp *= Complex(0.0, -t) / double(k);
        return amp * std::exp(Complex(0.0, -spectrum.nodes[0].energy * t));
    }

    const std::vector<double> x = expand_nodes(spectrum);
    if (spread_of(x) * std::abs(t) < 1.0) return taylor_divided_difference(x, t);
    return bidiagonal_divided_difference(x, t);
}

double coeff_confluent(const ClusteredSpectrum& spectrum, int n) {
    if (n < 0) throw validation_error("coefficient power n must be >= 0");
    const std::vector<double> x = expand_nodes(spectrum);
    const int m = static_cast<int>(x.size());
    if (m == 1) return std::pow(x[0], n);
    RMatrix z = RMatrix::Zero(m, m);
    for (int i = 0; i < m; ++i) z(i, i) = x[i];
    for (int i = 0; i + 1 < m; ++i) z(i, i + 1) = 1.0;
    RMatrix p = RMatrix::Identity(m, m);
    for (int k = 0; k < n; ++k) p = p * z;
    return p(0, m - 1);
}

Complex path_phase(const std::vector<double>& energies, double t, double tol) {
    const ClusteredSpectrum s = cluster_energies(energies, tol);
    if (s.all_singletons()) return phase_factor(energies, t, tol);
    return phase_factor_confluent(s, t);
}

double path_coeff(const std::vector<double>& energies, int n, double tol) {
    const ClusteredSpectrum s = cluster_energies(energies, tol);
    if (s.all_singletons()) return coeff_closed(energies, n, tol);
    return coeff_confluent(s, n);
}

}  // namespace pathsum
