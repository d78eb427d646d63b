// coeffs.hpp - coefficient functions C_l^n over an energy chain, computed three
// independent ways, plus the alternating power-sum identity they rest on.
//
// Everything is templated over the scalar so the same code runs in doubles
// (dynamics) and exact rationals (identity and equivalence checks).
#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>
#include <vector>

#include "pathsum/errors.hpp"
#include "pathsum/types.hpp"

namespace pathsum {

/// theta(x) = 1 for x >= 0, else 0.
constexpr int theta_step(long x) { return x >= 0 ? 1 : 0; }

/// Strict variant: 1 for x > 0, else 0.
constexpr int theta_strict(long x) { return x > 0 ? 1 : 0; }

template <typename T>
T pow_int(const T& base, int k) {
    T acc{1};
    for (int i = 0; i < k; ++i) acc = acc * base;
    return acc;
}

namespace detail {

template <typename T>
void check_energy_vector(const std::vector<T>& e) {
    if (e.size() < 2)
        throw validation_error("energy vector needs at least 2 entries, got " +
                               std::to_string(e.size()));
    if constexpr (std::is_floating_point_v<T>) {
        for (const T& x : e)
            if (!std::isfinite(x)) throw validation_error("energy vector has non-finite entry");
    }
}

template <typename T>
bool coincident(const T& a, const T& b, double tol) {
    if constexpr (std::is_floating_point_v<T>) {
        return std::abs(a - b) < tol * std::max({T(1), std::abs(a), std::abs(b)});
    } else {
        (void)tol;
        return a == b;  // exact scalars compare exactly
    }
}

}  // namespace detail

/// True if some pair of energies is coincident (relative tolerance in the
/// float path, exact equality for exact scalars).
template <typename T>
bool has_coincident_pair(const std::vector<T>& e, double tol = kDefaultDegeneracyTol) {
    for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = i + 1; j < e.size(); ++j)
            if (detail::coincident(e[i], e[j], tol)) return true;
    return false;
}

/// d_i = prod_{j<i}(E_j - E_i) * prod_{k>i}(E_i - E_k), for i = 1..l+1.
template <typename T>
std::vector<T> denominators(const std::vector<T>& e) {
    detail::check_energy_vector(e);
    const std::size_t m = e.size();
    std::vector<T> d(m, T{1});
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < i; ++j) d[i] = d[i] * (e[j] - e[i]);
        for (std::size_t k = i + 1; k < m; ++k) d[i] = d[i] * (e[i] - e[k]);
    }
    return d;
}

// ---------------------------------------------------------------------------
// Route 1: brute-force enumeration. This is the oracle the other two routes
// are checked against. Tuples (k_1..k_l) run lexicographically over the box
// [0, n-l]^l and contribute when sum(k) + l <= n; float accumulation is
// compensated so the order is reproducible and benign.
// ---------------------------------------------------------------------------
template <typename T>
T coeff_enumerated(const std::vector<T>& e, int n) {
    detail::check_energy_vector(e);
    if (n < 0) throw validation_error("coefficient power n must be >= 0");
    const int l = static_cast<int>(e.size()) - 1;
    if (n < l) return T{0};  // empty sum

    const int kmax = n - l;
    // power tables e[i]^0..kmax
    std::vector<std::vector<T>> pw(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        pw[i].resize(kmax + 1);
        pw[i][0] = T{1};
        for (int p = 1; p <= kmax; ++p) pw[i][p] = pw[i][p - 1] * e[i];
    }

    std::vector<int> k(l, 0);
    T sum{0};
    [[maybe_unused]] T comp{0};
    for (;;) {
        int ktot = 0;
        for (int i = 0; i < l; ++i) ktot += k[i];
        if (ktot <= kmax) {
            T term{1};
            for (int i = 0; i < l; ++i) term = term * pw[i][k[i]];
            term = term * pw[l][kmax - ktot];
            if constexpr (std::is_floating_point_v<T>) {
                const T y = term - comp;
                const T t = sum + y;
                comp = (t - sum) - y;
                sum = t;
            } else {
                sum = sum + term;
            }
        }
        // lexicographic odometer
        int pos = l - 1;
        while (pos >= 0 && k[pos] == kmax) k[pos--] = 0;
        if (pos < 0) break;
        ++k[pos];
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Route 2: recurrence C_l^n = sum_{k=0}^{n-l} C_{l-1}^{n-k-1} E_{l+1}^k with
// the geometric-series base C_1^n = (E_1^n - E_2^n)/(E_1 - E_2).
// ---------------------------------------------------------------------------
template <typename T>
T coeff_recurrence(const std::vector<T>& e, int n) {
    detail::check_energy_vector(e);
    if (n < 0) throw validation_error("coefficient power n must be >= 0");
    const int l = static_cast<int>(e.size()) - 1;
    if (n < l) return T{0};
    if (e[0] == e[1])
        throw degenerate_energies_error("recurrence base needs E_1 != E_2");

    // row for j = 1 holds C_1^m, m = 0..n (zero below m = 1)
    std::vector<T> row(n + 1, T{0});
    for (int m = 1; m <= n; ++m)
        row[m] = (pow_int(e[0], m) - pow_int(e[1], m)) / (e[0] - e[1]);

    for (int j = 2; j <= l; ++j) {
        const T& ej1 = e[j];  // E_{j+1}, 1-based
        std::vector<T> next(n + 1, T{0});
        for (int m = j; m <= n; ++m) {
            T acc{0};
            T epow{1};
            for (int k = 0; k <= m - j; ++k) {
                acc = acc + row[m - k - 1] * epow;
                epow = epow * ej1;
            }
            next[m] = acc;
        }
        row = std::move(next);
    }
    return row[n];
}

// ---------------------------------------------------------------------------
// Route 3: closed form C_l^n = sum_i (-1)^{i-1} E_i^n / d_i. Defined for all
// n >= 0 (vanishes for n < l); throws on coincident energies, in which case
// the caller must route to the confluent evaluator.
// ---------------------------------------------------------------------------
template <typename T>
T coeff_closed(const std::vector<T>& e, int n, double tol = kDefaultDegeneracyTol) {
    detail::check_energy_vector(e);
    if (n < 0) throw validation_error("coefficient power n must be >= 0");
    if (has_coincident_pair(e, tol))
        throw degenerate_energies_error(
            "closed-form coefficient needs pairwise distinct energies");
    const std::vector<T> d = denominators(e);
    T sum{0};
    int sign = 1;
    for (std::size_t i = 0; i < e.size(); ++i) {
        const T term = pow_int(e[i], n) / d[i];
        if (sign > 0)
            sum = sum + term;
        else
            sum = sum - term;
        sign = -sign;
    }
    return sum;
}

/// Alternating power sum sum_i (-1)^{i-1} E_i^K / d_i. Contract: 0 for
/// 0 <= K < l, 1 for K = l; equals C_l^K above that.
template <typename T>
T identity_sum(const std::vector<T>& e, int K, double tol = kDefaultDegeneracyTol) {
    return coeff_closed(e, K, tol);
}

}  // namespace pathsum
