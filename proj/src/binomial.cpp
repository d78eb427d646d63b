// binomial.cpp - operator binomial expansion

#include "pathsum/binomial.hpp"

#include <string>
#include <vector>

#include "pathsum/errors.hpp"

namespace pathsum {
namespace {

void check_pair(const CMatrix& a, const CMatrix& b, int n, const BinomialLimits& lim) {
    if (a.rows() != a.cols() || b.rows() != b.cols())
        throw validation_error("operators must be square");
    if (a.rows() != b.rows())
        throw validation_error("operator dimensions differ: " + std::to_string(a.rows()) +
                               " vs " + std::to_string(b.rows()));
    if (n < 1) throw validation_error("power n must be >= 1");
    if (n > lim.max_power || a.rows() > lim.max_dim)
        throw validation_error("expansion exceeds configured size limits");
}

std::vector<CMatrix> power_cache(const CMatrix& a, int n) {
    std::vector<CMatrix> pw;
    pw.reserve(n + 1);
    pw.push_back(CMatrix::Identity(a.rows(), a.cols()));
    for (int k = 1; k <= n; ++k) pw.push_back(pw.back() * a);
    return pw;
}

}  // namespace

CMatrix matrix_power(const CMatrix& a, int n) {
    if (a.rows() != a.cols()) throw validation_error("matrix_power: square input required");
    if (n < 0) throw validation_error("matrix_power: n must be >= 0");
    CMatrix p = CMatrix::Identity(a.rows(), a.cols());
    for (int k = 0; k < n; ++k) p = p * a;
    return p;
}

CMatrix expand_f(const CMatrix& a, const CMatrix& b, int n, bool symmetric_form,
                 const BinomialLimits& limits) {
    check_pair(a, b, n, limits);
    const auto d = a.rows();
    const std::vector<CMatrix> apw = power_cache(a, n);
    CMatrix out = CMatrix::Zero(d, d);

    for (int l = 1; l <= n; ++l) {
        const int budget = n - l;  // sum of the k_i may not exceed this
        // DFS over (k_1..k_l); prefix holds  prod_{i<=depth} A^{k_i} B
        std::vector<CMatrix> prefix(l + 1);
        prefix[0] = CMatrix::Identity(d, d);

        auto dfs = [&](auto&& self, int depth, int used) -> void {
            if (!symmetric_form) {
                if (depth == l) {
                    out += prefix[l] * apw[budget - used];
                    return;
                }
                for (int k = 0; k + used <= budget; ++k) {
                    prefix[depth + 1] = prefix[depth] * apw[k] * b;
                    self(self, depth + 1, used + k);
                }
            } else {
                if (depth == l - 1) {
                    // remaining choice is k_l; the free A power sits between
                    // the final two B factors
                    for (int kl = 0; kl + used <= budget; ++kl)
                        out += prefix[l - 1] * apw[budget - used - kl] * b * apw[kl];
                    return;
                }
                for (int k = 0; k + used <= budget; ++k) {
                    prefix[depth + 1] = prefix[depth] * apw[k] * b;
                    self(self, depth + 1, used + k);
                }
            }
        };

        dfs(dfs, 0, 0);
    }
    return out;
}

CMatrix expand_f_rec(const CMatrix& a, const CMatrix& b, int n, const BinomialLimits& limits) {
    check_pair(a, b, n, limits);
    const std::vector<CMatrix> apw = power_cache(a, n);
    const CMatrix ab = a + b;
    CMatrix f = b;  // f^1
    for (int m = 1; m < n; ++m) f = b * apw[m] + ab * f;
    return f;
}

}  // namespace pathsum
