// propagator.cpp - path-sum kernels (serial + OpenMP) and the block oracle

#include "pathsum/propagator.hpp"

#include <cmath>
#include <string>

#include "pathsum/divided_exp.hpp"
#include "pathsum/errors.hpp"
#include "pathsum/expm.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pathsum {
namespace {

constexpr int kPartitionCount = 64;

void check_order(int l) {
    if (l < 0) throw validation_error("series order must be >= 0");
}

void check_budget(int dim, int l, double budget) {
    if (l < 2) return;
    const double estimate = std::pow(static_cast<double>(dim), l - 1);
    if (estimate > budget)
        throw budget_exceeded_error("path count estimate dim^(l-1) = " +
                                    std::to_string(estimate) + " exceeds budget " +
                                    std::to_string(budget));
}

// DFS over the inner indices gamma_3..gamma_{l+1} given the first two.
// `pe` carries the energy chain; entries 0 and 1 are already set.
template <typename WeightFn>
void walk_tail(const SplitHamiltonian& h, int l, int row, int prev, int depth, Complex amp,
               std::vector<double>& pe, const WeightFn& weight, CMatrix& out, PathStats& st) {
    const int d = h.dim();
    for (int c = 0; c < d; ++c) {
        const Complex w = h.h1(prev, c);
        if (w == Complex{0.0, 0.0}) {
            ++st.pruned;
            continue;
        }
        pe[depth] = h.e(c);
        const Complex amp2 = amp * w;
        if (depth == l) {
            out(row, c) += amp2 * weight(pe);
            ++st.visited;
        } else {
            walk_tail(h, l, row, c, depth + 1, amp2, pe, weight, out, st);
        }
    }
}

// All paths whose first two indices are (g1, g2), accumulated into out.
template <typename WeightFn>
void sum_pair(const SplitHamiltonian& h, int l, int g1, int g2, std::vector<double>& pe,
              const WeightFn& weight, CMatrix& out, PathStats& st) {
    const Complex w0 = h.h1(g1, g2);
    if (w0 == Complex{0.0, 0.0}) {
        ++st.pruned;
        return;
    }
    pe[0] = h.e(g1);
    pe[1] = h.e(g2);
    if (l == 1) {
        out(g1, g2) += w0 * weight(pe);
        ++st.visited;
        return;
    }
    walk_tail(h, l, g1, g2, 2, w0, pe, weight, out, st);
}

template <typename WeightFn>
CMatrix path_sum_serial(const SplitHamiltonian& h, int l, const WeightFn& weight,
                        PathStats* stats) {
    const int d = h.dim();
    CMatrix out = CMatrix::Zero(d, d);
    PathStats st;
    std::vector<double> pe(l + 1);
    for (int g1 = 0; g1 < d; ++g1)
        for (int g2 = 0; g2 < d; ++g2) sum_pair(h, l, g1, g2, pe, weight, out, st);
    if (stats) *stats = st;
    return out;
}

template <typename WeightFn>
CMatrix path_sum_parallel(const SplitHamiltonian& h, int l, const WeightFn& weight,
                          PathStats* stats) {
    const int d = h.dim();
    const long long tasks = static_cast<long long>(d) * d;
    const int parts = static_cast<int>(std::min<long long>(kPartitionCount, tasks));
    std::vector<CMatrix> partial(parts, CMatrix::Zero(d, d));
    std::vector<PathStats> pstats(parts);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int p = 0; p < parts; ++p) {
        std::vector<double> pe(l + 1);
        const long long lo = tasks * p / parts;
        const long long hi = tasks * (p + 1) / parts;
        for (long long task = lo; task < hi; ++task) {
            const int g1 = static_cast<int>(task / d);
            const int g2 = static_cast<int>(task % d);
            sum_pair(h, l, g1, g2, pe, weight, partial[p], pstats[p]);
        }
    }

    CMatrix out = CMatrix::Zero(d, d);
    PathStats st;
    for (int p = 0; p < parts; ++p) {  // fixed combine order: thread-count independent
        out += partial[p];
        st.visited += pstats[p].visited;
        st.pruned += pstats[p].pruned;
    }
    if (stats) *stats = st;
    return out;
}

CMatrix diagonal_phases(const SplitHamiltonian& h, double t) {
    const int d = h.dim();
    CMatrix a0 = CMatrix::Zero(d, d);
    for (int g = 0; g < d; ++g) a0(g, g) = std::exp(Complex(0.0, -h.e(g) * t));
    return a0;
}

}  // namespace

SplitHamiltonian SplitHamiltonian::make(RVector e, CMatrix h1, bool allow_non_hermitian) {
    if (e.size() == 0) throw validation_error("eigenvalue list must be non-empty");
    if (!e.allFinite()) throw validation_error("eigenvalues must be finite");
    if (h1.rows() != h1.cols())
        throw validation_error("h1 must be square, got " + std::to_string(h1.rows()) + "x" +
                               std::to_string(h1.cols()));
    if (h1.rows() != e.size())
        throw validation_error("h1 dimension " + std::to_string(h1.rows()) +
                               " does not match eigenvalue count " + std::to_string(e.size()));
    if (!h1.allFinite()) throw validation_error("h1 must be finite");
    if (!allow_non_hermitian) {
        const double dev = (h1 - h1.adjoint()).norm();
        if (dev > 1e-12 * h1.norm())
            throw validation_error("h1 is not Hermitian (deviation " + std::to_string(dev) +
                                   "); set the non-Hermitian override to proceed");
    }
    return SplitHamiltonian{std::move(e), std::move(h1)};
}

CMatrix SplitHamiltonian::h0() const {
    CMatrix d0 = CMatrix::Zero(dim(), dim());
    for (int g = 0; g < dim(); ++g) d0(g, g) = e(g);
    return d0;
}

CMatrix SplitHamiltonian::total() const { return h0() + h1; }

void enumerate_paths(const SplitHamiltonian& h, int l,
                     const std::function<void(const PathTerm&)>& visit) {
    if (l < 1) throw validation_error("paths are defined for order l >= 1");
    const int d = h.dim();
    PathTerm term;
    term.indices.resize(l + 1);
    term.energies.resize(l + 1);
    auto walk = [&](auto&& self, int depth, Complex amp) -> void {
        for (int c = 0; c < d; ++c) {
            const Complex w = h.h1(term.indices[depth - 1], c);
            if (w == Complex{0.0, 0.0}) continue;
            term.indices[depth] = c;
            term.energies[depth] = h.e(c);
            const Complex amp2 = amp * w;
            if (depth == l) {
                term.amplitude = amp2;
                visit(term);
            } else {
                self(self, depth + 1, amp2);
            }
        }
    };
    for (int g1 = 0; g1 < d; ++g1) {
        term.indices[0] = g1;
        term.energies[0] = h.e(g1);
        walk(walk, 1, Complex{1.0, 0.0});
    }
}

CMatrix path_weighted_sum(const SplitHamiltonian& h, int l, const PathWeight& weight,
                          const SeriesOptions& opts, PathStats* stats) {
    if (l < 1) throw validation_error("path sums are defined for order l >= 1");
    check_budget(h.dim(), l, opts.path_budget);
    if (opts.parallel) return path_sum_parallel(h, l, weight, stats);
    return path_sum_serial(h, l, weight, stats);
}

SeriesTerm series_term(const SplitHamiltonian& h, int l, double t, const SeriesOptions& opts,
                       PathStats* stats) {
    check_order(l);
    if (!std::isfinite(t)) throw validation_error("time must be finite");
    if (l == 0) {
        if (stats) *stats = PathStats{};
        return SeriesTerm{0, t, diagonal_phases(h, t)};
    }
    const double tol = opts.cluster_tol;
    auto weight = [t, tol](const std::vector<double>& pe) { return path_phase(pe, t, tol); };
    return SeriesTerm{l, t, path_weighted_sum(h, l, weight, opts, stats)};
}

SeriesTerm series_term_serial(const SplitHamiltonian& h, int l, double t,
                              const SeriesOptions& opts, PathStats* stats) {
    SeriesOptions serial = opts;
    serial.parallel = false;
    return series_term(h, l, t, serial, stats);
}

std::vector<SeriesTerm> vanloan_terms(const SplitHamiltonian& h, int L, double t) {
    check_order(L);
    if (!std::isfinite(t)) throw validation_error("time must be finite");
    const int d = h.dim();
    const int m = (L + 1) * d;
    CMatrix block = CMatrix::Zero(m, m);
    for (int i = 0; i <= L; ++i) {
        for (int g = 0; g < d; ++g) block(i * d + g, i * d + g) = h.e(g);
        if (i < L) block.block(i * d, (i + 1) * d, d, d) = h.h1;
    }
    const CMatrix f = dense_exp(block, t);
    std::vector<SeriesTerm> terms;
    terms.reserve(L + 1);
    for (int l = 0; l <= L; ++l) terms.push_back(SeriesTerm{l, t, f.block(0, l * d, d, d)});
    return terms;
}

std::vector<SeriesTerm> series_terms(const SplitHamiltonian& h, int L, double t,
                                     const SeriesOptions& opts) {
    check_order(L);
    Evaluator ev = opts.evaluator;
    if (ev == Evaluator::Auto)
        ev = static_cast<long long>(L) * h.dim() <= kDefaultBlockOracleLimit
                 ? Evaluator::BlockOracle
                 : Evaluator::Paths;
    if (ev == Evaluator::BlockOracle) return vanloan_terms(h, L, t);
    std::vector<SeriesTerm> terms;
    terms.reserve(L + 1);
    for (int l = 0; l <= L; ++l) terms.push_back(series_term(h, l, t, opts));
    return terms;
}

CMatrix truncated_propagator(const SplitHamiltonian& h, int L, double t,
                             const SeriesOptions& opts) {
    CMatrix u = CMatrix::Zero(h.dim(), h.dim());
    for (const SeriesTerm& term : series_terms(h, L, t, opts)) u += term.matrix;
    return u;
}

}  // namespace pathsum
