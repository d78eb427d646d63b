// propagator.hpp - per-order series terms A_l(t) of the time evolution
// operator in the eigenbasis of the solvable part, with two independent
// evaluation routes:
//
//   * path sums: every index chain gamma_1..gamma_{l+1} contributes the
//     divided-difference phase of its energy chain times the product of
//     coupling matrix elements (OpenMP kernel + serial reference);
//   * block oracle: A_l is the (1, l+1) block of exp(-iMt) for the block
//     upper-bidiagonal M with H0 on the diagonal and H1 above it.
#pragma once

#include <functional>
#include <vector>

#include "pathsum/types.hpp"

namespace pathsum {

/// H = H0 + H1 with H0 diagonal in its own eigenbasis.
struct SplitHamiltonian {
    RVector e;   // H0 eigenvalues
    CMatrix h1;  // perturbation in the H0 eigenbasis

    /// Validates shapes and (unless overridden) Hermiticity of h1.
    static SplitHamiltonian make(RVector e, CMatrix h1, bool allow_non_hermitian = false);

    int dim() const { return static_cast<int>(e.size()); }
    CMatrix h0() const;
    CMatrix total() const;
};

enum class Evaluator { Auto, Paths, BlockOracle };

struct SeriesOptions {
    double cluster_tol = kDefaultDegeneracyTol;  // per-path degeneracy routing
    double path_budget = kDefaultPathBudget;     // cap on dim^(l-1)
    Evaluator evaluator = Evaluator::Auto;
    bool parallel = true;  // OpenMP path kernel when compiled in
};

struct PathStats {
    long long visited = 0;  // complete paths evaluated
    long long pruned = 0;   // branches cut at a zero coupling element
};

struct SeriesTerm {
    int order = 0;
    double t = 0.0;
    CMatrix matrix;
};

using PathWeight = std::function<Complex(const std::vector<double>&)>;

/// One index chain gamma_1..gamma_{l+1} with its energy chain and the product
/// of the l coupling elements along it.
struct PathTerm {
    std::vector<int> indices;
    std::vector<double> energies;
    Complex amplitude{1.0, 0.0};
};

/// Serial walk over every surviving path of chain length l (teaching /
/// inspection surface; the kernels below do not build PathTerm objects).
void enumerate_paths(const SplitHamiltonian& h, int l,
                     const std::function<void(const PathTerm&)>& visit);

/// sum over index paths of weight(energy chain) * prod of H1 elements, for a
/// fixed chain length l >= 1. The weight sees the path energies in chain
/// order. Data-parallel across (gamma_1, gamma_2) partitions; partials are
/// combined in fixed partition order, so results do not depend on the thread
/// count.
CMatrix path_weighted_sum(const SplitHamiltonian& h, int l, const PathWeight& weight,
                          const SeriesOptions& opts = {}, PathStats* stats = nullptr);

/// Order-l term A_l(t) by path summation (parallel kernel unless opted out).
SeriesTerm series_term(const SplitHamiltonian& h, int l, double t,
                       const SeriesOptions& opts = {}, PathStats* stats = nullptr);

/// Serial reference implementation of series_term; kept for testing and as
/// the baseline of the benchmark.
SeriesTerm series_term_serial(const SplitHamiltonian& h, int l, double t,
                              const SeriesOptions& opts = {}, PathStats* stats = nullptr);

/// Orders 0..L at once from the block upper-bidiagonal exponential.
std::vector<SeriesTerm> vanloan_terms(const SplitHamiltonian& h, int L, double t);

/// Orders 0..L via the evaluator selected in opts (Auto prefers the block
/// oracle while L*dim stays small).
std::vector<SeriesTerm> series_terms(const SplitHamiltonian& h, int L, double t,
                                     const SeriesOptions& opts = {});

/// Truncated evolution operator sum_{l<=L} A_l(t).
CMatrix truncated_propagator(const SplitHamiltonian& h, int L, double t,
                             const SeriesOptions& opts = {});

}  // namespace pathsum
