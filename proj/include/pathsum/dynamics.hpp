// dynamics.hpp - state and density evolution by the truncated series, plus
// the consistency checks against stationary and time-dependent perturbation
// theory.
#pragma once

#include <vector>

#include "pathsum/propagator.hpp"
#include "pathsum/types.hpp"

namespace pathsum {

/// psi(t) = sum_{l<=L} A_l(t) psi0.
CVector evolve_state(const SplitHamiltonian& h, const CVector& psi0, int L, double t,
                     const SeriesOptions& opts = {});

/// rho(t) truncated at total order k+l <= L:  sum A_k(t) rho0 A_l(t)^dag.
CMatrix evolve_density(const SplitHamiltonian& h, const CMatrix& rho0, int L, double t,
                       const SeriesOptions& opts = {});

/// Exact-oracle density evolution U rho0 U^dag with U = dense_exp.
CMatrix evolve_density_exact(const SplitHamiltonian& h, const CMatrix& rho0, double t);

/// Hermiticity, unit trace, positive semidefiniteness (within tolerances).
void validate_density(const CMatrix& rho);

/// B_l(K): path sum weighted by the order-K monomial coefficient of the
/// energy chain; zero for K < l.
CMatrix bl_matrix(const SplitHamiltonian& h, int l, int K, const SeriesOptions& opts = {});

struct PTCheckReport {
    int K = 0;
    std::vector<double> per_equation;  // one residual per exact eigenpair
    double max_residual = 0.0;
};

/// Checks E_T^K a = E^K a + sum_{l<=K} B_l(K) a for every exact eigenpair
/// (E_T, a) of the full Hamiltonian.
PTCheckReport stationary_residuals(const SplitHamiltonian& h, int K,
                                   const SeriesOptions& opts = {});

struct TdptCoefficients {
    int order = 0;
    double t = 0.0;
    CVector c;  // c^{(l)}_gamma(t)
};

/// Order-l amplitude coefficients of time-dependent perturbation theory for
/// an initial basis state alpha and time-independent coupling; contract:
/// c^{(l)}_gamma(t) equals column alpha of A_l(t).
TdptCoefficients tdpt_coefficients(const SplitHamiltonian& h, int alpha, int l, double t,
                                   const SeriesOptions& opts = {});

}  // namespace pathsum
