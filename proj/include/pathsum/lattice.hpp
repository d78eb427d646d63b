// lattice.hpp - periodic 1D grid with the kinetic term as the solvable part
// and the potential entering through its Fourier matrix elements.
#pragma once

#include <vector>

#include "pathsum/propagator.hpp"
#include "pathsum/types.hpp"

namespace pathsum {

struct LatticeSystem {
    int n = 0;               // grid points, even, >= 4
    double box_length = 0.0;
    double mass = 0.0;
    RVector potential;       // V(x_j) at x_j = j * box_length / n

    std::vector<int> modes;  // momentum indices -n/2 .. n/2-1, ascending
    RVector momenta;         // k = 2 pi mode / box_length
    RVector kinetic;         // k^2 / (2 m)

    static LatticeSystem make(int n, double box_length, double mass, RVector potential);
};

/// Split Hamiltonian in the plane-wave basis: e = kinetic energies (mode
/// order), h1(j,j') = (1/N) sum_x V(x) e^{-i (k_j - k_j') x}.
SplitHamiltonian build_momentum_split(const LatticeSystem& sys);

/// Analysis matrix F with F(j, m) = e^{-i k_j x_m} / sqrt(N); unitary, maps
/// position samples to momentum amplitudes.
CMatrix momentum_transform(const LatticeSystem& sys);

/// Transform to momentum space, evolve by the truncated series, transform
/// back. Position samples in, position samples out.
CVector evolve_wavefunction(const LatticeSystem& sys, const CVector& psi0, int L, double t,
                            const SeriesOptions& opts = {});

/// <x| U_L(t) |x'> on the grid (both bases carry the 1/sqrt(N) convention).
CMatrix position_propagator(const LatticeSystem& sys, int L, double t,
                            const SeriesOptions& opts = {});

}  // namespace pathsum
