// lattice.cpp - plane-wave split of a periodic 1D Hamiltonian

#include "pathsum/lattice.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pathsum/errors.hpp"

namespace pathsum {
namespace {

// e^{-2 pi i r / n} with r reduced mod n so the angle stays small
Complex unit_root(long r, int n) {
    long rr = r % n;
    if (rr < 0) rr += n;
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(rr) / n;
    return Complex{std::cos(angle), std::sin(angle)};
}

}  // namespace

LatticeSystem LatticeSystem::make(int n, double box_length, double mass, RVector potential) {
    if (n < 4 || n % 2 != 0)
        throw validation_error("grid size must be even and >= 4, got " + std::to_string(n));
    if (!(box_length > 0.0)) throw validation_error("box length must be > 0");
    if (!(mass > 0.0)) throw validation_error("mass must be > 0");
    if (potential.size() != n)
        throw validation_error("potential needs " + std::to_string(n) + " samples, got " +
                               std::to_string(potential.size()));
    if (!potential.allFinite()) throw validation_error("potential must be finite");

    LatticeSystem sys;
    sys.n = n;
    sys.box_length = box_length;
    sys.mass = mass;
    sys.potential = std::move(potential);
    sys.modes.reserve(n);
    sys.momenta.resize(n);
    sys.kinetic.resize(n);
    for (int i = 0; i < n; ++i) {
        const int mode = i - n / 2;
        sys.modes.push_back(mode);
        sys.momenta(i) = 2.0 * std::numbers::pi * mode / box_length;
        sys.kinetic(i) = sys.momenta(i) * sys.momenta(i) / (2.0 * mass);
    }
    return sys;
}

SplitHamiltonian build_momentum_split(const LatticeSystem& sys) {
    const int n = sys.n;
    CMatrix h1(n, n);
    for (int j = 0; j < n; ++j) {
        for (int jp = 0; jp < n; ++jp) {
            const long dmode = sys.modes[j] - sys.modes[jp];
            Complex acc{0.0, 0.0};
            for (int m = 0; m < n; ++m) acc += sys.potential(m) * unit_root(dmode * m, n);
            h1(j, jp) = acc / static_cast<double>(n);
        }
    }
    return SplitHamiltonian::make(sys.kinetic, std::move(h1));
}

CMatrix momentum_transform(const LatticeSystem& sys) {
    const int n = sys.n;
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    CMatrix f(n, n);
    for (int j = 0; j < n; ++j)
        for (int m = 0; m < n; ++m)
            f(j, m) = scale * unit_root(static_cast<long>(sys.modes[j]) * m, n);
    return f;
}

CVector evolve_wavefunction(const LatticeSystem& sys, const CVector& psi0, int L, double t,
                            const SeriesOptions& opts) {
    if (psi0.size() != sys.n)
        throw validation_error("wavefunction needs " + std::to_string(sys.n) + " samples");
    const CMatrix f = momentum_transform(sys);
    const SplitHamiltonian split = build_momentum_split(sys);
    const CVector psik0 = f * psi0;
    CVector psik = CVector::Zero(sys.n);
    for (const SeriesTerm& term : series_terms(split, L, t, opts)) psik += term.matrix * psik0;
    return f.adjoint() * psik;
}

CMatrix position_propagator(const LatticeSystem& sys, int L, double t,
                            const SeriesOptions& opts) {
    const CMatrix f = momentum_transform(sys);
    const SplitHamiltonian split = build_momentum_split(sys);
    const CMatrix u = truncated_propagator(split, L, t, opts);
    return f.adjoint() * u * f;
}

}  // namespace pathsum
