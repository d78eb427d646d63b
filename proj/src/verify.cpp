// verify.cpp - the invariant suites behind the `verify` command.
//
// Each suite is a reduced-scale, seeded version of the corresponding
// acceptance criterion; thresholds are the module contracts.

#include "pathsum/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "pathsum/binomial.hpp"
#include "pathsum/errors.hpp"
#include "pathsum/coeffs.hpp"
#include "pathsum/divided_exp.hpp"
#include "pathsum/dynamics.hpp"
#include "pathsum/expm.hpp"
#include "pathsum/lattice.hpp"
#include "pathsum/propagator.hpp"
#include "pathsum/rational.hpp"

namespace pathsum {
namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

CMatrix random_complex(Rng& rng, int d, double scale) {
    CMatrix m(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
            m(r, c) = scale * Complex{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
    return m;
}

CMatrix random_hermitian(Rng& rng, int d, double scale) {
    const CMatrix m = random_complex(rng, d, scale);
    return 0.5 * (m + m.adjoint());
}

SplitHamiltonian random_split(Rng& rng, int d, double h1_scale) {
    RVector e(d);
    for (int g = 0; g < d; ++g) e(g) = uniform(rng, -1.0, 1.0);
    return SplitHamiltonian::make(e, random_hermitian(rng, d, h1_scale));
}

std::vector<Rational> random_rational_energies(Rng& rng, int count) {
    std::vector<Rational> e;
    while (static_cast<int>(e.size()) < count) {
        const long num = std::uniform_int_distribution<long>(-40, 40)(rng);
        const long den = std::uniform_int_distribution<long>(1, 8)(rng);
        Rational q = make_rational(num, den);
        bool dup = false;
        for (const Rational& x : e) dup = dup || x == q;
        if (!dup) e.push_back(q);
    }
    return e;
}

std::vector<double> to_doubles(const std::vector<Rational>& e) {
    std::vector<double> d;
    d.reserve(e.size());
    for (const Rational& q : e) d.push_back(to_double(q));
    return d;
}

struct Recorder {
    SuiteResult res;

    explicit Recorder(std::string name) { res.name = std::move(name); }
    void check(bool ok, double residual) {
        ++res.cases;
        if (!ok) ++res.failures;
        res.worst_residual = std::max(res.worst_residual, residual);
    }
};

SuiteResult suite_coeff_identity(Rng& rng) {
    Recorder rec("coeff-identity");
    for (int trial = 0; trial < 100; ++trial) {
        const int l = std::uniform_int_distribution<int>(1, 6)(rng);
        const std::vector<Rational> e = random_rational_energies(rng, l + 1);
        const std::vector<double> ed = to_doubles(e);
        for (int k = 0; k <= l; ++k) {
            const Rational expected = k == l ? 1 : 0;
            const Rational got = identity_sum(e, k);
            // float path, scaled by the conditioning of the alternating sum
            double cond = 1.0;
            const std::vector<double> d = denominators(ed);
            for (std::size_t i = 0; i < ed.size(); ++i)
                cond += std::abs(std::pow(ed[i], k) / d[i]);
            const double fres =
                std::abs(identity_sum(ed, k) - (k == l ? 1.0 : 0.0)) / cond;
            rec.check(got == expected && fres <= 1e-9, fres);
        }
    }
    return rec.res;
}

SuiteResult suite_coeff_triangle(Rng& rng) {
    Recorder rec("coeff-triangle");
    for (int trial = 0; trial < 12; ++trial) {
        const int l = std::uniform_int_distribution<int>(1, 4)(rng);
        const std::vector<Rational> e = random_rational_energies(rng, l + 1);
        const std::vector<double> ed = to_doubles(e);
        for (int n = l; n <= 8; ++n) {
            const Rational a = coeff_enumerated(e, n);
            const Rational b = coeff_recurrence(e, n);
            const Rational c = coeff_closed(e, n);
            const double fa = coeff_enumerated(ed, n);
            const double fc = coeff_closed(ed, n);
            const double frel = std::abs(fa - fc) / std::max(1.0, std::abs(fa));
            rec.check(a == b && b == c, frel);
        }
        // difference relations
        for (int k = std::max(2, l); k <= 8; ++k) {
            const Rational lhs = coeff_closed(e, k) - e.back() * coeff_closed(e, k - 1);
            Rational rhs;
            if (l == 1) {
                rhs = pow_int(e[0], k - 1);
            } else {
                std::vector<Rational> head(e.begin(), e.end() - 1);
                rhs = coeff_closed(head, k - 1);
            }
            rec.check(lhs == rhs, 0.0);
        }
    }
    return rec.res;
}

SuiteResult suite_binomial(Rng& rng) {
    Recorder rec("binomial-expansion");
    for (int trial = 0; trial < 20; ++trial) {
        const int d = std::uniform_int_distribution<int>(2, 4)(rng);
        const int n = std::uniform_int_distribution<int>(1, 6)(rng);
        const CMatrix a = random_complex(rng, d, 1.0);
        const CMatrix b = random_complex(rng, d, 1.0);
        const CMatrix f = expand_f(a, b, n);
        const CMatrix reference = matrix_power(a + b, n) - matrix_power(a, n);
        const double rel = rel_diff(f, reference);
        const double rec_rel = rel_diff(f, expand_f_rec(a, b, n));
        const double sym_rel = rel_diff(f, expand_f(a, b, n, /*symmetric_form=*/true));
        rec.check(rel <= 1e-10 && rec_rel <= 1e-12 && sym_rel <= 1e-12,
                  std::max({rel, rec_rel, sym_rel}));
    }
    return rec.res;
}

SuiteResult suite_divided_exp(Rng& rng) {
    Recorder rec("divided-exp");
    for (int trial = 0; trial < 30; ++trial) {
        const int m = std::uniform_int_distribution<int>(2, 5)(rng);
        std::vector<double> e;
        for (int i = 0; i < m; ++i) e.push_back(uniform(rng, -2.0, 2.0));
        std::sort(e.begin(), e.end());
        bool separated = true;
        for (int i = 0; i + 1 < m; ++i) separated = separated && e[i + 1] - e[i] > 0.05;
        if (!separated) continue;
        const double t = uniform(rng, 0.1, 5.0);

        const Complex direct = phase_factor(e, t);
        const Complex conf = phase_factor_confluent(cluster_energies(e, 1e-9), t);
        const double cross = std::abs(direct - conf);

        const double bound = std::pow(std::abs(t), m - 1) / std::tgamma(m);
        const bool bounded = std::abs(direct) <= bound * (1.0 + 1e-9) + 1e-12;
        rec.check(cross <= 1e-12 * std::max(1.0, std::abs(direct)) && bounded, cross);
    }
    // continuity across the clustering threshold for a two-level gap
    for (double delta : {1e-10, 3e-10, 1e-9, 3e-9, 1e-8}) {
        const std::vector<double> e = {0.4, 0.4 + delta};
        for (double t : {0.5, 3.0, 10.0}) {
            Complex lhs;
            try {
                lhs = phase_factor(e, t);
            } catch (const degenerate_energies_error&) {
                lhs = phase_factor_confluent(cluster_energies(e, kDefaultDegeneracyTol), t);
            }
            const Complex rhs =
                phase_factor_confluent(cluster_energies(e, kDefaultDegeneracyTol), t);
            const double diff = std::abs(lhs - rhs);
            rec.check(diff <= 1e-7, diff);
        }
    }
    return rec.res;
}

SuiteResult suite_oracle_triangle(Rng& rng, double oracle_tol) {
    Recorder rec("oracle-triangle");
    std::vector<SplitHamiltonian> systems;
    systems.push_back(random_split(rng, 2, 0.5));
    systems.push_back(random_split(rng, 3, 0.5));
    systems.push_back(random_split(rng, 5, 0.3));
    {
        RVector e(4);
        e << 0.5, 0.5, 1.3, 2.1;  // exact degeneracy
        systems.push_back(SplitHamiltonian::make(e, random_hermitian(rng, 4, 0.4)));
    }
    for (const SplitHamiltonian& h : systems) {
        for (double t : {0.1, 1.0}) {
            const std::vector<SeriesTerm> oracle = vanloan_terms(h, 3, t);
            for (int l = 0; l <= 3; ++l) {
                const SeriesTerm direct = series_term(h, l, t);
                const double rel = rel_diff(direct.matrix, oracle[l].matrix);
                rec.check(rel <= oracle_tol, rel);
            }
        }
    }
    return rec.res;
}

SuiteResult suite_convergence(Rng& rng) {
    Recorder rec("series-convergence");
    for (int trial = 0; trial < 5; ++trial) {
        SplitHamiltonian h = random_split(rng, 4, 0.5);
        const double t = uniform(rng, 0.5, 1.5);
        // keep ||H1|| t around 0.3 so the L=8 tail sits well under 1e-8
        h = SplitHamiltonian::make(h.e, h.h1 * (0.3 / (h.h1.norm() * t)));
        const CMatrix exact = dense_exp(h.total(), t);
        const double h1n = h.h1.norm();
        const double h0n = h.h0().norm();
        const std::vector<SeriesTerm> terms = vanloan_terms(h, 8, t);
        CMatrix acc = CMatrix::Zero(h.dim(), h.dim());
        double final_res = 0.0;
        bool ok = true;
        for (int L = 0; L <= 8; ++L) {
            acc += terms[L].matrix;
            const double res = (exact - acc).norm();
            double bound = std::exp((h0n + h1n) * t) * 10.0;
            for (int k = 1; k <= L + 1; ++k) bound *= h1n * t / k;
            ok = ok && res <= bound;
            final_res = res;
        }
        ok = ok && final_res <= 1e-8;
        rec.check(ok, final_res);
    }
    return rec.res;
}

SuiteResult suite_stationary(Rng& rng) {
    Recorder rec("stationary-pt");
    for (int trial = 0; trial < 10; ++trial) {
        const SplitHamiltonian h = random_split(rng, 4, 0.3);
        for (int k = 1; k <= 3; ++k) {
            const PTCheckReport report = stationary_residuals(h, k);
            rec.check(report.max_residual <= 1e-8, report.max_residual);
        }
    }
    return rec.res;
}

SuiteResult suite_tdpt(Rng& rng) {
    Recorder rec("tdpt-equivalence");
    for (int trial = 0; trial < 5; ++trial) {
        const int d = std::uniform_int_distribution<int>(2, 4)(rng);
        const SplitHamiltonian h = random_split(rng, d, 0.5);
        const double t = uniform(rng, 0.2, 3.0);
        const int alpha = std::uniform_int_distribution<int>(0, d - 1)(rng);
        for (int l = 0; l <= 3; ++l) {
            const TdptCoefficients td = tdpt_coefficients(h, alpha, l, t);
            const SeriesTerm term = series_term(h, l, t);
            const double diff = (td.c - term.matrix.col(alpha)).cwiseAbs().maxCoeff();
            rec.check(diff <= 1e-9, diff);
        }
    }
    return rec.res;
}

SuiteResult suite_lattice() {
    Recorder rec("lattice-evolution");
    const int n = 16;
    const double box = 1.0;
    // cosine potential, one harmonic
    RVector pot(n);
    const double v = 0.05;
    for (int m = 0; m < n; ++m) pot(m) = 2.0 * v * std::cos(2.0 * std::numbers::pi * m / n);
    const LatticeSystem sys = LatticeSystem::make(n, box, 1.0, pot);
    const SplitHamiltonian split = build_momentum_split(sys);
    CVector psi0(n);
    for (int m = 0; m < n; ++m) {
        const double x = box * m / n;
        const double dx = x - 0.5 * box;
        psi0(m) = std::exp(Complex(-dx * dx / (2.0 * 0.02), 0.0));
    }
    psi0 /= psi0.norm();
    const double t = 4.0;  // v*t = 0.2
    const CVector series = evolve_wavefunction(sys, psi0, 4, t);
    const CMatrix f = momentum_transform(sys);
    const CVector exact = f.adjoint() * (dense_exp(split.total(), t) * (f * psi0));
    const double diff = (series - exact).norm();
    rec.check(diff <= 1e-6, diff);

    // free case is exact at any truncation
    RVector zero = RVector::Zero(n);
    const LatticeSystem free_sys = LatticeSystem::make(n, box, 1.0, zero);
    CVector plane(n);
    for (int m = 0; m < n; ++m)
        plane(m) = std::exp(Complex(0.0, free_sys.momenta(n / 2 + 1) * box * m / n)) /
                   std::sqrt(double(n));
    const CVector evolved = evolve_wavefunction(free_sys, plane, 0, 2.5);
    const CVector expected =
        std::exp(Complex(0.0, -free_sys.kinetic(n / 2 + 1) * 2.5)) * plane;
    const double fdiff = (evolved - expected).norm();
    rec.check(fdiff <= 1e-12, fdiff);
    return rec.res;
}

SuiteResult suite_degeneracy_continuity(double tol) {
    Recorder rec("degeneracy-continuity");
    const double scale = 1.0;  // energies below 1, so threshold = tol * 1
    CMatrix h1(2, 2);
    h1 << Complex{0.0, 0.0}, Complex{0.7, 0.1}, Complex{0.7, -0.1}, Complex{0.0, 0.0};
    CVector psi0(2);
    psi0 << Complex{1.0, 0.0}, Complex{0.0, 0.0};
    for (double t : {0.5, 1.2, 2.0}) {
        for (double base : {0.3, -0.6}) {
            const double threshold = tol * scale;
            RVector below(2), above(2);
            below << base, base + 0.999 * threshold;
            above << base, base + 1.001 * threshold;
            SeriesOptions opts;
            opts.cluster_tol = tol;
            opts.evaluator = Evaluator::Paths;
            const CVector pb = evolve_state(SplitHamiltonian::make(below, h1), psi0, 8, t, opts);
            const CVector pa = evolve_state(SplitHamiltonian::make(above, h1), psi0, 8, t, opts);
            const double jump = (pb - pa).cwiseAbs().maxCoeff();
            rec.check(jump <= 1e-7, jump);
        }
    }
    return rec.res;
}

SuiteResult suite_density(Rng& rng) {
    Recorder rec("density-evolution");
    RVector e(2);
    e << 0.0, 1.0;
    CMatrix h1(2, 2);
    h1 << Complex{0.0, 0.0}, Complex{0.4, 0.0}, Complex{0.4, 0.0}, Complex{0.0, 0.0};
    const SplitHamiltonian h = SplitHamiltonian::make(e, h1);

    CMatrix rho0 = random_hermitian(rng, 2, 0.5);
    rho0 = rho0 * rho0.adjoint();  // psd
    rho0 /= rho0.trace().real();

    const double t = 0.7;
    const CMatrix exact = evolve_density_exact(h, rho0, t);
    const double trace_dev = std::abs(exact.trace() - Complex{1.0, 0.0});
    const double herm_dev = (exact - exact.adjoint()).norm();
    rec.check(trace_dev <= 1e-11 && herm_dev <= 1e-11, std::max(trace_dev, herm_dev));

    double prev = 1.0;
    bool monotone = true;
    for (int L = 1; L <= 10; ++L) {
        const CMatrix rho = evolve_density(h, rho0, L, t);
        const double dev = std::abs(rho.trace() - Complex{1.0, 0.0});
        if (L > 1 && prev >= 1e-12) monotone = monotone && dev <= prev * (1.0 + 1e-9) + 1e-14;
        prev = dev;
    }
    rec.check(monotone && prev <= 1e-12, prev);
    return rec.res;
}

}  // namespace

VerifyReport run_verify(std::uint64_t seed, double degeneracy_tol, double oracle_tol) {
    VerifyReport report;
    Rng rng(seed);
    report.suites.push_back(suite_coeff_identity(rng));
    report.suites.push_back(suite_coeff_triangle(rng));
    report.suites.push_back(suite_binomial(rng));
    report.suites.push_back(suite_divided_exp(rng));
    report.suites.push_back(suite_oracle_triangle(rng, oracle_tol));
    report.suites.push_back(suite_convergence(rng));
    report.suites.push_back(suite_stationary(rng));
    report.suites.push_back(suite_tdpt(rng));
    report.suites.push_back(suite_lattice());
    report.suites.push_back(suite_degeneracy_continuity(degeneracy_tol));
    report.suites.push_back(suite_density(rng));
    return report;
}

}  // namespace pathsum
