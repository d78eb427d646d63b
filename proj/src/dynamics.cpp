// dynamics.cpp - truncated evolution and perturbation-theory cross-checks

#include "pathsum/dynamics.hpp"

#include <cmath>
#include <string>

#include "pathsum/coeffs.hpp"
#include "pathsum/divided_exp.hpp"
#include "pathsum/errors.hpp"
#include "pathsum/expm.hpp"

namespace pathsum {

CVector evolve_state(const SplitHamiltonian& h, const CVector& psi0, int L, double t,
                     const SeriesOptions& opts) {
    if (psi0.size() != h.dim())
        throw validation_error("state dimension " + std::to_string(psi0.size()) +
                               " does not match system dimension " + std::to_string(h.dim()));
    CVector psi = CVector::Zero(h.dim());
    for (const SeriesTerm& term : series_terms(h, L, t, opts)) psi += term.matrix * psi0;
    return psi;
}

CMatrix evolve_density(const SplitHamiltonian& h, const CMatrix& rho0, int L, double t,
                       const SeriesOptions& opts) {
    if (rho0.rows() != h.dim() || rho0.cols() != h.dim())
        throw validation_error("density dimension does not match system dimension");
    const std::vector<SeriesTerm> terms = series_terms(h, L, t, opts);
    CMatrix rho = CMatrix::Zero(h.dim(), h.dim());
    for (int k = 0; k <= L; ++k)
        for (int l = 0; k + l <= L; ++l)
            rho += terms[k].matrix * rho0 * terms[l].matrix.adjoint();
    return rho;
}

CMatrix evolve_density_exact(const SplitHamiltonian& h, const CMatrix& rho0, double t) {
    if (rho0.rows() != h.dim() || rho0.cols() != h.dim())
        throw validation_error("density dimension does not match system dimension");
    const CMatrix u = dense_exp(h.total(), t);
    return u * rho0 * u.adjoint();
}

void validate_density(const CMatrix& rho) {
    if (rho.rows() != rho.cols()) throw validation_error("density must be square");
    const double scale = std::max(1.0, rho.norm());
    if ((rho - rho.adjoint()).norm() > 1e-12 * scale)
        throw validation_error("density is not Hermitian");
    if (std::abs(rho.trace() - Complex{1.0, 0.0}) > 1e-12)
        throw validation_error("density trace differs from 1");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw validation_error("density has a negative eigenvalue");
}

CMatrix bl_matrix(const SplitHamiltonian& h, int l, int K, const SeriesOptions& opts) {
    if (l < 1) throw validation_error("B_l is defined for l >= 1");
    if (K < 0) throw validation_error("derivative order K must be >= 0");
    if (K < l) return CMatrix::Zero(h.dim(), h.dim());
    const double tol = opts.cluster_tol;
    auto weight = [K, tol](const std::vector<double>& pe) {
        return Complex{path_coeff(pe, K, tol), 0.0};
    };
    return path_weighted_sum(h, l, weight, opts);
}

PTCheckReport stationary_residuals(const SplitHamiltonian& h, int K,
                                   const SeriesOptions& opts) {
    if (K < 1) throw validation_error("stationary check needs K >= 1");
    const int d = h.dim();

    std::vector<CMatrix> bl;
    bl.reserve(K);
    for (int l = 1; l <= K; ++l) bl.push_back(bl_matrix(h, l, K, opts));

    Eigen::SelfAdjointEigenSolver<CMatrix> es(h.total());
    if (es.info() != Eigen::Success)
        throw validation_error("eigendecomposition of the full Hamiltonian failed");

    PTCheckReport report;
    report.K = K;
    report.per_equation.reserve(d);
    for (int p = 0; p < d; ++p) {
        const double et = es.eigenvalues()(p);
        const CVector a = es.eigenvectors().col(p);
        CVector r = std::pow(et, K) * a;
        for (int g = 0; g < d; ++g) r(g) -= std::pow(h.e(g), K) * a(g);
        for (const CMatrix& b : bl) r -= b * a;
        const double res = r.cwiseAbs().maxCoeff();
        report.per_equation.push_back(res);
        report.max_residual = std::max(report.max_residual, res);
    }
    return report;
}

TdptCoefficients tdpt_coefficients(const SplitHamiltonian& h, int alpha, int l, double t,
                                   const SeriesOptions& opts) {
    const int d = h.dim();
    if (alpha < 0 || alpha >= d) throw validation_error("initial basis index out of range");
    if (l < 0) throw validation_error("order must be >= 0");

    TdptCoefficients out;
    out.order = l;
    out.t = t;
    out.c = CVector::Zero(d);

    if (l == 0) {
        out.c(alpha) = std::exp(Complex(0.0, -h.e(alpha) * t));
        return out;
    }

    // Walk chains backwards from the fixed final index alpha: positions
    // l+1, l, ..., 1; a completed chain deposits into c(gamma_1).
    std::vector<double> pe(l + 1);
    pe[l] = h.e(alpha);
    const double tol = opts.cluster_tol;
    auto walk = [&](auto&& self, int pos, int next, Complex amp) -> void {
        for (int g = 0; g < d; ++g) {
            const Complex v = h.h1(g, next);
            if (v == Complex{0.0, 0.0}) continue;
            pe[pos - 1] = h.e(g);
            const Complex amp2 = v * amp;
            if (pos == 1)
                out.c(g) += amp2 * path_phase(pe, t, tol);
            else
                self(self, pos - 1, g, amp2);
        }
    };
    walk(walk, l, alpha, Complex{1.0, 0.0});
    return out;
}

}  // namespace pathsum
