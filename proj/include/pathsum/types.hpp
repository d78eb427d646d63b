// types.hpp - shared aliases and defaults for the series toolkit
#pragma once

#include <complex>
#include <Eigen/Dense>

namespace pathsum {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr Complex kImagUnit{0.0, 1.0};

// Relative tolerance below which two energies count as coincident.
inline constexpr double kDefaultDegeneracyTol = 1e-9;

// A-priori cap on dim^(l-1) for the path-sum evaluator.
inline constexpr double kDefaultPathBudget = 1e7;

// Block-oracle evaluation is preferred while L*dim stays below this.
inline constexpr int kDefaultBlockOracleLimit = 2000;

/// Frobenius-norm difference of a and b relative to their larger norm.
inline double rel_diff(const CMatrix& a, const CMatrix& b) {
    const double scale = std::max(a.norm(), b.norm());
    if (scale == 0.0) return 0.0;
    return (a - b).norm() / scale;
}

}  // namespace pathsum
