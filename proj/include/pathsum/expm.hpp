// expm.hpp - dense matrix exponential, ground-truth oracle for the series
#pragma once

#include "pathsum/types.hpp"

namespace pathsum {

/// exp(A) for a general complex square matrix, scaling-and-squaring with a
/// degree-13 Pade core (lower degrees for small norms).
CMatrix expm(const CMatrix& a);

/// exp(-i * h * t); unitary to machine precision when h is Hermitian.
CMatrix dense_exp(const CMatrix& h, double t);

}  // namespace pathsum
