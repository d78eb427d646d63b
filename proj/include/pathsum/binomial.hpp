// binomial.hpp - the two-part split (A+B)^n = A^n + f^n(A,B) on finite
// matrices, enumerated directly and by recurrence. Verification-scale only.
#pragma once

#include "pathsum/types.hpp"

namespace pathsum {

struct BinomialLimits {
    int max_power = 12;
    int max_dim = 8;
};

/// A^n by repeated multiplication, n >= 0.
CMatrix matrix_power(const CMatrix& a, int n);

/// f^n(A,B): every term carries between one and n factors of B. The
/// symmetric form moves the free power of A between the last two B's;
/// both forms agree term set for term set.
CMatrix expand_f(const CMatrix& a, const CMatrix& b, int n, bool symmetric_form = false,
                 const BinomialLimits& limits = {});

/// Same result built from f^{m+1} = B A^m + (A+B) f^m, f^1 = B.
CMatrix expand_f_rec(const CMatrix& a, const CMatrix& b, int n,
                     const BinomialLimits& limits = {});

}  // namespace pathsum
