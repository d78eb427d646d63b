// rational.hpp - exact scalar used by the identity and equivalence checks
#pragma once

#include <gmpxx.h>

namespace pathsum {

using Rational = mpq_class;

inline Rational make_rational(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace pathsum
