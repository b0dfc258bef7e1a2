#pragma once

#include <boost/multiprecision/float128.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace uvarov {

/// 113-bit binary floating point, used by the brute-force oracle and the
/// monomial forms of the simplex basis where the monomial Gram matrices are
/// far too ill-conditioned for double.
using HighPrecision = boost::multiprecision::float128;

/// Exact rational arithmetic for regression baselines.
using Rational = boost::multiprecision::mpq_rational;

}  // namespace uvarov
