#pragma once

#include <gmpxx.h>

#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cnb {

/// Arbitrary-precision integer.
using Int = mpz_class;
/// Exact rational, always canonicalized.
using Rat = mpq_class;
/// 50 decimal digits (~166-bit mantissa) for all height and bound arithmetic.
using Real = boost::multiprecision::mpfr_float_50;

/// Raised when an operation's precondition on its inputs is violated.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a well-posed computation cannot finish within a configured cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A real value together with a bound on its distance to the true value.
struct Bounded {
  Real value = 0;
  Real error = 0;

  Real lower() const { return value - error; }
  Real upper() const { return value + error; }
};

inline Bounded operator+(const Bounded& x, const Bounded& y) { return {x.value + y.value, x.error + y.error}; }
inline Bounded operator-(const Bounded& x, const Bounded& y) { return {x.value - y.value, x.error + y.error}; }
inline Bounded operator*(const Real& s, const Bounded& x) { return {s * x.value, abs(s) * x.error}; }

/// Natural logarithm of |n| for n != 0, correct to the working precision of Real.
Real log_abs(const Int& n);
/// Real from an exact integer/rational.
Real to_real(const Int& n);
Real to_real(const Rat& q);

/// Decimal "value±error" rendering with `digits` significant digits.
std::string format_bounded(const Bounded& b, int digits = 10);
std::string format_real(const Real& x, int digits = 10);

inline bool fits_int64(const Int& n) { return n.fits_slong_p(); }

}  // namespace cnb
