#include "cnbound/types.hpp"

#include <mpfr.h>

#include <iomanip>
#include <sstream>

namespace cnb {

namespace {
constexpr mpfr_prec_t kBits = 192;
}

Real log_abs(const Int& n) {
  if (n == 0) throw InvalidInput("log_abs: zero argument");
  mpfr_t t;
  mpfr_init2(t, kBits);
  mpfr_set_z(t, n.get_mpz_t(), MPFR_RNDN);
  mpfr_abs(t, t, MPFR_RNDN);
  mpfr_log(t, t, MPFR_RNDN);
  Real r(t);
  mpfr_clear(t);
  return r;
}

Real to_real(const Int& n) {
  mpfr_t t;
  mpfr_init2(t, kBits);
  mpfr_set_z(t, n.get_mpz_t(), MPFR_RNDN);
  Real r(t);
  mpfr_clear(t);
  return r;
}

Real to_real(const Rat& q) { return to_real(q.get_num()) / to_real(q.get_den()); }

std::string format_real(const Real& x, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

std::string format_bounded(const Bounded& b, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << b.value << "±" << std::setprecision(3) << b.error;
  return os.str();
}

}  // namespace cnb
