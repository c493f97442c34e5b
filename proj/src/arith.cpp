#include "cnbound/arith.hpp"

#include <algorithm>
#include <map>

namespace cnb {

namespace {

constexpr unsigned kSmallPrimeLimit = 1 << 16;

const std::vector<unsigned>& small_primes() {
  static const std::vector<unsigned> primes = [] {
    std::vector<bool> composite(kSmallPrimeLimit + 1, false);
    std::vector<unsigned> out;
    for (unsigned i = 2; i <= kSmallPrimeLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t(i) * i; j <= kSmallPrimeLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

Int pollard_brent(const Int& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Int y = 2, x, q = 1, g = 1, ys;
    const unsigned long m = 128;
    auto f = [&](const Int& v) {
      Int r = v * v + c;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
      return r;
    };
    unsigned long r = 1;
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          Int diff = abs(x - y);
          q = q * diff % n;
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(Int(abs(x - ys)), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(const Int& n, std::map<Int, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  Int d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

Int mod_pow(const Int& base, const Int& exp, const Int& mod) {
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return r;
}

Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace

std::vector<PrimePower> factor(const Int& n_in) {
  if (n_in == 0) throw InvalidInput("factor: zero argument");
  Int n = abs(n_in);
  std::vector<PrimePower> result;
  for (unsigned p : small_primes()) {
    if (Int(p) * p > n) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        ++e;
      }
      result.push_back({Int(p), e});
    }
  }
  if (n > 1) {
    std::map<Int, unsigned> rest;
    factor_into(n, rest);
    for (auto& [p, e] : rest) result.push_back({p, e});
  }
  std::sort(result.begin(), result.end(), [](const PrimePower& a, const PrimePower& b) { return a.p < b.p; });
  return result;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

unsigned valuation(Int n, const Int& p) {
  if (n == 0) throw InvalidInput("valuation: zero argument");
  return static_cast<unsigned>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

int mobius(const Int& n) {
  if (n < 1) throw InvalidInput("mobius: argument must be positive");
  int sign = 1;
  for (const auto& pp : factor(n)) {
    if (pp.e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

Int squarefree_divisor_count(const Int& w) {
  if (w == 0) throw InvalidInput("squarefree_divisor_count: zero argument");
  Int s = 1;
  s <<= factor(w).size();
  return s;
}

bool is_squarefree(const Int& n) {
  if (n < 1) throw InvalidInput("is_squarefree: argument must be positive");
  for (const auto& pp : factor(n))
    if (pp.e > 1) return false;
  return true;
}

bool is_fundamental_discriminant(const Int& d) {
  if (d >= 0) throw InvalidInput("is_fundamental_discriminant: argument must be negative");
  const Int m4 = mod_floor(d, 4);
  if (m4 == 1) return is_squarefree(-d);
  if (m4 != 0) return false;
  const Int d0 = d / 4;
  const Int r = mod_floor(d0, 4);
  return (r == 2 || r == 3) && is_squarefree(-d0);
}

SquarefreeVerdict squarefree_by_trial_division(const Int& n_in, std::uint64_t trial_bound) {
  if (n_in < 1) throw InvalidInput("squarefree_by_trial_division: argument must be positive");
  // Once p³ exceeds the cofactor it has at most two prime factors, all > p, so it
  // is squarefree unless it is a perfect square.
  if (n_in.fits_ulong_p()) {
    std::uint64_t n = n_in.get_ui();
    auto strip = [&](std::uint64_t p) -> bool {
      if (n % p != 0) return true;
      n /= p;
      return n % p != 0;
    };
    if (!strip(2) || !strip(3)) return SquarefreeVerdict::not_squarefree;
    std::uint64_t p = 5;
    for (; p <= trial_bound; p += 6) {
      if (static_cast<unsigned __int128>(p) * p * p > n) break;
      if (!strip(p) || !strip(p + 2)) return SquarefreeVerdict::not_squarefree;
    }
    if (n == 1) return SquarefreeVerdict::squarefree;
    const Int rest(static_cast<unsigned long>(n));
    if (mpz_perfect_square_p(rest.get_mpz_t())) return SquarefreeVerdict::not_squarefree;
    if (static_cast<unsigned __int128>(p) * p * p > n) return SquarefreeVerdict::squarefree;
    return SquarefreeVerdict::probably_squarefree;
  }
  Int n = n_in;
  auto strip = [&](unsigned long p) -> bool {
    if (!mpz_divisible_ui_p(n.get_mpz_t(), p)) return true;
    mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    return !mpz_divisible_ui_p(n.get_mpz_t(), p);
  };
  if (!strip(2) || !strip(3)) return SquarefreeVerdict::not_squarefree;
  std::uint64_t p = 5;
  for (; p <= trial_bound; p += 6) {
    if (Int(p) * p * p > n) break;
    if (!strip(p) || !strip(p + 2)) return SquarefreeVerdict::not_squarefree;
  }
  if (n == 1) return SquarefreeVerdict::squarefree;
  if (mpz_perfect_square_p(n.get_mpz_t())) return SquarefreeVerdict::not_squarefree;
  if (Int(p) * p * p > n) return SquarefreeVerdict::squarefree;
  return SquarefreeVerdict::probably_squarefree;
}

int kronecker_symbol(const Int& a, const Int& n) {
  if (n == 0) throw InvalidInput("kronecker_symbol: lower argument must be nonzero");
  return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

int cubic_residue_symbol(const Int& b, const Int& p) {
  if (!is_prime(p)) throw InvalidInput("cubic_residue_symbol: modulus must be prime");
  const Int r = mod_floor(b, p);
  if (r == 0) return 0;
  if (p == 3 || mod_floor(p, 3) == 2) return 1;
  return mod_pow(r, (p - 1) / 3, p) == 1 ? 1 : -1;
}

int cubic_residue_symbol_mod9(const Int& b) {
  const Int r = mod_floor(b, 9);
  if (mod_floor(r, 3) == 0) return 0;
  return (r == 1 || r == 8) ? 1 : -1;
}

EisensteinInt operator+(const EisensteinInt& a, const EisensteinInt& b) { return {a.x + b.x, a.y + b.y}; }
EisensteinInt operator-(const EisensteinInt& a, const EisensteinInt& b) { return {a.x - b.x, a.y - b.y}; }
// ω² = -1 - ω
EisensteinInt operator*(const EisensteinInt& a, const EisensteinInt& b) {
  const Int yy = a.y * b.y;
  return {a.x * b.x - yy, a.x * b.y + a.y * b.x - yy};
}

CubicValue operator*(const CubicValue& a, const CubicValue& b) {
  if (a.zero || b.zero) return CubicValue::zero_value();
  return CubicValue::omega_power(a.k + b.k);
}

CubicValue conj(const CubicValue& v) { return v.zero ? v : CubicValue::omega_power(-v.k); }

EisensteinInt primary_associate(const EisensteinInt& pi) {
  if (mod_floor(pi.norm(), 3) == 0) throw InvalidInput("primary_associate: element divisible by 1 - ω");
  const EisensteinInt omega{0, 1};
  EisensteinInt cand = pi;
  for (int i = 0; i < 3; ++i) {
    for (int s : {1, -1}) {
      EisensteinInt c{s * cand.x, s * cand.y};
      if (mod_floor(c.x, 3) == 2 && mod_floor(c.y, 3) == 0) return c;
    }
    cand = cand * omega;
  }
  throw InvalidInput("primary_associate: no primary associate (norm must be prime to 3)");
}

EisensteinInt eisenstein_prime_above(const Int& p) {
  if (!is_prime(p) || mod_floor(p, 3) != 1) throw InvalidInput("eisenstein_prime_above: need a prime p ≡ 1 (mod 3)");
  Int bound = sqrt(Int(4 * p / 3)) + 1;
  for (Int y = 1; y <= bound; ++y) {
    // x² - xy + y² = p  =>  x = (y ± sqrt(4p - 3y²)) / 2
    const Int disc = 4 * p - 3 * y * y;
    if (disc < 0) break;
    if (!mpz_perfect_square_p(disc.get_mpz_t())) continue;
    const Int s = sqrt(disc);
    for (const Int& num : {Int(y + s), Int(y - s)}) {
      if (mpz_even_p(num.get_mpz_t())) return primary_associate({num / 2, y});
    }
  }
  throw InvalidInput("eisenstein_prime_above: no representation found");
}

namespace {

// Which kind of Eisenstein prime π is; throws for non-primes and norm 3.
enum class PrimeKind { split, inert };

PrimeKind classify_prime(const EisensteinInt& pi, Int& p) {
  const Int n = pi.norm();
  if (n == 3) throw InvalidInput("cubic_character: π has norm 3");
  if (is_prime(n)) {
    if (mod_floor(n, 3) != 1) throw InvalidInput("cubic_character: π is not prime");
    p = n;
    return PrimeKind::split;
  }
  Int r = sqrt(n);
  if (r * r == n && is_prime(r) && mod_floor(r, 3) == 2 && mod_floor(pi.x, r) == 0 && mod_floor(pi.y, r) == 0) {
    p = r;
    return PrimeKind::inert;
  }
  throw InvalidInput("cubic_character: π is not an Eisenstein prime");
}

EisensteinInt reduce_mod(const EisensteinInt& a, const Int& p) { return {mod_floor(a.x, p), mod_floor(a.y, p)}; }

}  // namespace

CubicValue cubic_character(const EisensteinInt& beta, const EisensteinInt& pi) {
  Int p;
  if (classify_prime(pi, p) == PrimeKind::split) {
    // Z[ω]/π ≅ F_p with ω ↦ r, r ≡ -x/y (mod p).
    Int yinv;
    mpz_invert(yinv.get_mpz_t(), Int(mod_floor(pi.y, p)).get_mpz_t(), p.get_mpz_t());
    const Int r = mod_floor(-pi.x * yinv, p);
    const Int b = mod_floor(beta.x + beta.y * r, p);
    if (b == 0) return CubicValue::zero_value();
    const Int e = mod_pow(b, (p - 1) / 3, p);
    if (e == 1) return CubicValue::omega_power(0);
    if (e == r) return CubicValue::omega_power(1);
    if (e == mod_floor(r * r, p)) return CubicValue::omega_power(2);
    throw std::logic_error("cubic_character: power is not a cube root of unity");
  }
  // π = unit·p with p ≡ 2 (mod 3): work in F_p[ω] = F_{p²}.
  EisensteinInt base = reduce_mod(beta, p);
  if (base.is_zero()) return CubicValue::zero_value();
  Int e = (p * p - 1) / 3;
  EisensteinInt acc{1, 0};
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) acc = reduce_mod(acc * base, p);
    base = reduce_mod(base * base, p);
    e >>= 1;
  }
  if (acc == EisensteinInt{1, 0}) return CubicValue::omega_power(0);
  if (acc == EisensteinInt{0, 1}) return CubicValue::omega_power(1);
  if (acc == EisensteinInt{p - 1, p - 1}) return CubicValue::omega_power(2);
  throw std::logic_error("cubic_character: power is not a cube root of unity");
}

unsigned omega_hat(const EisensteinInt& alpha) {
  if (alpha.is_zero()) throw InvalidInput("omega_hat: zero argument");
  unsigned count = 0;
  for (const auto& pp : factor(alpha.norm())) {
    if (mod_floor(pp.p, 3) != 1) continue;
    const EisensteinInt pi = eisenstein_prime_above(pp.p);
    for (const EisensteinInt& q : {pi, pi.conj()}) {
      const EisensteinInt t = alpha * q.conj();
      if (mod_floor(t.x, pp.p) == 0 && mod_floor(t.y, pp.p) == 0) ++count;
    }
  }
  return count;
}

}  // namespace cnb
