#pragma once

#include "cnbound/types.hpp"

#include <utility>
#include <vector>

namespace cnb {

// ---------------------------------------------------------------------------
// Factorization and multiplicative functions
// ---------------------------------------------------------------------------

/// One prime-power factor p^e.
struct PrimePower {
  Int p;
  unsigned e = 0;
};

/// Prime factorization of |n| (n != 0) in increasing prime order.
/// Trial division by small primes, then Pollard-Brent on the cofactor.
std::vector<PrimePower> factor(const Int& n);

bool is_prime(const Int& n);
/// Exponent of the prime p in n; n != 0.
unsigned valuation(Int n, const Int& p);

/// Möbius function; n >= 1.
int mobius(const Int& n);
/// S(w) = 2^{ω(|w|)}, the number of positive squarefree divisors; w != 0.
Int squarefree_divisor_count(const Int& w);
/// n >= 1 has no repeated prime factor.
bool is_squarefree(const Int& n);
/// d < 0 is the discriminant of an imaginary quadratic field.
bool is_fundamental_discriminant(const Int& d);

/// Outcome of a squarefree test that stops trial division at a fixed bound.
enum class SquarefreeVerdict { squarefree, not_squarefree, probably_squarefree };

/// Trial division up to min(trial_bound, cbrt of the cofactor), then a
/// perfect-square test. Exact whenever division stopped at the cube root;
/// otherwise a non-square cofactor is reported as `probably_squarefree`.
SquarefreeVerdict squarefree_by_trial_division(const Int& n, std::uint64_t trial_bound = 1000000);

// ---------------------------------------------------------------------------
// Quadratic and cubic symbols
// ---------------------------------------------------------------------------

/// Kronecker symbol (a|n) for n != 0, standard completion at n < 0 and n even.
int kronecker_symbol(const Int& a, const Int& n);

/// (b/p)_3: 0 if p | b, +1 if b is a cube mod p, -1 otherwise. p prime.
int cubic_residue_symbol(const Int& b, const Int& p);

/// (b/9)_3 on (Z/9Z): 0 if 3 | b, +1 if b is a cube mod 9 (b ≡ ±1), -1 otherwise.
int cubic_residue_symbol_mod9(const Int& b);

/// x + yω with ω = (-1 + √-3)/2.
struct EisensteinInt {
  Int x;
  Int y;

  Int norm() const { return x * x - x * y + y * y; }
  EisensteinInt conj() const { return {x - y, -y}; }
  bool is_zero() const { return x == 0 && y == 0; }

  friend bool operator==(const EisensteinInt&, const EisensteinInt&) = default;
};

EisensteinInt operator+(const EisensteinInt& a, const EisensteinInt& b);
EisensteinInt operator-(const EisensteinInt& a, const EisensteinInt& b);
EisensteinInt operator*(const EisensteinInt& a, const EisensteinInt& b);

/// Value of the cubic character: zero, or ω^k with k in {0, 1, 2}.
struct CubicValue {
  bool zero = false;
  int k = 0;

  static CubicValue zero_value() { return {true, 0}; }
  static CubicValue omega_power(int k) { return {false, ((k % 3) + 3) % 3}; }
  bool is_one() const { return !zero && k == 0; }

  friend bool operator==(const CubicValue&, const CubicValue&) = default;
};

CubicValue operator*(const CubicValue& a, const CubicValue& b);
CubicValue conj(const CubicValue& v);

/// The associate of π with x ≡ 2, y ≡ 0 (mod 3). π must not divide 3.
EisensteinInt primary_associate(const EisensteinInt& pi);

/// Primary Eisenstein prime π with N(π) = p for a rational prime p ≡ 1 (mod 3),
/// found by bounded search over |x|, |y| <= sqrt(4p/3).
EisensteinInt eisenstein_prime_above(const Int& p);

/// χ_π(β): β^{(N(π)-1)/3} ≡ ω^k (mod π), or 0 when π | β.
/// π must be an Eisenstein prime of norm != 3 (norm a prime p ≡ 1 mod 3, or an
/// associate of a rational prime p ≡ 2 mod 3).
CubicValue cubic_character(const EisensteinInt& beta, const EisensteinInt& pi);

/// Number of distinct primary prime factors π ≡ 1 (mod 3) of α in Z[ω], i.e. the
/// split primes counted with both conjugates when both divide. Helper only.
unsigned omega_hat(const EisensteinInt& alpha);

}  // namespace cnb
