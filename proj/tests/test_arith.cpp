#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cnbound/arith.hpp"

#include <random>

using namespace cnb;

namespace {

int legendre_brute(long a, long p) {
  a = ((a % p) + p) % p;
  if (a == 0) return 0;
  for (long x = 1; x < p; ++x)
    if (x * x % p == a) return 1;
  return -1;
}

int cubic_brute(long b, long p) {
  b = ((b % p) + p) % p;
  if (b == 0) return 0;
  for (long x = 1; x < p; ++x)
    if (x * x % p * x % p == b) return 1;
  return -1;
}

Int product(const std::vector<PrimePower>& f) {
  Int n = 1;
  for (const auto& pp : f)
    for (unsigned i = 0; i < pp.e; ++i) n *= pp.p;
  return n;
}

}  // namespace

TEST_CASE("kronecker symbol small values") {
  CHECK(kronecker_symbol(1, 7) == 1);
  CHECK(kronecker_symbol(1, 101) == 1);
  CHECK(kronecker_symbol(2, 7) == 1);
  CHECK(kronecker_symbol(-3, 7) == 1);
  CHECK(kronecker_symbol(3, 7) == -1);
  CHECK(kronecker_symbol(14, 7) == 0);
}

TEST_CASE("kronecker symbol agrees with squares mod odd primes") {
  for (long p = 3; p < 120; p += 2) {
    if (!is_prime(p)) continue;
    for (long a = -40; a <= 40; ++a) CHECK(kronecker_symbol(a, p) == legendre_brute(a, p));
  }
}

TEST_CASE("kronecker symbol is multiplicative in the bottom argument") {
  for (long a = -30; a <= 30; ++a)
    for (long m = 1; m < 40; ++m)
      for (long n = 1; n < 40; n += 3) CHECK(kronecker_symbol(a, m * n) == kronecker_symbol(a, m) * kronecker_symbol(a, n));
}

TEST_CASE("cubic residue symbol") {
  CHECK(cubic_residue_symbol(8, 5) == 1);
  CHECK(cubic_residue_symbol(2, 7) == -1);
  CHECK(cubic_residue_symbol(14, 7) == 0);
  for (long p = 2; p < 200; ++p) {
    if (!is_prime(p)) continue;
    for (long b = -20; b < 2 * p; ++b) CHECK(cubic_residue_symbol(b, p) == cubic_brute(b, p));
    if (p % 3 == 2)
      for (long b = 1; b < p; ++b) CHECK(cubic_residue_symbol(b, p) == 1);
  }
}

TEST_CASE("cubic residue symbol mod 9") {
  for (long b = -30; b < 30; ++b) {
    int expect = 0;
    if (b % 3 != 0) {
      expect = -1;
      for (long x = 1; x < 9; ++x)
        if ((x * x * x - b) % 9 == 0) expect = 1;
    }
    CHECK(cubic_residue_symbol_mod9(b) == expect);
  }
}

TEST_CASE("multiplicative functions") {
  CHECK(mobius(1) == 1);
  CHECK(mobius(4) == 0);
  CHECK(mobius(6) == 1);
  CHECK(mobius(30) == -1);
  CHECK(squarefree_divisor_count(1) == 1);
  CHECK(squarefree_divisor_count(12) == 4);
  CHECK(squarefree_divisor_count(-12) == 4);
  for (long p : {2, 3, 101, 7919}) CHECK(squarefree_divisor_count(p) == 2);
  CHECK(is_squarefree(1));
  CHECK_FALSE(is_squarefree(24));
  CHECK(is_squarefree(30));
}

TEST_CASE("fundamental discriminants") {
  CHECK(is_fundamental_discriminant(-23));
  CHECK(is_fundamental_discriminant(-24));
  CHECK_FALSE(is_fundamental_discriminant(-12));
  CHECK(is_fundamental_discriminant(-3));
  CHECK(is_fundamental_discriminant(-4));
  CHECK_FALSE(is_fundamental_discriminant(-16));
  CHECK_FALSE(is_fundamental_discriminant(-5));
}

TEST_CASE("factorization round trip") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const Int n = Int(static_cast<unsigned long>(rng() >> 4)) * Int(static_cast<unsigned long>(rng() >> 40)) + 1;
    const auto f = factor(n);
    CHECK(product(f) == n);
    for (std::size_t j = 0; j < f.size(); ++j) {
      CHECK(is_prime(f[j].p));
      if (j) CHECK(f[j - 1].p < f[j].p);
    }
  }
  CHECK(valuation(48, 2) == 4);
  CHECK(valuation(-81, 3) == 4);
  CHECK(valuation(5, 7) == 0);
}

TEST_CASE("trial-division squarefree test agrees with factorization") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 3000; ++i) {
    const Int n = Int(static_cast<unsigned long>(rng() % 100000000000ULL)) + 1;
    const auto v = squarefree_by_trial_division(n);
    REQUIRE(v != SquarefreeVerdict::probably_squarefree);  // exact below 10^18
    CHECK((v == SquarefreeVerdict::squarefree) == is_squarefree(n));
  }
}

TEST_CASE("trial-division squarefree test beyond the bound") {
  const Int p = 1000003, q = 1000033;
  CHECK(squarefree_by_trial_division(3 * p * p) == SquarefreeVerdict::not_squarefree);
  CHECK(squarefree_by_trial_division(p * q * 1000037) == SquarefreeVerdict::probably_squarefree);
  CHECK(squarefree_by_trial_division(p * q) == SquarefreeVerdict::squarefree);  // below the cube root stop
}

TEST_CASE("Eisenstein primes and the cubic character") {
  std::mt19937_64 rng(5);
  for (long p = 7; p < 400; ++p) {
    if (!is_prime(p) || p % 3 != 1) continue;
    const EisensteinInt pi = eisenstein_prime_above(p);
    CHECK(pi.norm() == p);
    CHECK(((pi.x % 3) + 3) % 3 == 2);
    CHECK(pi.y % 3 == 0);
    CHECK(cubic_character({1, 0}, pi).is_one());
    for (long n = 1; n < p; ++n) CHECK(cubic_character({n, 0}, pi).is_one() == (cubic_residue_symbol(n, p) == 1));
    for (int i = 0; i < 20; ++i) {
      const EisensteinInt b1{long(rng() % 200) - 100, long(rng() % 200) - 100};
      const EisensteinInt b2{long(rng() % 200) - 100, long(rng() % 200) - 100};
      CHECK(cubic_character(b1 * b2, pi) == cubic_character(b1, pi) * cubic_character(b2, pi));
    }
  }
}

TEST_CASE("cubic dictionary at p = 7, n = 2") {
  const EisensteinInt pi = eisenstein_prime_above(7);
  const CubicValue a = cubic_character({2, 0}, pi), b = cubic_character({2, 0}, pi.conj());
  REQUIRE_FALSE(a.zero);
  REQUIRE_FALSE(b.zero);
  // (2/3)(ω^i + ω^j) - 1/3 = -1 exactly when ω^i + ω^j = -1, i.e. i, j != 0 and i + j = 3.
  CHECK(a.k != 0);
  CHECK(b == conj(a));
  CHECK(cubic_residue_symbol(2, 7) == -1);
}

TEST_CASE("cubic character at inert primes is trivial on integers") {
  for (long p : {5L, 11L, 17L, 23L, 29L})
    for (long n = 1; n < p; ++n) CHECK(cubic_character({n, 0}, {p, 0}).is_one());
}

TEST_CASE("omega_hat counts split prime factors") {
  const EisensteinInt pi7 = eisenstein_prime_above(7), pi13 = eisenstein_prime_above(13);
  CHECK(omega_hat({1, 0}) == 0);
  CHECK(omega_hat(pi7) == 1);
  CHECK(omega_hat(pi7 * pi13) == 2);
  CHECK(omega_hat(pi7 * pi7) == 1);
}
