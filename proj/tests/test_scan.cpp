#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cnbound/arith.hpp"
#include "cnbound/scan.hpp"

using namespace cnb;

TEST_CASE("rho values") {
  CHECK(rho_closed(1, 1, 1).value == 1);
  CHECK(rho_closed(1, 1, 7).value == 6);
  CHECK(rho_closed(1, 1, 4).value == 2);
  CHECK(rho_brute(1, 1, 1) == 1);
  CHECK(rho_brute(1, 1, 7) == 6);
  CHECK(rho_brute(1, 1, 4) == 2);
  CHECK_THROWS_AS(rho_closed(1, 1, 0), InvalidInput);
  CHECK_THROWS_AS(rho_brute(1, 1, Int(20'000'000)), CapExceeded);
}

TEST_CASE("closed form reports p = 2, 3 dividing am as unhandled") {
  const RhoValue v2 = rho_closed(2, 1, 8);
  CHECK_FALSE(v2.handled);
  CHECK_FALSE(v2.note.empty());
  CHECK_FALSE(rho_closed(1, 3, 9).handled);
  CHECK_FALSE(rho_closed(1, 6, 7 * 4).handled);
}

TEST_CASE("closed form agrees with the direct count away from the problem cases") {
  // odd primes p >= 5 not dividing am, and 3 not dividing am
  for (long a = 1; a <= 12; ++a)
    for (long m = -12; m <= 12; ++m) {
      if (m == 0) continue;
      for (long q : {5L, 7L, 13L, 25L, 49L, 3L, 9L, 27L, 31L, 343L}) {
        const Int p = factor(q)[0].p;
        if ((Int(a) * m) % p == 0) continue;
        const RhoValue v = rho_closed(m, a, q);
        REQUIRE(v.handled);
        CHECK(v.value == rho_brute(m, a, q));
      }
    }
}

TEST_CASE("derived closed form agrees with the direct count everywhere") {
  for (long a = 1; a <= 30; ++a)
    for (long m = -30; m <= 30; ++m) {
      if (m == 0) continue;
      for (long q : {2L, 4L, 8L, 16L, 64L, 3L, 9L, 27L, 81L, 5L, 25L, 125L, 625L, 7L, 49L, 343L, 11L, 121L, 13L})
        CHECK(rho_closed_corrected(m, a, q) == rho_brute(m, a, q));
    }
}

TEST_CASE("rho is multiplicative") {
  for (long a = 1; a <= 10; ++a)
    for (long m = 1; m <= 10; ++m) {
      CHECK(rho_brute(m, a, 4 * 49) == rho_brute(m, a, 4) * rho_brute(m, a, 49));
      CHECK(rho_brute(m, a, 25 * 121) == rho_brute(m, a, 25) * rho_brute(m, a, 121));
      CHECK(rho_closed_corrected(m, a, 9 * 25) == rho_closed_corrected(m, a, 9) * rho_closed_corrected(m, a, 25));
      const RhoValue x = rho_closed(m, a, 5 * 7), y = rho_closed(m, a, 5), z = rho_closed(m, a, 7);
      if (x.handled) CHECK(x.value == y.value * z.value);
    }
}

TEST_CASE("configuration checks") {
  ScanConfig c;
  c.A = Rat(1, 2);  // 2B = 1/2 < A
  CHECK_THROWS_AS(validate(c), InvalidInput);
  c = {};
  c.B = Rat(1, 3);  // 2B = 2/3
  CHECK_THROWS_AS(validate(c), InvalidInput);
  c = {};
  c.h = 2;  // gcd(2, 4) = 2
  CHECK_THROWS_AS(validate(c), InvalidInput);
  c = {};
  c.conductor = Int(10);
  CHECK_THROWS_AS(validate(c), InvalidInput);
  c = {};
  CHECK_NOTHROW(validate(c));
}

TEST_CASE("ranges are decided exactly") {
  ScanConfig c;
  c.a = 3;
  c.X = 123456789;
  c.T = 2;
  c.A = Rat(1, 5);
  c.B = Rat(3, 10);
  const ScanRanges r = scan_ranges(c);
  // 4m >= T^A X^{1/3}  <=>  (4m)^15 >= T^3 X^5
  auto m_ok = [&](const Int& m) {
    Int l, rr;
    mpz_pow_ui(l.get_mpz_t(), Int(4 * m).get_mpz_t(), 15);
    Int X5;
    mpz_pow_ui(X5.get_mpz_t(), c.X.get_mpz_t(), 5);
    Int hi;
    mpz_pow_ui(hi.get_mpz_t(), Int(2 * m).get_mpz_t(), 15);
    return l >= 8 * X5 && hi <= 8 * X5;
  };
  CHECK(m_ok(r.m_lo));
  CHECK(m_ok(r.m_hi));
  CHECK_FALSE(m_ok(r.m_lo - 1));
  CHECK_FALSE(m_ok(r.m_hi + 1));
  CHECK(r.t_lo == 2);
  CHECK(r.t_hi == 4);
  CHECK(r.n_lo <= r.n_hi);
}

TEST_CASE("scan records satisfy every defining condition") {
  ScanConfig c;
  c.a = 2;
  c.X = 3'000'000;
  c.modulus = 1;
  c.h = 0;
  c.conductor = 1728;
  c.W = -1;
  const ScanRanges r = scan_ranges(c);
  const ScanResult res = scan(c);
  REQUIRE_FALSE(res.records.empty());
  const CurveQ E = CurveQ::family(2);
  for (const auto& rec : res.records) {
    CHECK(-rec.d * rec.t * rec.t == rec.m * rec.m * rec.m - rec.a * rec.n * rec.n * rec.n * rec.n * rec.n * rec.n);
    CHECK(is_squarefree(rec.d));
    CHECK(rec.d > 0);
    CHECK(rec.d < c.X);
    CHECK(gcd(rec.t, 6 * rec.a * rec.m) == 1);
    CHECK(gcd(rec.n, rec.a * rec.m) == 1);
    CHECK(rec.m >= r.m_lo);
    CHECK(rec.m <= r.m_hi);
    CHECK(rec.n >= r.n_lo);
    CHECK(rec.n <= r.n_hi);
    CHECK(rec.D == (rec.d % 4 == 3 ? rec.d : 4 * rec.d));
    CHECK(twist_point_on_curve(E, rec.Q));
    if (gcd(rec.D, 1728) == 1) {
      REQUIRE(rec.parity_even_rank.has_value());
      CHECK(*rec.parity_even_rank == (parity_sign(rec.D, 1728, -1) == 1));
    } else {
      CHECK_FALSE(rec.parity_even_rank.has_value());
    }
  }
  for (std::size_t i = 1; i < res.records.size(); ++i) {
    const auto& x = res.records[i - 1];
    const auto& y = res.records[i];
    CHECK(std::tie(x.m, x.n, x.t) < std::tie(y.m, y.n, y.t));
  }
}

TEST_CASE("scan finds every solution in a small box") {
  ScanConfig c;
  c.a = 5;
  c.X = 2'000'000;
  c.modulus = 2;
  c.h = 1;
  const ScanRanges r = scan_ranges(c);
  const ScanResult res = scan(c);
  std::size_t brute = 0;
  for (Int n = r.n_lo; n <= r.n_hi; ++n) {
    if (n % 2 != 0 || gcd(n, 5) != 1) continue;
    for (Int m = r.m_lo; m <= r.m_hi; ++m) {
      if (m % 2 != 1 || gcd(n, m) != 1) continue;
      const Int d = 5 * n * n * n * n * n * n - m * m * m;  // t = 1 only
      if (d > 0 && d < c.X && is_squarefree(d)) ++brute;
    }
  }
  CHECK(res.records.size() == brute);
}

TEST_CASE("scan output does not depend on the thread count") {
  ScanConfig c;
  c.X = 2'000'000'000;
  c.modulus = 1;
  c.h = 0;
  c.threads = 1;
  const ScanResult one = scan(c);
  c.threads = 4;
  const ScanResult four = scan(c);
  REQUIRE(one.records.size() == four.records.size());
  for (std::size_t i = 0; i < one.records.size(); ++i) {
    CHECK(one.records[i].m == four.records[i].m);
    CHECK(one.records[i].n == four.records[i].n);
    CHECK(one.records[i].d == four.records[i].d);
  }
}

TEST_CASE("empty range and summatory counts") {
  ScanConfig c;
  c.X = 100;
  CHECK(scan(c).records.empty());
  CHECK(summatory_count(c).empty());
  c.X = 1'000'000'000;
  const ScanResult res = scan(c);
  const auto table = summatory_count(res.records);
  std::size_t total = 0, worst = 0;
  for (const auto& [d, n] : table) {
    total += n;
    worst = std::max(worst, n);
  }
  CHECK(total == res.records.size());
  CHECK(worst <= 16);
}

TEST_CASE("parity sign") {
  CHECK(parity_sign(1, 3, 1) == -1);
  for (long D : {7L, 11L, 19L, 23L}) {
    const int k = kronecker_symbol(-D, 1728);
    CHECK(parity_sign(D, 1728, 1) == k);
    CHECK(parity_sign(D, 1728, -1) == -k);
  }
  for (long D1 : {5L, 7L, 11L, 13L})
    for (long D2 : {17L, 19L, 23L})
      // (-D1·D2|N) = (-D1|N)(-D2|N)(-1|N) and (-1|1728) = -1
      CHECK(parity_sign(D1 * D2, 1728, -1) == parity_sign(D1, 1728, -1) * parity_sign(D2, 1728, -1));
  CHECK_THROWS_AS(parity_sign(6, 1728, 1), InvalidInput);
}

TEST_CASE("family coefficients") {
  CHECK(stewart_top_coefficient(3, 1) == 2160);
  CHECK(stewart_top_coefficient(3, 0) == -13392);
  CHECK(stewart_top_coefficient(4, 0) == -9261);
  for (long t = -5; t <= 5; ++t) {
    const Rat a5 = stewart_top_coefficient(5, t);
    CHECK(a5.get_den() == 27);
    CHECK(stewart_top_integral_model(5, t) == a5 * 729);
    CHECK(stewart_top_integral_model(3, t) == stewart_top_coefficient(3, t));
  }
  CHECK_THROWS_AS(stewart_top_coefficient(6, 1), InvalidInput);
}
