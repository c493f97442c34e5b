#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cnbound/curve.hpp"

using namespace cnb;

namespace {

const Real kTol("1e-5");

const CurveQ& e174() {
  static const CurveQ E = CurveQ::family(174);
  return E;
}

std::vector<RationalPoint> e174_basis() {
  return {parse_point("7,13"), parse_point("25/4,67/8"), parse_point("151/25,-851/125")};
}

long brute_count(long a4, long a6, long p) {
  long n = 1;
  for (long x = 0; x < p; ++x)
    for (long y = 0; y < p; ++y)
      if (((y * y - x * x * x - a4 * x - a6) % p + p) % p == 0) ++n;
  return n;
}

}  // namespace

TEST_CASE("curve construction and parsing") {
  CHECK_THROWS_AS(CurveQ(0, 0), InvalidInput);
  CHECK_THROWS_AS(CurveQ(-3, 2), InvalidInput);  // 4·(-27) + 27·4 = 0
  CHECK_THROWS_AS(CurveQ::family(0), InvalidInput);
  CHECK_THROWS_AS(CurveQ::family(2, Int(1728 + 1)), InvalidInput);
  const CurveQ E = parse_curve("-4,9");
  CHECK(E.a4() == -4);
  CHECK(E.a6() == 9);
  CHECK(to_string(E) == "-4,9");
  CHECK(parse_point("inf").is_infinity());
  CHECK(to_string(parse_point("25/4,67/8")) == "25/4,67/8");
  CHECK_THROWS_AS(parse_point("1/2,1/3"), InvalidInput);
  CHECK_THROWS_AS(parse_curve("1,x"), InvalidInput);
}

TEST_CASE("group law") {
  const CurveQ& E = e174();
  const RationalPoint P = parse_point("7,13"), Q = parse_point("25/4,67/8");
  CHECK(add_points(E, P, RationalPoint::infinity()) == P);
  CHECK(add_points(E, P, negate(P)).is_infinity());
  const RationalPoint S = add_points(E, P, Q);
  CHECK(on_curve(E, S));
  CHECK(add_points(E, Q, P) == S);
  CHECK(sub_points(E, S, Q) == P);
  CHECK(add_points(E, add_points(E, P, Q), S) == add_points(E, P, add_points(E, Q, S)));
  CHECK(multiply(E, P, 3) == add_points(E, P, add_points(E, P, P)));
  CHECK(multiply(E, P, -2) == negate(multiply(E, P, 2)));
  CHECK(combination(E, e174_basis(), {1, -1, 0}) == sub_points(E, P, Q));
}

TEST_CASE("Weil height") {
  CHECK(weil_height(parse_point("0,3")) == 0);
  CHECK(abs(weil_height(parse_point("7,13")) - log(Real(7))) < Real("1e-40"));
  CHECK(abs(weil_height(parse_point("25/4,67/8")) - log(Real(25))) < Real("1e-40"));
}

TEST_CASE("points mod p") {
  CHECK(count_points_mod_p(CurveQ(0, 1), 7) == 12);
  for (long a = 1; a <= 20; ++a)
    for (long p : {2L, 3L, 5L}) CHECK(count_points_mod_p(CurveQ::family(a), p) == p + 1);
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 31L, 97L})
    for (long a4 = -3; a4 <= 3; ++a4)
      for (long a6 = -3; a6 <= 3; ++a6) {
        if (4 * a4 * a4 * a4 + 27 * a6 * a6 == 0) continue;
        CHECK(count_points_mod_p(CurveQ(a4, a6), p) == brute_count(a4, a6, p));
      }
}

TEST_CASE("torsion") {
  CHECK(torsion_subgroup_order(e174()) == 1);
  CHECK(torsion_subgroup_order(CurveQ(0, 1)) == 6);
  CHECK(torsion_subgroup_order(CurveQ(-1, 0)) == 4);
  CHECK(torsion_subgroup_order(CurveQ(-43, 166)) == 7);
  CHECK(small_order(CurveQ(0, 1), parse_point("2,3")) == 6);
  CHECK_FALSE(small_order(e174(), parse_point("7,13")).has_value());
}

TEST_CASE("canonical height") {
  const CurveQ E(-1, 0);
  const HeightValue h0 = canonical_height(E, parse_point("0,0"), kTol);
  CHECK(abs(h0.value) <= kTol);
  CHECK(canonical_height(E, RationalPoint::infinity(), kTol).value == 0);

  const RationalPoint P = parse_point("7,13");
  const HeightValue h = canonical_height(e174(), P, kTol);
  CHECK(h.value > 0);
  CHECK(h.error <= kTol);
  const HeightValue h_fine = canonical_height(e174(), P, Real("1e-6"));
  CHECK(abs(h.value - h_fine.value) <= h.error + h_fine.error);
  // quadratic in n
  const HeightValue h3 = canonical_height(e174(), multiply(e174(), P, 3), kTol);
  CHECK(abs(h3.value - 9 * h.value) <= h3.error + 9 * h.error);
  // inside the window
  const HeightWindow w = silverman_window(e174());
  const Real diff = h.value - weil_height(P) / 2;
  CHECK(diff >= -w.lower - h.error);
  CHECK(diff <= w.upper + h.error);
}

TEST_CASE("regulator and diameter") {
  const CurveQ& E = e174();
  CHECK(regulator(E, {}, kTol).value == 1);
  CHECK(diameter(E, {}, kTol).value == 0);

  const RationalPoint P = parse_point("7,13");
  const HeightValue h = canonical_height(E, P, kTol);
  const Bounded r_half = regulator(E, {P}, kTol, HeightScale::half);
  const Bounded r_x = regulator(E, {P}, kTol);
  CHECK(abs(r_half.value - h.value) <= r_half.error + h.error);
  CHECK(abs(r_x.value - 2 * h.value) <= r_x.error + 2 * h.error);
  const Bounded d1 = diameter(E, {P}, kTol);
  CHECK(abs(d1.value - 2 * h.value) <= d1.error + 2 * h.error);

  const auto basis = e174_basis();
  const Bounded R = regulator(E, basis, Real("1e-6"));
  CHECK(R.lower() >= Real("46.1056") - Real("5e-4"));
  CHECK(R.upper() <= Real("46.1056") + Real("5e-4"));
  const Bounded d = diameter(E, basis, kTol);
  for (const auto& Q : basis) CHECK(d.upper() >= 2 * canonical_height(E, Q, kTol).lower());

  CHECK_THROWS_AS(regulator(E, {P, multiply(E, P, 2)}, kTol), DependentBasis);
}

TEST_CASE("twist points") {
  const CurveQ E(-4, 9);
  CHECK(twist_point_on_curve(E, TwistPoint{-3, 1, 1, 24}));
  CHECK_FALSE(twist_point_on_curve(E, TwistPoint{-3, 2, 1, 24}));
  // y² = x³ - 2: n = 3, m = 1, t = 1 gives d = 2·729 - 1 = 1457 ≡ 1 (mod 4), D = 4d, Q = (m, t, n)
  const CurveQ E2 = CurveQ::family(2);
  CHECK(twist_point_on_curve(E2, TwistPoint{1, 1, 3, 4 * 1457}));
  // odd case: n = 3, m = 5: d = 1458 - 125 = 1333 ≡ 1; m = 7: 1458 - 343 = 1115 ≡ 3, D = d, Q = (m, 2t, n)
  CHECK(twist_point_on_curve(E2, TwistPoint{7, 2, 3, 1115}));
}

TEST_CASE("bounded-height enumeration matches a coefficient box") {
  const CurveQ& E = e174();
  const auto basis = e174_basis();
  const HeightGram g = height_gram(E, basis, kTol);
  const std::vector<RationalPoint> torsion = torsion_points(E);
  for (const char* Ts : {"20", "60"}) {
    const Real T(Ts);
    const auto got = bounded_height_points(E, basis, torsion, T, 1, g);
    std::size_t box = 0;
    const long R = 8;
    for (long a = -R; a <= R; ++a)
      for (long b = -R; b <= R; ++b)
        for (long c = -R; c <= R; ++c) {
          const Real q = quadratic_form(g.value, Coefficients{a, b, c});
          if (q <= T / 4) ++box;
        }
    CHECK(got.points.size() + got.ambiguous >= box);
    CHECK(got.points.size() <= box);
    for (const auto& P : got.points) CHECK(canonical_height(E, P, kTol).lower() <= T / 4);
  }
  // Below the smallest nonzero height only torsion remains.
  const auto tiny = bounded_height_points(E, basis, torsion, Real("0.01"), 1, g);
  CHECK(tiny.points.size() == torsion.size());
}

TEST_CASE("bounded-height enumeration respects gcd(C, w) = 1") {
  const CurveQ& E = e174();
  const auto basis = e174_basis();
  const HeightGram g = height_gram(E, basis, kTol);
  const auto pts = bounded_height_points(E, basis, torsion_points(E), Real(40), 2, g);
  for (const auto& P : pts.points) {
    CHECK_FALSE(P.is_infinity());
    CHECK(gcd(P.C(), Int(2)) == 1);
  }
}
