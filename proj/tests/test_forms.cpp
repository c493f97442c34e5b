#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cnbound/arith.hpp"
#include "cnbound/forms.hpp"

using namespace cnb;

namespace {

// h(-D) = -(1/D)·Σ_{a=1}^{D-1} (-D|a)·a for fundamental -D < -4.
long dirichlet_class_number(long D) {
  long s = 0;
  for (long a = 1; a < D; ++a) s += kronecker_symbol(-D, a) * a;
  return -s / D;
}

// Independent enumeration: for each b, split (b² + D)/4 as a·c.
std::size_t sweep_count(long D) {
  std::size_t n = 0;
  for (long b = -D; b <= D; ++b) {
    if ((b * b + D) % 4 != 0) continue;
    const long ac = (b * b + D) / 4;
    for (long a = 1; a * a <= ac; ++a) {
      if (ac % a != 0) continue;
      const long c = ac / a;
      if (std::abs(b) > a) continue;
      if ((std::abs(b) == a || a == c) && b < 0) continue;
      ++n;
    }
  }
  return n;
}

}  // namespace

TEST_CASE("reduction") {
  CHECK(reduce({1, 0, 6}) == QuadForm{1, 0, 6});
  CHECK(reduce({3, 12, 14}) == QuadForm{2, 0, 3});
  CHECK(reduce({1, 8, 22}) == QuadForm{1, 0, 6});
  CHECK(reduce({2, -2, 3}) == QuadForm{2, 2, 3});
  CHECK(reduce({3, -1, 3}) == QuadForm{3, 1, 3});
  for (long a = 1; a < 15; ++a)
    for (long b = -40; b <= 40; ++b)
      for (long c = 1; c < 15; ++c) {
        const QuadForm f{a, b, c};
        if (!is_positive_definite(f)) continue;
        const QuadForm r = reduce(f);
        CHECK(is_reduced(r));
        CHECK(r.discriminant() == f.discriminant());
        CHECK(reduce(r) == r);
      }
  CHECK_THROWS_AS(reduce({1, 4, 1}), InvalidInput);
}

TEST_CASE("equivalence") {
  const QuadForm f{3, 12, 14}, g{1, 8, 22};
  CHECK(equivalent(f, f));
  CHECK_FALSE(equivalent(f, g));
  CHECK_FALSE(equivalent({2, 1, 3}, {2, -1, 3}));  // opposite classes of discriminant -23
  CHECK(equivalent({2, 0, 3}, {2, -0, 3}));
  CHECK(equivalent({1, 0, 6}, {1, 8, 22}));
}

TEST_CASE("class numbers") {
  CHECK(class_number(3) == 1);
  CHECK(class_number(4) == 1);
  CHECK(class_number(24) == 2);
  CHECK(class_number(23) == 3);
  CHECK(all_reduced_forms(4) == std::vector<QuadForm>{{1, 0, 1}});
  CHECK(all_reduced_forms(24) == std::vector<QuadForm>{{1, 0, 6}, {2, 0, 3}});
  CHECK(all_reduced_forms(23) == std::vector<QuadForm>{{1, 1, 6}, {2, -1, 3}, {2, 1, 3}});
  CHECK_THROWS_AS(class_number(5), InvalidInput);
  CHECK_THROWS_AS(class_number(0), InvalidInput);
}

TEST_CASE("class number against the analytic formula") {
  for (long D = 5; D < 3000; ++D) {
    if (!is_fundamental_discriminant(-D)) continue;
    CHECK(class_number(D) == dirichlet_class_number(D));
  }
}

TEST_CASE("class number against a b-sweep including non-primitive forms") {
  for (long D = 3; D < 1500; ++D) {
    if (D % 4 == 1 || D % 4 == 2) continue;
    CHECK(class_number(D) == sweep_count(D));
  }
}

TEST_CASE("native and arbitrary-precision enumerations agree") {
  for (long D : {3L, 24L, 1155L, 99995L}) {
    const auto small = reduced_form_triples<long>(D);
    const auto big = reduced_form_triples<Int>(Int(D));
    REQUIRE(small.size() == big.size());
    for (std::size_t i = 0; i < small.size(); ++i)
      for (int j = 0; j < 3; ++j) CHECK(Int(small[i][j]) == big[i][j]);
  }
}

TEST_CASE("form text") {
  CHECK(parse_form("(3,12,14)") == QuadForm{3, 12, 14});
  CHECK(parse_form(" ( 1 , -8 , 22 ) ") == QuadForm{1, -8, 22});
  CHECK(to_string(QuadForm{1, 8, 22}) == "(1,8,22)");
  CHECK_THROWS_AS(parse_form("(1,2)"), InvalidInput);
}
