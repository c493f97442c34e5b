#pragma once

#include "cnbound/types.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace cnb {

/// aX² + bXY + cY².
struct QuadForm {
  Int a;
  Int b;
  Int c;

  Int discriminant() const { return b * b - 4 * a * c; }

  friend bool operator==(const QuadForm&, const QuadForm&) = default;
  friend bool operator<(const QuadForm& f, const QuadForm& g) {
    if (f.a != g.a) return f.a < g.a;
    if (f.b != g.b) return f.b < g.b;
    return f.c < g.c;
  }
};

bool is_positive_definite(const QuadForm& f);
/// |b| <= a <= c, and b >= 0 when |b| = a or a = c.
bool is_reduced(const QuadForm& f);

/// The reduced representative of the SL₂(Z) class of a positive-definite form.
QuadForm reduce(const QuadForm& f);
bool equivalent(const QuadForm& f, const QuadForm& g);

/// Reduced forms (a, b, c) of discriminant -D (primitive or not), lexicographic.
/// Requires D > 0, D ≡ 0, 3 (mod 4).
std::vector<QuadForm> all_reduced_forms(const Int& D);
/// Number of reduced forms of discriminant -D.
Int class_number(const Int& D);

/// Same enumeration over a native integer type, for D small enough that
/// b² + D does not overflow.
template <class Integer>
std::vector<std::array<Integer, 3>> reduced_form_triples(Integer D) {
  std::vector<std::array<Integer, 3>> out;
  for (Integer a = 1; 3 * a * a <= D; ++a) {
    // b ≡ D (mod 2), -a < b <= a
    Integer b = -a + 1;
    if (((b % 2) + 2) % 2 != D % 2) ++b;
    for (; b <= a; b += 2) {
      const Integer num = b * b + D;
      if (num % (4 * a) != 0) continue;
      const Integer c = num / (4 * a);
      if (c < a) continue;
      if (b < 0 && a == c) continue;
      out.push_back({a, b, c});
    }
  }
  return out;
}

/// "(a,b,c)".
QuadForm parse_form(std::string_view text);
std::string to_string(const QuadForm& f);

}  // namespace cnb
