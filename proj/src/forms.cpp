#include "cnbound/forms.hpp"

#include "cnbound/curve.hpp"

#include <array>
#include <cstdint>

namespace cnb {

bool is_positive_definite(const QuadForm& f) { return f.a > 0 && f.discriminant() < 0; }

bool is_reduced(const QuadForm& f) {
  if (!is_positive_definite(f)) return false;
  if (abs(f.b) > f.a || f.a > f.c) return false;
  if ((abs(f.b) == f.a || f.a == f.c) && f.b < 0) return false;
  return true;
}

QuadForm reduce(const QuadForm& f) {
  if (!is_positive_definite(f)) throw InvalidInput("reduce: form " + to_string(f) + " is not positive definite");
  Int a = f.a, b = f.b, c = f.c;
  while (true) {
    // translate b into (-a, a]
    const Int two_a = 2 * a;
    Int k;
    mpz_fdiv_q(k.get_mpz_t(), Int(a - b).get_mpz_t(), two_a.get_mpz_t());
    if (k != 0) {
      c = a * k * k + b * k + c;
      b += two_a * k;
    }
    if (a > c) {
      std::swap(a, c);
      b = -b;
      continue;
    }
    if (a == c && b < 0) b = -b;
    return {a, b, c};
  }
}

bool equivalent(const QuadForm& f, const QuadForm& g) { return reduce(f) == reduce(g); }

std::vector<QuadForm> all_reduced_forms(const Int& D) {
  if (D <= 0 || (D % 4 != 0 && D % 4 != 3)) throw InvalidInput("discriminant -" + D.get_str() + " is not ≡ 0, 1 (mod 4)");
  std::vector<QuadForm> out;
  if (D < Int(1) << 60) {
    for (const auto& t : reduced_form_triples<std::int64_t>(D.get_si()))
      out.push_back({Int(static_cast<long>(t[0])), Int(static_cast<long>(t[1])), Int(static_cast<long>(t[2]))});
  } else {
    for (const auto& t : reduced_form_triples<Int>(D)) out.push_back({t[0], t[1], t[2]});
  }
  return out;
}

Int class_number(const Int& D) { return Int(static_cast<unsigned long>(all_reduced_forms(D).size())); }

QuadForm parse_form(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(0, 1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw InvalidInput("form must look like (a,b,c): '" + s + "'");
  s = s.substr(1, s.size() - 2);
  const auto c1 = s.find(',');
  const auto c2 = c1 == std::string::npos ? c1 : s.find(',', c1 + 1);
  if (c2 == std::string::npos || s.find(',', c2 + 1) != std::string::npos)
    throw InvalidInput("form must have three coefficients");
  return {parse_integer(s.substr(0, c1)), parse_integer(s.substr(c1 + 1, c2 - c1 - 1)), parse_integer(s.substr(c2 + 1))};
}

std::string to_string(const QuadForm& f) {
  return "(" + f.a.get_str() + "," + f.b.get_str() + "," + f.c.get_str() + ")";
}

}  // namespace cnb
