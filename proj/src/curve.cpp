#include "cnbound/curve.hpp"

#include "cnbound/arith.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cctype>

namespace cnb {

// ---------------------------------------------------------------------------
// Curves and points
// ---------------------------------------------------------------------------

CurveQ::CurveQ(Int a4, Int a6, std::optional<Int> conductor)
    : a4_(std::move(a4)), a6_(std::move(a6)), conductor_(std::move(conductor)) {
  if (4 * a4_ * a4_ * a4_ + 27 * a6_ * a6_ == 0) throw InvalidInput("singular curve: 4a4^3 + 27a6^2 = 0");
  if (conductor_ && *conductor_ <= 0) throw InvalidInput("conductor must be positive");
}

CurveQ CurveQ::family(const Int& a, std::optional<Int> conductor) {
  if (a <= 0) throw InvalidInput("family parameter a must be positive");
  if (conductor && *conductor % 3 != 0) throw InvalidInput("conductor of y^2 = x^3 - a must be a multiple of 3");
  return CurveQ(0, -a, std::move(conductor));
}

Rat CurveQ::j_invariant() const {
  Rat j(Int(1728 * 4) * a4_ * a4_ * a4_, 4 * a4_ * a4_ * a4_ + 27 * a6_ * a6_);
  j.canonicalize();
  return j;
}

RationalPoint RationalPoint::affine(const Rat& x, const Rat& y) {
  Int C;
  mpz_sqrt(C.get_mpz_t(), x.get_den().get_mpz_t());
  if (C * C != x.get_den() || y.get_den() != C * C * C)
    throw InvalidInput("point denominators are not of the form (C^2, C^3)");
  RationalPoint P;
  P.A_ = x.get_num();
  P.B_ = y.get_num();
  P.C_ = C;
  return P;
}

RationalPoint RationalPoint::from_integers(const Int& A, const Int& B, const Int& C) {
  if (C == 0) return infinity();
  if (C < 0) throw InvalidInput("point denominator C must be positive");
  if (gcd(A, C) != 1 || gcd(B, C) != 1) throw InvalidInput("point not in lowest terms");
  RationalPoint P;
  P.A_ = A;
  P.B_ = B;
  P.C_ = C;
  return P;
}

Rat RationalPoint::x() const {
  if (is_infinity()) throw InvalidInput("point at infinity has no x-coordinate");
  Rat q(A_, C_ * C_);
  q.canonicalize();
  return q;
}

Rat RationalPoint::y() const {
  if (is_infinity()) throw InvalidInput("point at infinity has no y-coordinate");
  Rat q(B_, C_ * C_ * C_);
  q.canonicalize();
  return q;
}

bool on_curve(const CurveQ& E, const RationalPoint& P) {
  if (P.is_infinity()) return true;
  const Rat y = P.y();
  return y * y == E.rhs(P.x());
}

RationalPoint negate(const RationalPoint& P) {
  if (P.is_infinity()) return P;
  return RationalPoint::from_integers(P.A(), -P.B(), P.C());
}

RationalPoint add_points(const CurveQ& E, const RationalPoint& P, const RationalPoint& Q) {
  if (P.is_infinity()) return Q;
  if (Q.is_infinity()) return P;
  const Rat x1 = P.x(), y1 = P.y(), x2 = Q.x(), y2 = Q.y();
  Rat lambda;
  if (x1 == x2) {
    if (y1 != y2 || y1 == 0) return RationalPoint::infinity();
    lambda = (3 * x1 * x1 + E.a4()) / (2 * y1);
  } else {
    lambda = (y2 - y1) / (x2 - x1);
  }
  const Rat x3 = lambda * lambda - x1 - x2;
  const Rat y3 = lambda * (x1 - x3) - y1;
  return RationalPoint::affine(x3, y3);
}

RationalPoint sub_points(const CurveQ& E, const RationalPoint& P, const RationalPoint& Q) {
  return add_points(E, P, negate(Q));
}

RationalPoint multiply(const CurveQ& E, const RationalPoint& P, long n) {
  RationalPoint base = n < 0 ? negate(P) : P;
  unsigned long k = n < 0 ? 0UL - static_cast<unsigned long>(n) : static_cast<unsigned long>(n);
  RationalPoint acc;
  while (k) {
    if (k & 1) acc = add_points(E, acc, base);
    k >>= 1;
    if (k) base = add_points(E, base, base);
  }
  return acc;
}

RationalPoint combination(const CurveQ& E, const std::vector<RationalPoint>& basis, const std::vector<long>& coefficients,
                          const RationalPoint& offset) {
  if (basis.size() != coefficients.size()) throw InvalidInput("combination: basis/coefficient length mismatch");
  RationalPoint acc = offset;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (coefficients[i] != 0) acc = add_points(E, acc, multiply(E, basis[i], coefficients[i]));
  return acc;
}

// ---------------------------------------------------------------------------
// Heights
// ---------------------------------------------------------------------------

namespace {

Real log_max(const Int& num, const Int& den) {
  Int a = abs(num);
  if (den > a) a = den;
  if (a == 0) return 0;
  return log_abs(a);
}

}  // namespace

Real weil_height(const RationalPoint& P) {
  if (P.is_infinity()) throw InvalidInput("Weil height of the point at infinity");
  return log_max(P.A(), P.C() * P.C());
}

Real weil_height(const Rat& q) {
  if (q == 0) return 0;
  return log_max(q.get_num(), q.get_den());
}

HeightWindow silverman_window(const CurveQ& E) {
  const Real hj = weil_height(E.j_invariant());
  const Real hd = log_abs(E.discriminant());
  HeightWindow w;
  w.lower = hj / 8 + hd / 12 + Real("0.973");
  w.upper = hj / 12 + hd / 12 + Real("1.07");
  return w;
}

std::optional<int> small_order(const CurveQ& E, const RationalPoint& P) {
  if (P.is_infinity()) return 1;
  // Nagell–Lutz: torsion points on an integral model are integral.
  if (P.C() != 1) return std::nullopt;
  RationalPoint Q = P;
  for (int n = 1; n <= 12; ++n) {
    if (Q.is_infinity()) return n;
    if (Q.C() != 1) return std::nullopt;
    Q = add_points(E, Q, P);
  }
  return std::nullopt;
}

HeightValue canonical_height(const CurveQ& E, const RationalPoint& P, const Real& tol, const HeightOptions& opts) {
  if (P.is_infinity()) return {0, 0};
  if (!(tol > 0)) throw InvalidInput("height tolerance must be positive");
  if (small_order(E, P)) return {Real(0), Real(0)};

  const HeightWindow win = silverman_window(E);
  const Real half_width = (win.lower + win.upper) / 2;
  unsigned k = 0;
  Real four_k = 1;
  while (!(half_width / four_k < tol)) {
    ++k;
    four_k *= 4;
  }

  const Int& a4 = E.a4();
  const Int& a6 = E.a6();
  const Int R = 6 * (4 * a4 * a4 * a4 + 27 * a6 * a6);
  Int num = P.A();
  Int den = P.C() * P.C();
  for (unsigned i = 0; i < k; ++i) {
    const Int n2 = num * num, d2 = den * den;
    Int nn = n2 * n2 - 2 * a4 * n2 * d2 - 8 * a6 * num * d2 * den + a4 * a4 * d2 * d2;
    Int dd = 4 * den * (n2 * num + a4 * num * d2 + a6 * d2 * den);
    if (dd == 0) throw InvalidInput("doubling reached a 2-torsion point of a non-torsion point");
    // Common factors of the two forms only come from primes dividing the resultant.
    for (Int s = gcd(gcd(nn, R), dd); s > 1; s = gcd(gcd(nn, R), dd)) {
      nn /= s;
      dd /= s;
    }
    if (dd < 0) {
      nn = -nn;
      dd = -dd;
    }
    num = std::move(nn);
    den = std::move(dd);
    const std::size_t bits = std::max(mpz_sizeinbase(num.get_mpz_t(), 2), mpz_sizeinbase(den.get_mpz_t(), 2));
    if (bits > opts.bit_cap)
      throw CapExceeded("canonical height: coordinate size exceeded " + std::to_string(opts.bit_cap) + " bits");
  }
  const Real hw = log_max(num, den);
  HeightValue h;
  h.value = hw / (2 * four_k) + (win.upper - win.lower) / (2 * four_k);
  h.error = half_width / four_k;
  return h;
}

Bounded height_pairing(const CurveQ& E, const RationalPoint& P, const RationalPoint& Q, const Real& tol,
                       const HeightOptions& opts) {
  const RationalPoint S = add_points(E, P, Q);
  const Bounded hs = S.is_infinity() ? Bounded{} : canonical_height(E, S, tol, opts);
  const Bounded hp = canonical_height(E, P, tol, opts);
  const Bounded hq = canonical_height(E, Q, tol, opts);
  return Real(0.5) * (hs - hp - hq);
}

HeightGram height_gram(const CurveQ& E, const std::vector<RationalPoint>& basis, const Real& tol, const HeightOptions& opts) {
  const auto r = static_cast<Eigen::Index>(basis.size());
  HeightGram g;
  g.value = Matrix<Real>::Zero(r, r);
  g.error = Matrix<Real>::Zero(r, r);
  std::vector<Bounded> diag;
  for (const auto& P : basis) {
    if (P.is_infinity() || !on_curve(E, P)) throw InvalidInput("basis point not a finite point on the curve");
    diag.push_back(canonical_height(E, P, tol, opts));
  }
  for (Eigen::Index i = 0; i < r; ++i) {
    g.value(i, i) = diag[i].value;
    g.error(i, i) = diag[i].error;
    for (Eigen::Index j = i + 1; j < r; ++j) {
      const RationalPoint S = add_points(E, basis[i], basis[j]);
      const Bounded hs = S.is_infinity() ? Bounded{} : canonical_height(E, S, tol, opts);
      const Bounded p = Real(0.5) * (hs - diag[i] - diag[j]);
      g.value(i, j) = g.value(j, i) = p.value;
      g.error(i, j) = g.error(j, i) = p.error;
    }
  }
  return g;
}

Bounded regulator_from_gram(const HeightGram& gram, HeightScale scale) {
  if (gram.rank() == 0) return {Real(1), Real(0)};
  const Real s = scale == HeightScale::x_coordinate ? Real(2) : Real(1);
  const Matrix<Real> m = s * gram.value;
  const Matrix<Real> e = s * gram.error;
  Bounded reg{determinant(m), determinant_perturbation_bound(m, e)};
  if (reg.lower() <= 0)
    throw DependentBasis("height Gram determinant " + format_bounded(reg) + " not certified positive: basis dependent or tolerance too coarse");
  return reg;
}

Bounded regulator(const CurveQ& E, const std::vector<RationalPoint>& basis, const Real& tol, HeightScale scale,
                  const HeightOptions& opts) {
  return regulator_from_gram(height_gram(E, basis, tol, opts), scale);
}

Bounded diameter_from_gram(const HeightGram& gram, const DiameterOptions& opts) {
  std::size_t combos = 1;
  for (std::size_t i = 0; i < gram.rank(); ++i) {
    combos *= 3;
    if (combos > opts.max_combinations) throw CapExceeded("diameter: 3^r exceeds the enumeration cap");
  }
  Coefficients best;
  const Real v = max_over_sign_vectors(gram.value, &best);
  // every sign vector has |δ_i| <= 1, so the full error sum bounds each term
  return {2 * v, 2 * gram.error.sum()};
}

Bounded diameter(const CurveQ& E, const std::vector<RationalPoint>& basis, const Real& tol, const DiameterOptions& opts,
                 const HeightOptions& hopts) {
  std::size_t combos = 1;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    combos *= 3;
    if (combos > opts.max_combinations) throw CapExceeded("diameter: 3^r exceeds the enumeration cap");
  }
  return diameter_from_gram(height_gram(E, basis, tol, hopts), opts);
}

Real delta_E(const CurveQ& E) {
  return weil_height(E.j_invariant()) / 2 + log_abs(E.discriminant()) / 3 + Real(20) / 3;
}

// ---------------------------------------------------------------------------
// Reduction mod p and torsion
// ---------------------------------------------------------------------------

namespace {

int legendre64(std::int64_t a, std::int64_t p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  int s = 1;
  std::int64_t n = p;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t r = n % 8;
      if (r == 3 || r == 5) s = -s;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) s = -s;
    a %= n;
  }
  return n == 1 ? s : 0;
}

}  // namespace

Int count_points_mod_p(const CurveQ& E, const Int& p) {
  if (!is_prime(p)) throw InvalidInput("count_points_mod_p: modulus is not prime");
  if (p > 100000000) throw CapExceeded("count_points_mod_p: p above the O(p) enumeration cap");
  const std::int64_t q = p.get_si();
  Int t;
  t = E.a4() % p;
  std::int64_t a4 = t.get_si();
  t = E.a6() % p;
  std::int64_t a6 = t.get_si();
  if (a4 < 0) a4 += q;
  if (a6 < 0) a6 += q;
  std::int64_t count = 1;
  if (q == 2) {
    for (std::int64_t x = 0; x < 2; ++x)
      for (std::int64_t y = 0; y < 2; ++y)
        if ((y * y - x * x * x - a4 * x - a6) % 2 == 0) ++count;
    return Int(static_cast<long>(count));
  }
  for (std::int64_t x = 0; x < q; ++x) {
    const __int128 r = ((static_cast<__int128>(x) * x % q * x) + static_cast<__int128>(a4) * x + a6) % q;
    count += 1 + legendre64(static_cast<std::int64_t>(r), q);
  }
  return Int(static_cast<long>(count));
}

namespace {

// Integer roots of x³ + a4·x + c.
std::vector<Int> integer_cubic_roots(const Int& a4, const Int& c) {
  auto f = [&](const Int& x) -> Int { return x * x * x + a4 * x + c; };
  std::vector<Int> roots;
  // f is increasing for |x| >= s; scan the middle directly
  Int s;
  mpz_sqrt(s.get_mpz_t(), Int(abs(a4)).get_mpz_t());
  s += 1;
  for (Int x = -s; x <= s; ++x)
    if (f(x) == 0) roots.push_back(x);
  const Int bound = 1 + std::max(Int(abs(a4)), Int(abs(c))) + s;
  auto bisect = [&](Int lo, Int hi) {
    if (f(lo) > 0 || f(hi) < 0) return;
    while (hi - lo > 1) {
      Int mid = (lo + hi) / 2;
      if (f(mid) < 0)
        lo = mid;
      else
        hi = mid;
    }
    if (f(hi) == 0) roots.push_back(hi);
    if (f(lo) == 0) roots.push_back(lo);
  };
  bisect(-bound, -s - 1);
  bisect(s + 1, bound);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

bool point_less(const RationalPoint& P, const RationalPoint& Q) {
  if (P.is_infinity() != Q.is_infinity()) return P.is_infinity();
  if (P.A() != Q.A()) return P.A() < Q.A();
  return P.B() < Q.B();
}

}  // namespace

std::vector<RationalPoint> torsion_points(const CurveQ& E) {
  std::vector<RationalPoint> out{RationalPoint::infinity()};
  const Int disc = abs(4 * E.a4() * E.a4() * E.a4() + 27 * E.a6() * E.a6());
  // y = 0 or y² | 4a4³ + 27a6²
  std::vector<Int> ys{0};
  std::vector<Int> divs{1};
  for (const auto& pp : factor(disc)) {
    const std::size_t n = divs.size();
    Int pk = 1;
    for (unsigned e = 1; 2 * e <= pp.e; ++e) {
      pk *= pp.p;
      for (std::size_t i = 0; i < n; ++i) divs.push_back(divs[i] * pk);
    }
  }
  ys.insert(ys.end(), divs.begin(), divs.end());
  for (const Int& y : ys) {
    for (const Int& x : integer_cubic_roots(E.a4(), E.a6() - y * y)) {
      for (int sign : {1, -1}) {
        if (y == 0 && sign < 0) continue;
        const RationalPoint P = RationalPoint::from_integers(x, sign * y);
        if (small_order(E, P)) out.push_back(P);
      }
    }
  }
  std::sort(out.begin(), out.end(), point_less);
  return out;
}

std::size_t torsion_subgroup_order(const CurveQ& E) { return torsion_points(E).size(); }

// ---------------------------------------------------------------------------
// Twists
// ---------------------------------------------------------------------------

bool twist_point_on_curve(const CurveQ& E, const TwistPoint& Q) {
  if (Q.w <= 0 || Q.D <= 0) return false;
  const Int w2 = Q.w * Q.w;
  const Int w4 = w2 * w2;
  if (-Q.D * Q.v * Q.v != 4 * (Q.u * Q.u * Q.u + E.a4() * Q.u * w4 + E.a6() * w4 * w2)) return false;
  if (Q.D % 2 != 0 && Q.v % 2 != 0) return false;
  if (Q.w == 1) return true;
  // p⁶ | gcd(u³, v², w⁶) iff p | w, p² | u and p³ | v
  for (const auto& pp : factor(Q.w)) {
    const Int p2 = pp.p * pp.p;
    if (Q.u % p2 == 0 && Q.v % (p2 * pp.p) == 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Bounded-height enumeration
// ---------------------------------------------------------------------------

BoundedHeightPoints bounded_height_points(const CurveQ& E, const std::vector<RationalPoint>& basis,
                                          const std::vector<RationalPoint>& torsion, const Real& T, const Int& w,
                                          const HeightGram& gram, const EnumerationOptions& opts) {
  if (!(T > 0)) throw InvalidInput("bounded_height_points: T must be positive");
  if (w <= 0) throw InvalidInput("bounded_height_points: w must be positive");
  if (gram.rank() != basis.size()) throw InvalidInput("bounded_height_points: Gram size does not match basis");
  const Real limit = T / 4;
  const auto r = static_cast<Eigen::Index>(basis.size());

  // Widen the ellipsoid so every vector whose true height is <= T/4 is visited.
  Real widened = limit;
  if (r > 0) {
    Eigen::MatrixXd gd(r, r);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < r; ++j) gd(i, j) = static_cast<double>(gram.value(i, j));
    const double lambda_min = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gd).eigenvalues().minCoeff();
    if (!(lambda_min > 0)) throw InvalidInput("bounded_height_points: Gram matrix is not positive definite");
    const double rel = static_cast<double>(gram.error.maxCoeff()) * static_cast<double>(r) / lambda_min;
    if (rel >= 0.25) throw InvalidInput("bounded_height_points: Gram errors too large for enumeration");
    widened = limit / (1 - 2 * Real(rel));
  }

  std::vector<Coefficients> vecs;
  if (!short_vectors(gram.value, widened, opts.max_candidates, vecs))
    throw CapExceeded("bounded_height_points: more than " + std::to_string(opts.max_candidates) + " candidates");

  std::vector<RationalPoint> tors = torsion.empty() ? std::vector<RationalPoint>{RationalPoint::infinity()} : torsion;
  BoundedHeightPoints out;
  for (const auto& n : vecs) {
    const Real q = quadratic_form(gram.value, n);
    const Real qe = quadratic_form_error(gram.error, n);
    if (q - qe > limit) continue;
    if (q + qe > limit) {
      out.ambiguous += tors.size();
      continue;
    }
    const RationalPoint base = combination(E, basis, n);
    for (std::size_t ti = 0; ti < tors.size(); ++ti) {
      const RationalPoint P = add_points(E, base, tors[ti]);
      if (gcd(P.C(), w) != 1) continue;
      out.points.push_back(P);
      out.coefficients.push_back(n);
      out.torsion_index.push_back(ti);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text forms
// ---------------------------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::pair<std::string_view, std::string_view> split_pair(std::string_view text, const char* what) {
  text = trim(text);
  if (text.size() >= 2 && text.front() == '(' && text.back() == ')') text = text.substr(1, text.size() - 2);
  const auto comma = text.find(',');
  if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos)
    throw InvalidInput(std::string("expected ") + what + " as two comma-separated values");
  return {trim(text.substr(0, comma)), trim(text.substr(comma + 1))};
}

}  // namespace

Int parse_integer(std::string_view text) {
  text = trim(text);
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  const std::size_t digits_from = (!s.empty() && s.front() == '-') ? 1 : 0;
  if (s.size() == digits_from ||
      !std::all_of(s.begin() + digits_from, s.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw InvalidInput("invalid integer '" + std::string(text) + "'");
  return Int(s, 10);
}

Rat parse_rational(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat(parse_integer(text));
  const Int den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
  Rat q(parse_integer(text.substr(0, slash)), den);
  q.canonicalize();
  return q;
}

CurveQ parse_curve(std::string_view text) {
  const auto [a4, a6] = split_pair(text, "curve a4,a6");
  return CurveQ(parse_integer(a4), parse_integer(a6));
}

std::string to_string(const CurveQ& E) { return E.a4().get_str() + "," + E.a6().get_str(); }

RationalPoint parse_point(std::string_view text) {
  if (trim(text) == "inf") return RationalPoint::infinity();
  const auto [x, y] = split_pair(text, "point x,y");
  return RationalPoint::affine(parse_rational(x), parse_rational(y));
}

std::string to_string(const RationalPoint& P) {
  if (P.is_infinity()) return "inf";
  return P.x().get_str() + "," + P.y().get_str();
}

}  // namespace cnb
