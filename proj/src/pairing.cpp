#include "cnbound/pairing.hpp"

#include "cnbound/arith.hpp"

#include <algorithm>
#include <set>

namespace cnb {

namespace {

// Smallest w with q | w² and s | w³.
Int minimal_w(const Int& q, const Int& s) {
  Int w = 1;
  std::vector<PrimePower> fs = factor(q);
  for (const auto& pp : factor(s)) fs.push_back(pp);
  std::sort(fs.begin(), fs.end(), [](const PrimePower& x, const PrimePower& y) { return x.p < y.p; });
  for (std::size_t i = 0; i < fs.size();) {
    const Int p = fs[i].p;
    const unsigned eq = valuation(q, p), es = valuation(s, p);
    const unsigned k = std::max((eq + 1) / 2, (es + 2) / 3);
    Int pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), k);
    w *= pk;
    while (i < fs.size() && fs[i].p == p) ++i;
  }
  return w;
}

void check_model(const CurveQ& E, const TwistPoint& Q) {
  if (Q.D <= 0) throw InvalidInput("twist discriminant D must be positive");
  if (Q.u == 0 || Q.v == 0) throw InvalidInput("twist point has uv = 0");
  if (!twist_point_on_curve(E, Q))
    throw InvalidInput("twist point (" + Q.u.get_str() + "," + Q.v.get_str() + "," + Q.w.get_str() +
                       ") is not a normalized point of -D(y/2)^2 = x^3 + a4 x + a6 with D = " + Q.D.get_str());
}

}  // namespace

TwistPoint normalize_twist_point(const CurveQ& E, const Int& D, const Rat& x, const Rat& y) {
  const Int w = minimal_w(x.get_den(), y.get_den());
  TwistPoint Q;
  Q.D = D;
  Q.w = w;
  Q.u = x.get_num() * (w * w / x.get_den());
  Q.v = y.get_num() * (w * w * w / y.get_den());
  check_model(E, Q);
  return Q;
}

TwistPoint normalize_twist_point(const CurveQ& E, const Int& D, Int u, Int v, Int w) {
  if (w == 0) throw InvalidInput("twist point has w = 0");
  if (w < 0) {
    w = -w;
    v = -v;
  }
  if (w > 1) {
    for (const auto& pp : factor(w)) {
      const Int p2 = pp.p * pp.p, p3 = p2 * pp.p;
      while (w % pp.p == 0 && u % p2 == 0 && v % p3 == 0) {
        w /= pp.p;
        u /= p2;
        v /= p3;
      }
    }
  }
  TwistPoint Q{u, v, w, D};
  check_model(E, Q);
  return Q;
}

PairingOutput pair(const PairingInput& in) {
  const auto& E = in.E;
  const auto& P = in.P;
  const auto& Q = in.Q;
  if (P.is_infinity()) throw InvalidInput("pair: P is the point at infinity");
  if (!on_curve(E, P)) throw InvalidInput("pair: P = " + to_string(P) + " is not on the curve");
  check_model(E, Q);
  const Int& D = Q.D;
  const Int w2 = Q.w * Q.w;
  const Int w3 = w2 * Q.w;
  if (D % gcd(Q.u, w2) != 0 || D % gcd(Q.v, w3) != 0) throw InvalidInput("pair: gcd(u,w^2) or gcd(v,w^3) does not divide D");

  const Int C3 = P.C() * P.C() * P.C();
  PairingOutput out;
  out.alpha = abs(P.A() * w2 - Q.u * P.C() * P.C());
  if (out.alpha == 0) throw InvalidInput("pair: degenerate input, alpha = |Aw^2 - uC^2| = 0");
  const Int C6v2 = C3 * C3 * Q.v * Q.v;
  out.G = gcd(out.alpha, C6v2);
  const Int lead = out.alpha / out.G;
  const Int twoBw3 = 2 * w3 * P.B();
  const Int denom = C3 * Q.v;  // signed
  const Int m = abs(denom);

  auto try_ell = [&](const Int& ell) -> std::optional<QuadForm> {
    const Int s = twoBw3 + ell * lead;
    if (s % denom != 0) return std::nullopt;
    const Int b = s / denom;
    const Int num = b * b + D;
    if (num % (4 * lead) != 0) return std::nullopt;
    return QuadForm{lead, b, num / (4 * lead)};
  };

  if (in.ell) {
    auto f = try_ell(*in.ell);
    if (!f) throw InvalidInput("pair: l = " + in.ell->get_str() + " does not give an integral form");
    out.form = *f;
    out.ell = *in.ell;
    return out;
  }

  // ℓ·lead ≡ -2w³B (mod m); solutions form ℓ0 + (m/g)Z. Along them b moves by
  // lead/g, and b mod 2·lead decides integrality, so ℓ in [0, 2m) is a full period.
  const Int g = gcd(lead, m);
  Int rhs = -twoBw3;
  if (rhs % g != 0) throw InvalidInput("pair: no l solves the linear congruence; hypotheses violated");
  const Int mg = m / g;
  Int ell0 = 0;
  if (mg > 1) {
    Int inv;
    const Int lg = lead / g;
    Int lgm = lg % mg;
    if (lgm < 0) lgm += mg;
    mpz_invert(inv.get_mpz_t(), lgm.get_mpz_t(), mg.get_mpz_t());
    Int r = (rhs / g) % mg;
    if (r < 0) r += mg;
    ell0 = (r * inv) % mg;
  }
  const Int period = 2 * m;
  for (Int ell = ell0; ell < period; ell += mg) {
    if (auto f = try_ell(ell)) {
      out.form = *f;
      out.ell = ell;
      return out;
    }
  }
  throw InvalidInput("pair: no admissible l within one period 2*C^3*|v|; hypotheses violated");
}

std::vector<QuadForm> pair_batch(const CurveQ& E, const std::vector<RationalPoint>& points, const TwistPoint& Q) {
  std::set<QuadForm> classes;
  for (const auto& P : points) {
    if (P.is_infinity()) continue;
    classes.insert(reduce(pair({E, P, Q, std::nullopt}).form));
  }
  return {classes.begin(), classes.end()};
}

bool check_inequivalence_criterion(const PairingOutput& o1, const PairingOutput& o2, const Int& D) {
  if (!equivalent(o1.form, o2.form)) return true;
  const Int l1 = o1.alpha / o1.G, l2 = o2.alpha / o2.G;
  return l1 == l2 || 4 * l1 * l2 >= D;
}

}  // namespace cnb
