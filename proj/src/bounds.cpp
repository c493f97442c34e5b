#include "cnbound/bounds.hpp"

#include "cnbound/arith.hpp"

#include <boost/math/constants/constants.hpp>

namespace cnb {

namespace {

// Slack for the last bits of Real arithmetic.
const Real kRounding("1e-40");

Bounded from_interval(const Real& lo, const Real& hi) { return {(lo + hi) / 2, (hi - lo) / 2 + kRounding}; }

void require_rank(const CurveProfile& p, const char* what) {
  if (p.rank == 0) throw InvalidInput(std::string(what) + ": rank 0 profile");
}

}  // namespace

Real omega_r(unsigned r) {
  const Real half_r = Real(r) / 2;
  return pow(boost::math::constants::pi<Real>(), half_r) / tgamma(half_r + 1);
}

CurveProfile make_profile(const CurveQ& E, const std::vector<RationalPoint>& basis, const Real& tol, HeightScale scale,
                          const HeightOptions& opts) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i].is_infinity() || !on_curve(E, basis[i]))
      throw InvalidInput("basis point " + std::to_string(i) + " (" + to_string(basis[i]) + ") is not on the curve");
  CurveProfile p{E, basis, 0, 1, {}, HeightScale::x_coordinate, {}, {}, 0, 0};
  p.rank = basis.size();
  p.torsion_order = torsion_subgroup_order(E);
  p.gram = height_gram(E, basis, tol, opts);
  p.scale = scale;
  p.regulator = regulator_from_gram(p.gram, scale);
  p.diameter = diameter_from_gram(p.gram);
  p.delta = delta_E(E);
  p.omega = omega_r(static_cast<unsigned>(p.rank));
  return p;
}

Bounded c_E(const CurveProfile& profile) {
  require_rank(profile, "c(E)");
  const Real r_lo = profile.regulator.lower(), r_hi = profile.regulator.upper();
  if (!(r_lo > 0)) throw InvalidInput("c(E): regulator interval reaches zero");
  const Real k = Real(profile.torsion_order) * profile.omega / pow(Real(2), Real(profile.rank + 1));
  return from_interval(k / sqrt(r_hi), k / sqrt(r_lo));
}

Rat c_ratio(const CurveQ& E, const Int& w) {
  Rat prod = 1;
  if (abs(w) <= 1) return prod;
  for (const auto& pp : factor(w)) {
    const Int n = count_points_mod_p(E, pp.p);
    prod *= Rat(n - 1, n);
  }
  prod.canonicalize();
  return prod;
}

Bounded c_E_Q(const CurveProfile& profile, const TwistPoint& Q) {
  const Bounded c = c_E(profile);
  const Real f = to_real(c_ratio(profile.E, Q.w));
  return {c.value * f, c.error * f};
}

Bounded c_hat(const CurveProfile& profile, const TwistPoint& Q) {
  const Bounded c = c_E(profile);
  const auto r = static_cast<unsigned>(profile.rank);
  const Real k = 2 * pow(Real(3), Real(r)) * Real(r) * to_real(squarefree_divisor_count(Q.w));
  const Real d_lo = profile.diameter.lower() > 0 ? profile.diameter.lower() : Real(0);
  return from_interval(k * sqrt(d_lo) * c.lower(), k * sqrt(profile.diameter.upper()) * c.upper());
}

Real T_E(const CurveProfile& profile, const Int& D, const TwistPoint& Q) {
  if (D <= 0) throw InvalidInput("T_E: D must be positive");
  return log_abs(D) - log_abs(abs(Q.u) + Q.w * Q.w) - profile.delta;
}

bool is_suitable(const CurveProfile& profile, const Int& D, const TwistPoint& Q) {
  if (Q.u == 0 || Q.v == 0 || D <= 0) return false;
  const Int s = abs(Q.u) + Q.w * Q.w;
  const Int mx = std::max(Int(abs(Q.u)), Int(Q.w * Q.w));
  const Int v2 = Q.v * Q.v;
  if (!(D * v2 * v2 < s * s * mx * mx)) return false;
  return log_abs(s) + profile.delta + profile.diameter.upper() + kRounding < log_abs(D);
}

Real ggz_bound(const Int& D) {
  if (D < 2) throw InvalidInput("ggz_bound: D must be at least 2");
  Real prod = 1;
  for (const auto& pp : factor(D)) {
    if (pp.p == D) continue;
    Int s;
    mpz_sqrt(s.get_mpz_t(), Int(4 * pp.p).get_mpz_t());  // ⌊2√p⌋ = ⌊√(4p)⌋
    prod *= 1 - to_real(s) / to_real(Int(pp.p + 1));
  }
  return log_abs(D) * prod / 7000;
}

BoundReport class_number_lower_bound(const CurveProfile& profile, const Int& D, const TwistPoint& Q) {
  require_rank(profile, "class_number_lower_bound");
  BoundReport rep;
  rep.D = D;
  rep.Q = Q;
  rep.T_E = T_E(profile, D, Q);
  rep.c_EQ = c_E_Q(profile, Q);
  rep.c_hat = c_hat(profile, Q);
  rep.suitable = is_suitable(profile, D, Q);
  rep.ggz = ggz_bound(D);
  if (rep.T_E > 0) {
    const Real r = Real(profile.rank);
    const Real tr = pow(rep.T_E, r / 2), tr1 = pow(rep.T_E, (r - 1) / 2);
    rep.lower_bound = from_interval(rep.c_EQ.lower() * tr - rep.c_hat.upper() * tr1,
                                    rep.c_EQ.upper() * tr - rep.c_hat.lower() * tr1);
  }
  return rep;
}

Bounded abstract_theorem_bound(const CurveProfile& profile, const Int& D) {
  if (D < 16) throw InvalidInput("abstract_theorem_bound: D must be at least 16");
  const Bounded c = c_E(profile);
  const Real logD = log_abs(D);
  const Real k = pow(logD, Real(profile.rank) / 2) / log(logD) / 5;
  return {c.value * k, c.error * k};
}

Real c_ratio_threshold(const Int& D) {
  if (D < 16) throw InvalidInput("c_ratio_threshold: D must be at least 16");
  return Real("0.2158") / log(log_abs(D));
}

Real lambda_X(const Real& X) {
  const Real l = floor(log2(sqrt(X)));
  return l * l / Real("1.25");
}

}  // namespace cnb
