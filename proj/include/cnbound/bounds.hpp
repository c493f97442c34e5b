#pragma once

#include "cnbound/curve.hpp"

#include <optional>
#include <vector>

namespace cnb {

/// Everything about E(Q) that the class-number bounds consume.
struct CurveProfile {
  CurveQ E;
  std::vector<RationalPoint> basis;
  std::size_t rank = 0;
  std::size_t torsion_order = 1;
  HeightGram gram;     ///< half scale
  HeightScale scale = HeightScale::x_coordinate;
  Bounded regulator;   ///< at `scale`
  Bounded diameter;    ///< d(E) = max 2ĥ(Σ δ_i P_i)
  Real delta;          ///< δ(E)
  Real omega;          ///< Ω_r
};

/// Validates the basis (reporting the first bad index) and computes every field.
CurveProfile make_profile(const CurveQ& E, const std::vector<RationalPoint>& basis, const Real& tol,
                          HeightScale scale = HeightScale::x_coordinate, const HeightOptions& opts = {});

/// π^{r/2} / Γ(r/2 + 1).
Real omega_r(unsigned r);

/// |E_tor|·Ω_r / (2^{r+1}·√R); r >= 1.
Bounded c_E(const CurveProfile& profile);
/// c(E)·Π_{p | w} (1 - 1/|E(F_p)|).
Bounded c_E_Q(const CurveProfile& profile, const TwistPoint& Q);
/// 2·3^r·r·√d(E)·c(E)·S(w).
Bounded c_hat(const CurveProfile& profile, const TwistPoint& Q);
/// log(D/(|u| + w²)) - δ(E).
Real T_E(const CurveProfile& profile, const Int& D, const TwistPoint& Q);

/// (|u| + w²)·exp(δ + d) < D < (|u| + w²)²·max(|u|, w²)²/v⁴, with uv != 0.
/// The right side is decided exactly; the left uses the upper end of d's
/// interval plus a rounding margin, so `true` is never an artefact of rounding.
bool is_suitable(const CurveProfile& profile, const Int& D, const TwistPoint& Q);

struct BoundReport {
  Int D;
  TwistPoint Q;
  Real T_E;
  Bounded c_EQ;
  Bounded c_hat;
  /// c_EQ·T^{r/2} - ĉ·T^{(r-1)/2}; only meaningful when `suitable` and T_E > 0.
  Bounded lower_bound;
  bool suitable = false;
  /// (1/7000)·log D·Π_{p | D, p != D}(1 - ⌊2√p⌋/(p + 1)); display only.
  Real ggz;

  bool certified() const { return suitable && T_E > 0; }
};

BoundReport class_number_lower_bound(const CurveProfile& profile, const Int& D, const TwistPoint& Q);

/// (c(E)/5)·(log D)^{r/2}/log log D; D >= 16.
Bounded abstract_theorem_bound(const CurveProfile& profile, const Int& D);

Real ggz_bound(const Int& D);

/// Constants behind the ratio estimate c(E,Q)/c(E) > 0.2158/log log D. They are
/// kept for the empirical check only.
namespace ratio_constants {
inline constexpr double kRatio = 0.2158;
inline constexpr double kRosserSchoenfeld = 1.255056;
inline constexpr double kEulerGamma = 0.5772156649015329;
}  // namespace ratio_constants

/// Π_{p | w} (1 - 1/|E(F_p)|), exactly.
Rat c_ratio(const CurveQ& E, const Int& w);
/// 0.2158 / log log D; D >= 16.
Real c_ratio_threshold(const Int& D);
/// ⌊log₂(X^{1/2})⌋² / 1.25.
Real lambda_X(const Real& X);

}  // namespace cnb
