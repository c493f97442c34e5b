#pragma once

#include "cnbound/curve.hpp"
#include "cnbound/forms.hpp"

#include <optional>
#include <vector>

namespace cnb {

/// Writes the twist point (x, y) on -D(y/2)² = x³ + a4x + a6 as (u/w², v/w³)
/// with w minimal. Rejects points off the model and uv = 0.
TwistPoint normalize_twist_point(const CurveQ& E, const Int& D, const Rat& x, const Rat& y);
/// Same from a possibly redundant triple: strips sixth powers from gcd(u³, v², w⁶).
TwistPoint normalize_twist_point(const CurveQ& E, const Int& D, Int u, Int v, Int w);

struct PairingInput {
  CurveQ E;
  RationalPoint P;
  TwistPoint Q;
  /// Fix ℓ instead of searching; must give an integral form.
  std::optional<Int> ell;
};

struct PairingOutput {
  QuadForm form;  ///< as produced, not reduced
  Int alpha;
  Int G;
  Int ell;
};

/// F_{P,Q}: leading coefficient α/G, middle (2w³B + ℓα/G)/(C³v), discriminant -D.
/// Without an explicit ℓ, the smallest nonnegative admissible ℓ is used.
PairingOutput pair(const PairingInput& in);

/// Distinct reduced forms F_{P,Q} over the given points, sorted. The point at
/// infinity carries no form and is skipped.
std::vector<QuadForm> pair_batch(const CurveQ& E, const std::vector<RationalPoint>& points, const TwistPoint& Q);

/// False only when o1, o2 are equivalent yet α₁/G₁ ≠ α₂/G₂ and α₁α₂/(G₁G₂) < D/4.
bool check_inequivalence_criterion(const PairingOutput& o1, const PairingOutput& o2, const Int& D);

}  // namespace cnb
