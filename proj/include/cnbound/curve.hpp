#pragma once

#include "cnbound/lattice.hpp"
#include "cnbound/types.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cnb {

/// Short Weierstrass curve y² = x³ + a4·x + a6 over Q with integer coefficients.
class CurveQ {
 public:
  CurveQ(Int a4, Int a6, std::optional<Int> conductor = std::nullopt);

  /// The family E^(a): y² = x³ - a.
  static CurveQ family(const Int& a, std::optional<Int> conductor = std::nullopt);

  const Int& a4() const { return a4_; }
  const Int& a6() const { return a6_; }
  const std::optional<Int>& conductor() const { return conductor_; }

  /// Δ = -16(4a4³ + 27a6²).
  Int discriminant() const { return -16 * (4 * a4_ * a4_ * a4_ + 27 * a6_ * a6_); }
  /// j = 1728·4a4³ / (4a4³ + 27a6²).
  Rat j_invariant() const;
  /// x³ + a4·x + a6 at a rational x.
  Rat rhs(const Rat& x) const { return x * x * x + a4_ * x + a6_; }

  friend bool operator==(const CurveQ&, const CurveQ&) = default;

 private:
  Int a4_;
  Int a6_;
  std::optional<Int> conductor_;
};

/// A point (A/C², B/C³) with gcd(A, C) = gcd(B, C) = 1 and C > 0, or the point
/// at infinity (stored with C = 0).
class RationalPoint {
 public:
  RationalPoint() = default;  // infinity

  /// From affine rationals; the x denominator must be a square and y's the cube
  /// of its root.
  static RationalPoint affine(const Rat& x, const Rat& y);
  static RationalPoint from_integers(const Int& A, const Int& B, const Int& C = 1);
  static RationalPoint infinity() { return {}; }

  bool is_infinity() const { return C_ == 0; }
  const Int& A() const { return A_; }
  const Int& B() const { return B_; }
  const Int& C() const { return C_; }
  Rat x() const;
  Rat y() const;

  friend bool operator==(const RationalPoint&, const RationalPoint&) = default;

 private:
  Int A_ = 0;
  Int B_ = 1;
  Int C_ = 0;
};

bool on_curve(const CurveQ& E, const RationalPoint& P);

RationalPoint negate(const RationalPoint& P);
RationalPoint add_points(const CurveQ& E, const RationalPoint& P, const RationalPoint& Q);
RationalPoint sub_points(const CurveQ& E, const RationalPoint& P, const RationalPoint& Q);
RationalPoint multiply(const CurveQ& E, const RationalPoint& P, long n);
/// Σ coefficients[i]·basis[i] + offset.
RationalPoint combination(const CurveQ& E, const std::vector<RationalPoint>& basis, const std::vector<long>& coefficients,
                          const RationalPoint& offset = RationalPoint::infinity());

/// h_W(P) = log max(|A|, C²); P finite.
Real weil_height(const RationalPoint& P);
/// h_W(q) = log max(|num|, den) for q in lowest terms; h_W(0) = 0.
Real weil_height(const Rat& q);

/// Silverman's window: -lower <= ĥ(P) - ½h_W(P) <= upper.
struct HeightWindow {
  Real lower;
  Real upper;
};
HeightWindow silverman_window(const CurveQ& E);

/// ĥ with its error bound.
using HeightValue = Bounded;

struct HeightOptions {
  /// Abort when a coordinate of 2^k·P exceeds this many bits.
  std::size_t bit_cap = std::size_t(1) << 26;
};

/// ĥ(P) = ½·lim h_W(nP)/n² by x-only doubling, to within tol.
/// After k doublings the window divided by 4^k bounds the error; the value is
/// centred in that interval. The point at infinity has height 0 exactly.
HeightValue canonical_height(const CurveQ& E, const RationalPoint& P, const Real& tol, const HeightOptions& opts = {});

/// ⟨P, Q⟩ = ½(ĥ(P+Q) - ĥ(P) - ĥ(Q)).
Bounded height_pairing(const CurveQ& E, const RationalPoint& P, const RationalPoint& Q, const Real& tol,
                       const HeightOptions& opts = {});

/// Scale of a height-pairing Gram matrix. `half` uses ĥ as defined above;
/// `x_coordinate` uses 2ĥ = lim h_W(nP)/n², the scale in which published
/// regulators are tabulated.
enum class HeightScale { half, x_coordinate };

/// Symmetric Gram matrix of ⟨P_i, P_j⟩ (half scale) with entrywise error bounds.
struct HeightGram {
  Matrix<Real> value;
  Matrix<Real> error;
  std::size_t rank() const { return static_cast<std::size_t>(value.rows()); }
};
HeightGram height_gram(const CurveQ& E, const std::vector<RationalPoint>& basis, const Real& tol, const HeightOptions& opts = {});

/// Raised when the Gram determinant interval reaches zero, so independence is not certified.
class DependentBasis : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// det of the Gram matrix at the requested scale; empty basis gives 1.
Bounded regulator(const CurveQ& E, const std::vector<RationalPoint>& basis, const Real& tol,
                  HeightScale scale = HeightScale::x_coordinate, const HeightOptions& opts = {});
Bounded regulator_from_gram(const HeightGram& gram, HeightScale scale = HeightScale::x_coordinate);

struct DiameterOptions {
  std::size_t max_combinations = 1u << 20;
};
/// d(E) = max over δ ∈ {-1,0,1}^r of 2ĥ(Σ δ_i P_i), read off the Gram form.
Bounded diameter(const CurveQ& E, const std::vector<RationalPoint>& basis, const Real& tol,
                 const DiameterOptions& opts = {}, const HeightOptions& hopts = {});
Bounded diameter_from_gram(const HeightGram& gram, const DiameterOptions& opts = {});

/// δ(E) = ½h_W(j) + ⅓h_W(Δ) + 20/3.
Real delta_E(const CurveQ& E);

/// 1 + #{(x, y) in F_p²: y² = x³ + a4x + a6}, for any prime p.
Int count_points_mod_p(const CurveQ& E, const Int& p);

/// The rational torsion subgroup (including infinity) by Nagell–Lutz search.
std::vector<RationalPoint> torsion_points(const CurveQ& E);
std::size_t torsion_subgroup_order(const CurveQ& E);
/// Order of P if it is at most 12, else nullopt.
std::optional<int> small_order(const CurveQ& E, const RationalPoint& P);

/// A point (u/w², v/w³) on -D(y/2)² = x³ + a4x + a6, with w > 0 and no sixth
/// power dividing gcd(u³, v², w⁶).
struct TwistPoint {
  Int u;
  Int v;
  Int w = 1;
  Int D;

  friend bool operator==(const TwistPoint&, const TwistPoint&) = default;
};

/// -D v² = 4(u³ + a4 u w⁴ + a6 w⁶) and the normalization invariants.
bool twist_point_on_curve(const CurveQ& E, const TwistPoint& Q);

/// Result of a bounded-height enumeration.
struct BoundedHeightPoints {
  std::vector<RationalPoint> points;     ///< certified ĥ <= T/4 and gcd(C, w) = 1
  std::vector<std::vector<long>> coefficients;  ///< basis coefficients of each point (torsion part separate)
  std::vector<std::size_t> torsion_index;
  std::size_t ambiguous = 0;  ///< lattice vectors within error of the boundary, excluded
};

struct EnumerationOptions {
  std::size_t max_candidates = 5'000'000;
};

/// All P = Σ n_i P_i + t with ĥ(P) <= T/4 and gcd(C, w) = 1, ordered
/// lexicographically by coefficient vector then torsion index.
BoundedHeightPoints bounded_height_points(const CurveQ& E, const std::vector<RationalPoint>& basis,
                                          const std::vector<RationalPoint>& torsion, const Real& T, const Int& w,
                                          const HeightGram& gram, const EnumerationOptions& opts = {});

// ---------------------------------------------------------------------------
// Text forms: curve "a4,a6"; point "x,y" with rationals "A/C^2" written as
// "A/den"; infinity as "inf".
// ---------------------------------------------------------------------------
CurveQ parse_curve(std::string_view text);
std::string to_string(const CurveQ& E);
RationalPoint parse_point(std::string_view text);
std::string to_string(const RationalPoint& P);
Rat parse_rational(std::string_view text);
Int parse_integer(std::string_view text);

}  // namespace cnb
