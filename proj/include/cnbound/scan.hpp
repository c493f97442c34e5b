#pragma once

#include "cnbound/bounds.hpp"
#include "cnbound/curve.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cnb {

// ---------------------------------------------------------------------------
// ρ_m^(a)(M) = #{n mod M : a·n⁶ ≡ m³ (mod M)}
// ---------------------------------------------------------------------------

/// A closed-form ρ value, or the reason no listed case applies.
struct RhoValue {
  bool handled = true;
  Int value = 0;
  std::string note;  ///< why unhandled
};

/// Prime-power case formulas taken verbatim (multiplied over M's
/// factorization). p ∈ {2, 3} dividing am, branches that are not listed and
/// branches whose m/p^e is not an integer come back unhandled.
RhoValue rho_closed(const Int& m, const Int& a, const Int& M);

/// Derived formulas valid for every p, a, m != 0 (see rho_prime_power_corrected).
Int rho_closed_corrected(const Int& m, const Int& a, const Int& M);
/// With e = ord_p(a), k = ord_p(m), c = (a/p^e)^{-1}(m/p^k)³:
///   α <= 3k            p^{α - max(0, ⌈(α-e)/6⌉)}
///   6 ∤ 3k - e or e>3k 0
///   otherwise          #{x unit mod p^{α-3k} : x⁶ ≡ c}·p^{3k - (3k-e)/6}
Int rho_prime_power_corrected(const Int& m, const Int& a, const Int& p, unsigned alpha);

struct RhoOptions {
  std::uint64_t max_modulus = 10'000'000;
};
/// Direct count over n in [0, M).
Int rho_brute(const Int& m, const Int& a, const Int& M, const RhoOptions& opts = {});

// ---------------------------------------------------------------------------
// Scanning -d·t² = m³ - a·n⁶
// ---------------------------------------------------------------------------

struct ScanConfig {
  Int a = 1;
  Int X = 1;
  Int T = 1;
  Rat A = Rat(1, 4);
  Rat B = Rat(1, 4);
  Int h = 1;
  Int modulus = 4;
  std::optional<Int> conductor;  ///< N^(a); must be a multiple of 3
  int W = 1;                     ///< root number of E^(a)
  unsigned threads = 1;
  /// class_number_if_computed is filled for D up to this value (0 disables).
  Int class_number_limit = 0;
};

/// Checks 0 < A < 2B < 2/3, gcd(h, modulus) = 1, T >= 1, X >= 1 and the
/// conductor; throws InvalidInput naming the first violation.
void validate(const ScanConfig& c);

/// Integer ranges M <= m <= 2M, N <= n <= 2N, T <= t <= 2T, decided exactly.
struct ScanRanges {
  Int m_lo, m_hi, n_lo, n_hi, t_lo, t_hi;
};
ScanRanges scan_ranges(const ScanConfig& c);

struct ScanRecord {
  Int a, m, n, t, d, D;
  TwistPoint Q;
  std::optional<bool> parity_even_rank;  ///< empty when gcd(D, N) > 1 or no conductor
  std::optional<BoundReport> report;     ///< present when a profile was supplied
  std::optional<Int> class_number;
};

struct ScanResult {
  std::vector<ScanRecord> records;  ///< ordered by (m, n, t)
  std::size_t uncertified = 0;      ///< d whose squarefreeness was not decided
};

/// Every (m, n, t) in range with gcd(t, 6am) = gcd(n, am) = 1,
/// m ≡ h, n ≡ 0 (mod modulus), d = (an⁶ - m³)/t² squarefree, 0 < d < X.
/// Work is sharded by n over `threads` workers; output does not depend on it.
ScanResult scan(const ScanConfig& config, const CurveProfile* profile = nullptr);

/// d -> N_h^(a)(d; X, T).
std::map<Int, std::size_t> summatory_count(const std::vector<ScanRecord>& records);
std::map<Int, std::size_t> summatory_count(const ScanConfig& config);

/// (-D | N)·W. gcd(D, N) > 1 is rejected.
int parity_sign(const Int& D, const Int& conductor, int W);

// ---------------------------------------------------------------------------
// Families y² = x³ - a_r(t) of rank r over Q(t)
// ---------------------------------------------------------------------------

/// a_r(t) for r in {3, 4, 5}, exactly (a_5 carries a 64/27 factor).
Rat stewart_top_coefficient(int r, const Int& t);
/// a_r(t)·u⁶ with the least u making it integral; y² = x³ - a·u⁶ is isomorphic.
Int stewart_top_integral_model(int r, const Int& t);

}  // namespace cnb
