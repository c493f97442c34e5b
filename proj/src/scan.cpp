#include "cnbound/scan.hpp"

#include "cnbound/arith.hpp"
#include "cnbound/forms.hpp"

#include <algorithm>
#include <thread>
#include <tuple>

namespace cnb {

namespace {

Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int inverse_mod(const Int& a, const Int& m) {
  Int r;
  if (!mpz_invert(r.get_mpz_t(), mod_floor(a, m).get_mpz_t(), m.get_mpz_t()))
    throw InvalidInput("inverse_mod: " + a.get_str() + " not invertible mod " + m.get_str());
  return r;
}

Int ipow(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

RhoValue unhandled(std::string why) { return {false, 0, std::move(why)}; }

// ρ̃: p ∤ am
RhoValue rho_tilde(const Int& m, const Int& a, const Int& p, unsigned alpha) {
  if (p == 2) {
    if (alpha == 1) return {true, 1, {}};
    int prod = 1;
    for (const auto& q : factor(a * m)) prod *= kronecker_symbol(-1, q.p);
    return {true, 1 + prod, {}};
  }
  if (p == 3) {
    const int l = kronecker_symbol(inverse_mod(a, 3) * m, 3);
    if (alpha == 1) return {true, 1 + l, {}};
    const int c = cubic_residue_symbol_mod9(inverse_mod(a, 9));
    return {true, Int(3 * (1 + l) * (1 + c) / 2), {}};
  }
  if (a % p == 0) return unhandled("a^{-1} undefined mod " + p.get_str());
  const Int ai = inverse_mod(a, p);
  const int c = cubic_residue_symbol(ai, p);
  const int l = kronecker_symbol(ai * m, p);
  const int l3 = kronecker_symbol(-3, p);
  return {true, Int((1 + c) * (1 + l) * (2 + l3) / 2), {}};
}

// ρ̂: p >= 5, p ∤ a, p | m
RhoValue rho_hat(const Int& m, const Int& a, const Int& p, unsigned alpha) {
  const unsigned k = valuation(m, p);
  if (alpha <= 3 * k) return {true, Int(2 * static_cast<long>(alpha) - 1), {}};
  if (k % 2 != 0) return {true, 0, {}};
  return rho_tilde(m / ipow(p, k), a, p, alpha - 3 * k);
}

RhoValue rho_case_prime_power(const Int& m, const Int& a, const Int& p, unsigned alpha) {
  if (p == 2 || p == 3) {
    if ((a * m) % p == 0) return unhandled("p = " + p.get_str() + " divides am");
    return rho_tilde(m, a, p, alpha);
  }
  if (a % p != 0) return m % p != 0 ? rho_tilde(m, a, p, alpha) : rho_hat(m, a, p, alpha);
  const unsigned e = valuation(a, p), k = valuation(m, p);
  if (alpha <= 3 * k && alpha <= e) return {true, ipow(p, alpha), {}};
  if (alpha <= 3 * k) return {true, Int(2 * (static_cast<long>(alpha) - static_cast<long>(e)) - 1), {}};
  if (3 * k != e && 3 * k < e) return unhandled("p | a with 3 ord_p(m) < ord_p(a) < alpha: no listed branch");
  const Int pe = ipow(p, e);
  if (m % pe != 0) return unhandled("m / p^ord_p(a) is not an integer");
  if (3 * k > e) return rho_hat(m / pe, a, p, alpha - e);
  return rho_tilde(m / pe, a, p, alpha - e);
}

// #{x unit mod p^beta : x⁶ ≡ c}, c a unit
Int sixth_root_count(const Int& p, unsigned beta, const Int& c) {
  if (p == 2) {
    if (beta == 1) return 1;
    if (beta == 2) return mod_floor(c, 4) == 1 ? 2 : 0;
    return mod_floor(c, 8) == 1 ? 4 : 0;
  }
  if (p == 3) {
    if (beta == 1) return mod_floor(c, 3) == 1 ? 2 : 0;
    return mod_floor(c, 9) == 1 ? 6 : 0;
  }
  const Int pm1 = p - 1;
  const unsigned long g = mpz_fdiv_ui(pm1.get_mpz_t(), 6) == 0 ? 6 : (mpz_fdiv_ui(pm1.get_mpz_t(), 3) == 0 ? 3 : 2);
  Int r;
  const Int e = pm1 / g;
  mpz_powm(r.get_mpz_t(), mod_floor(c, p).get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  return r == 1 ? Int(static_cast<unsigned long>(g)) : Int(0);
}

}  // namespace

RhoValue rho_closed(const Int& m, const Int& a, const Int& M) {
  if (M < 1) throw InvalidInput("rho: modulus must be positive");
  if (m == 0 || a == 0) throw InvalidInput("rho: m and a must be nonzero");
  RhoValue out{true, 1, {}};
  if (M == 1) return out;
  for (const auto& pp : factor(M)) {
    const RhoValue v = rho_case_prime_power(m, a, pp.p, pp.e);
    if (!v.handled) return v;
    out.value *= v.value;
  }
  return out;
}

Int rho_prime_power_corrected(const Int& m, const Int& a, const Int& p, unsigned alpha) {
  if (m == 0 || a == 0) throw InvalidInput("rho: m and a must be nonzero");
  const long e = valuation(a, p), k = valuation(m, p), al = alpha;
  if (al <= 3 * k) {
    const long need = al - e > 0 ? (al - e + 5) / 6 : 0;
    return ipow(p, static_cast<unsigned long>(al - need));
  }
  const long gap = 3 * k - e;
  if (gap < 0 || gap % 6 != 0) return 0;
  const unsigned beta = static_cast<unsigned>(al - 3 * k);
  const Int modulus = p == 2 ? Int(8) : p == 3 ? Int(9) : p;
  const Int a0 = a / ipow(p, e), m0 = m / ipow(p, k);
  const Int c = mod_floor(inverse_mod(a0, modulus) * m0 * m0 * m0, modulus);
  return sixth_root_count(p, beta, c) * ipow(p, static_cast<unsigned long>(3 * k - gap / 6));
}

Int rho_closed_corrected(const Int& m, const Int& a, const Int& M) {
  if (M < 1) throw InvalidInput("rho: modulus must be positive");
  Int out = 1;
  if (M == 1) return out;
  for (const auto& pp : factor(M)) out *= rho_prime_power_corrected(m, a, pp.p, pp.e);
  return out;
}

Int rho_brute(const Int& m, const Int& a, const Int& M, const RhoOptions& opts) {
  if (M < 1) throw InvalidInput("rho: modulus must be positive");
  if (M > opts.max_modulus) throw CapExceeded("rho_brute: modulus " + M.get_str() + " above the enumeration cap");
  const std::uint64_t mod = M.get_ui();
  const std::uint64_t target = mod_floor(m * m * m, M).get_ui();
  const std::uint64_t am = mod_floor(a, M).get_ui();
  auto mul = [mod](std::uint64_t x, std::uint64_t y) { return x * y % mod; };  // mod < 2^32
  std::uint64_t count = 0;
  for (std::uint64_t n = 0; n < mod; ++n) {
    const std::uint64_t n2 = mul(n, n);
    const std::uint64_t n6 = mul(mul(n2, n2), n2);
    if (mul(am, n6) == target) ++count;
  }
  return Int(static_cast<unsigned long>(count));
}

// ---------------------------------------------------------------------------

void validate(const ScanConfig& c) {
  if (c.a <= 0) throw InvalidInput("scan: a must be positive");
  if (c.X < 1) throw InvalidInput("scan: X must be at least 1");
  if (c.T < 1) throw InvalidInput("scan: T must be at least 1");
  if (!(0 < c.A && c.A < 2 * c.B && 2 * c.B < Rat(2, 3)))
    throw InvalidInput("scan: exponents must satisfy 0 < A < 2B < 2/3 (A=" + c.A.get_str() + ", B=" + c.B.get_str() + ")");
  if (c.modulus < 1) throw InvalidInput("scan: modulus must be positive");
  if (gcd(c.h, c.modulus) != 1) throw InvalidInput("scan: gcd(h, modulus) must be 1");
  if (c.conductor && (*c.conductor <= 0 || *c.conductor % 3 != 0))
    throw InvalidInput("scan: conductor must be a positive multiple of 3");
  if (c.W != 1 && c.W != -1) throw InvalidInput("scan: root number W must be +1 or -1");
  if (c.threads == 0) throw InvalidInput("scan: threads must be at least 1");
}

ScanRanges scan_ranges(const ScanConfig& c) {
  validate(c);
  const Int Ap = c.A.get_num(), Aq = c.A.get_den(), Bp = c.B.get_num(), Bq = c.B.get_den();
  const unsigned long aq = Aq.get_ui(), ap = Ap.get_ui(), bq = Bq.get_ui(), bp = Bp.get_ui();
  const Int TA = ipow(c.T, 3 * ap), XA = ipow(c.X, aq);  // (T^A X^{1/3})^{3q}
  const Int TB = ipow(c.T, 6 * bp), XB = ipow(c.X, bq);  // (T^B X^{1/6})^{6q}
  const Int rhsA = TA * XA, rhsB = TB * XB;
  auto m_ge_M = [&](const Int& m) { return ipow(4 * m, 3 * aq) >= rhsA; };
  auto m_le_2M = [&](const Int& m) { return ipow(2 * m, 3 * aq) <= rhsA; };
  auto n_ge_N = [&](const Int& n) { return ipow(ipow(2 * n, 6) * c.a, bq) >= rhsB; };
  auto n_le_2N = [&](const Int& n) { return ipow(ipow(n, 6) * c.a, bq) <= rhsB; };

  const Real X = to_real(c.X), T = to_real(c.T), a = to_real(c.a);
  const Real M = pow(T, to_real(c.A)) * pow(X, Real(1) / 3) / 4;
  const Real N = pow(a, Real(-1) / 6) * pow(T, to_real(c.B)) * pow(X, Real(1) / 6) / 2;
  auto to_int = [](const Real& x) {
    Int z;
    mpfr_get_z(z.get_mpz_t(), x.backend().data(), MPFR_RNDD);
    return z;
  };

  ScanRanges r;
  r.m_lo = std::max(Int(1), Int(to_int(M) - 2));
  while (!m_ge_M(r.m_lo)) ++r.m_lo;
  while (r.m_lo > 1 && m_ge_M(r.m_lo - 1)) --r.m_lo;
  r.m_hi = to_int(2 * M) + 2;
  while (r.m_hi > 0 && !m_le_2M(r.m_hi)) --r.m_hi;
  r.n_lo = std::max(Int(1), Int(to_int(N) - 2));
  while (!n_ge_N(r.n_lo)) ++r.n_lo;
  while (r.n_lo > 1 && n_ge_N(r.n_lo - 1)) --r.n_lo;
  r.n_hi = to_int(2 * N) + 2;
  while (r.n_hi > 0 && !n_le_2N(r.n_hi)) --r.n_hi;
  r.t_lo = c.T;
  r.t_hi = 2 * c.T;
  return r;
}

namespace {

Int first_in_class(const Int& lo, const Int& residue, const Int& modulus) {
  Int x = lo + mod_floor(residue - lo, modulus);
  return x;
}

void scan_shard(const ScanConfig& c, const CurveProfile* profile, const ScanRanges& r, const std::vector<Int>& ns,
                ScanResult& out) {
  const Int m_first = first_in_class(r.m_lo, c.h, c.modulus);
  for (const Int& n : ns) {
    const Int n6 = c.a * ipow(n, 6);
    for (Int m = m_first; m <= r.m_hi; m += c.modulus) {
      if (gcd(n, c.a * m) != 1) continue;
      const Int diff = n6 - m * m * m;
      if (diff <= 0) continue;
      for (Int t = r.t_lo; t <= r.t_hi; ++t) {
        if (gcd(t, 6 * c.a * m) != 1) continue;
        const Int t2 = t * t;
        if (diff % t2 != 0) continue;
        const Int d = diff / t2;
        if (d >= c.X) continue;
        const SquarefreeVerdict v = squarefree_by_trial_division(d);
        if (v == SquarefreeVerdict::not_squarefree) continue;
        if (v == SquarefreeVerdict::probably_squarefree) {
          ++out.uncertified;
          continue;
        }
        ScanRecord rec;
        rec.a = c.a;
        rec.m = m;
        rec.n = n;
        rec.t = t;
        rec.d = d;
        const bool odd = d % 4 == 3;
        rec.D = odd ? d : 4 * d;
        rec.Q = TwistPoint{m, odd ? Int(2 * t) : t, n, rec.D};
        if (c.conductor && gcd(rec.D, *c.conductor) == 1) rec.parity_even_rank = kronecker_symbol(-rec.D, *c.conductor) == c.W;
        if (profile) rec.report = class_number_lower_bound(*profile, rec.D, rec.Q);
        if (c.class_number_limit > 0 && rec.D <= c.class_number_limit) rec.class_number = class_number(rec.D);
        out.records.push_back(std::move(rec));
      }
    }
  }
}

}  // namespace

ScanResult scan(const ScanConfig& config, const CurveProfile* profile) {
  const ScanRanges r = scan_ranges(config);
  if (profile && (profile->E.a4() != 0 || profile->E.a6() != -config.a))
    throw InvalidInput("scan: profile curve is not y^2 = x^3 - a");
  std::vector<Int> ns;
  for (Int n = first_in_class(r.n_lo, 0, config.modulus); n <= r.n_hi; n += config.modulus) ns.push_back(n);

  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(config.threads, ns.size()));
  std::vector<ScanResult> parts(workers);
  std::vector<std::thread> pool;
  const std::size_t per = ns.empty() ? 0 : (ns.size() + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = std::min(ns.size(), w * per), hi = std::min(ns.size(), lo + per);
    std::vector<Int> shard(ns.begin() + lo, ns.begin() + hi);
    pool.emplace_back([&, w, shard = std::move(shard)] { scan_shard(config, profile, r, shard, parts[w]); });
  }
  for (auto& t : pool) t.join();

  ScanResult out;
  for (auto& p : parts) {
    out.uncertified += p.uncertified;
    std::move(p.records.begin(), p.records.end(), std::back_inserter(out.records));
  }
  std::sort(out.records.begin(), out.records.end(), [](const ScanRecord& x, const ScanRecord& y) {
    return std::tie(x.m, x.n, x.t) < std::tie(y.m, y.n, y.t);
  });
  return out;
}

std::map<Int, std::size_t> summatory_count(const std::vector<ScanRecord>& records) {
  std::map<Int, std::size_t> out;
  for (const auto& r : records) ++out[r.d];
  return out;
}

std::map<Int, std::size_t> summatory_count(const ScanConfig& config) { return summatory_count(scan(config).records); }

int parity_sign(const Int& D, const Int& conductor, int W) {
  if (D <= 0 || conductor <= 0) throw InvalidInput("parity_sign: D and conductor must be positive");
  if (W != 1 && W != -1) throw InvalidInput("parity_sign: W must be +1 or -1");
  if (gcd(D, conductor) != 1) throw InvalidInput("parity_sign: gcd(D, N) > 1, sign not determined");
  return kronecker_symbol(-D, conductor) * W;
}

// ---------------------------------------------------------------------------

Rat stewart_top_coefficient(int r, const Int& t) {
  auto poly = [&t](std::initializer_list<long> coeffs) {  // highest degree first
    Int acc = 0;
    for (long c : coeffs) acc = acc * t + c;
    return acc;
  };
  switch (r) {
    case 3:
      return Rat(432 * poly({4, 0, -8, 0, 40, 0, -31}));
    case 4:
      return Rat(poly({6075, 38070, 81513, 83106, 67797, 39528, 27270, 58968, 89181, 84834, 52353, 23814, -9261}));
    case 5: {
      const Int t6 = ipow(t, 6);
      Rat q(64 * (t6 * t6 * t6 + 2973 * t6 * t6 - 369249 * t6 + 11764900), 27);
      q.canonicalize();
      return q;
    }
    default:
      throw InvalidInput("stewart_top_coefficient: r must be 3, 4 or 5");
  }
}

Int stewart_top_integral_model(int r, const Int& t) {
  const Rat q = stewart_top_coefficient(r, t);
  Int u = 1;
  if (q.get_den() != 1)
    for (const auto& pp : factor(q.get_den())) u *= ipow(pp.p, (pp.e + 5) / 6);
  const Int scaled = q.get_num() * (ipow(u, 6) / q.get_den());
  return scaled;
}

}  // namespace cnb
