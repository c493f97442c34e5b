#include "CLI11.hpp"
#include "cnbound/arith.hpp"
#include "cnbound/bounds.hpp"
#include "cnbound/forms.hpp"
#include "cnbound/io.hpp"
#include "cnbound/pairing.hpp"
#include "cnbound/scan.hpp"

#include <chrono>
#include <fstream>
#include <iostream>

using namespace cnb;

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kError = 2;
constexpr int kFindings = 1;   // rho mismatch, failed self-check
constexpr int kNoRecords = 3;  // scan produced nothing

std::string one_line(std::string s) {
  for (char& c : s)
    if (c == '\n' || c == '\r') c = ' ';
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

struct Clock {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); }
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write output file '" + path + "'");
  out << text;
}

std::vector<RationalPoint> parse_points(const std::vector<std::string>& texts) {
  std::vector<RationalPoint> out;
  for (const auto& t : texts) out.push_back(parse_point(t));
  return out;
}

TwistPoint parse_twist(const CurveQ& E, const Int& D, const std::string& text) {
  const RationalPoint q = parse_point(text);
  if (q.is_infinity()) throw InvalidInput("twist point must be finite");
  return normalize_twist_point(E, D, q.x(), q.y());
}

// --- option bundles --------------------------------------------------------

struct Common {
  std::string format = "kv";
  std::string output;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "kv or csv")->capture_default_str();
  app->add_option("--output", c.output, "write to this file instead of stdout");
}

struct CurveArgs {
  std::string curve;
  std::vector<std::string> points;
  std::string tol = "1e-6";
  std::string scale = "x_coordinate";
};

void add_curve(CLI::App* app, CurveArgs& c, bool need_curve = true) {
  auto* o = app->add_option("--curve", c.curve, "a4,a6");
  if (need_curve) o->required();
  app->add_option("--point", c.points, "basis point x,y (repeatable)")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  app->add_option("--tol", c.tol, "height tolerance")->capture_default_str();
  app->add_option("--scale", c.scale, "regulator scale: x_coordinate or half")->capture_default_str();
}

HeightScale parse_scale(const std::string& s) {
  if (s == "x_coordinate") return HeightScale::x_coordinate;
  if (s == "half") return HeightScale::half;
  throw InvalidInput("unknown scale '" + s + "' (expected x_coordinate or half)");
}

Real parse_tol(const std::string& s) {
  Real t;
  try {
    t = Real(s);
  } catch (const std::exception&) {
    throw InvalidInput("invalid tolerance '" + s + "'");
  }
  if (!(t > 0)) throw InvalidInput("tolerance must be positive");
  return t;
}

// --- subcommands -----------------------------------------------------------

int cmd_profile(const CurveArgs& ca, const Common& co) {
  Clock clock;
  const CurveQ E = parse_curve(ca.curve);
  const CurveProfile p = make_profile(E, parse_points(ca.points), parse_tol(ca.tol), parse_scale(ca.scale));
  const OutputFormat fmt = parse_output_format(co.format);
  Row cfg{{"curve", ca.curve}, {"tol", ca.tol}, {"scale", ca.scale}};
  for (std::size_t i = 0; i < ca.points.size(); ++i) cfg.emplace_back("point" + std::to_string(i), ca.points[i]);
  const std::string body = render_section("profile", {profile_row(p)}, fmt);
  emit(co.output, render_manifest({"profile", cfg, clock.seconds(), {{"records", "1"}}}) + body);
  return kOk;
}

struct PairArgs {
  std::string curve, P, Q, D, ell;
};

int cmd_pair(const PairArgs& a, const Common& co) {
  Clock clock;
  const CurveQ E = parse_curve(a.curve);
  const Int D = parse_integer(a.D);
  PairingInput in{E, parse_point(a.P), parse_twist(E, D, a.Q), std::nullopt};
  if (!a.ell.empty()) in.ell = parse_integer(a.ell);
  const PairingOutput o = pair(in);
  Row row{{"P", to_string(in.P)},
          {"u", in.Q.u.get_str()},
          {"v", in.Q.v.get_str()},
          {"w", in.Q.w.get_str()},
          {"D", D.get_str()},
          {"alpha", o.alpha.get_str()},
          {"G", o.G.get_str()},
          {"ell", o.ell.get_str()},
          {"form", to_string(o.form)},
          {"reduced", to_string(reduce(o.form))}};
  Row cfg{{"curve", a.curve}, {"P", a.P}, {"Q", a.Q}, {"D", a.D}, {"ell", a.ell.empty() ? "auto" : a.ell}};
  emit(co.output, render_manifest({"pair", cfg, clock.seconds(), {{"records", "1"}}}) +
                      render_section("pairing", {row}, parse_output_format(co.format)));
  return kOk;
}

struct BoundArgs {
  std::string D, Q;
};

int cmd_bound(const CurveArgs& ca, const BoundArgs& b, const Common& co) {
  Clock clock;
  const CurveQ E = parse_curve(ca.curve);
  const Int D = parse_integer(b.D);
  const TwistPoint Q = parse_twist(E, D, b.Q);
  const CurveProfile p = make_profile(E, parse_points(ca.points), parse_tol(ca.tol), parse_scale(ca.scale));
  const BoundReport rep = class_number_lower_bound(p, D, Q);
  Row row = bound_report_row(rep);
  row.emplace_back("abstract_bound", D >= 16 ? format_bounded(abstract_theorem_bound(p, D)) : "na");
  Row cfg{{"curve", ca.curve}, {"D", b.D}, {"Q", b.Q}, {"tol", ca.tol}, {"scale", ca.scale}};
  for (std::size_t i = 0; i < ca.points.size(); ++i) cfg.emplace_back("point" + std::to_string(i), ca.points[i]);
  emit(co.output, render_manifest({"bound", cfg, clock.seconds(), {{"records", "1"}}}) +
                      render_section("bound", {row}, parse_output_format(co.format)));
  return kOk;
}

struct ScanArgs {
  std::string a = "1", X = "1000", T = "1", A = "1/4", B = "1/4", h = "1", modulus, conductor, W = "1";
  unsigned threads = 1;
  std::string class_number_limit = "0";
};

int cmd_scan(const ScanArgs& s, const CurveArgs& ca, const Common& co) {
  Clock clock;
  ScanConfig c;
  c.a = parse_integer(s.a);
  c.X = parse_integer(s.X);
  c.T = parse_integer(s.T);
  c.A = parse_rational(s.A);
  c.B = parse_rational(s.B);
  c.h = parse_integer(s.h);
  if (!s.conductor.empty()) c.conductor = parse_integer(s.conductor);
  const bool default_modulus = s.modulus.empty() && c.conductor;
  c.modulus = !s.modulus.empty() ? parse_integer(s.modulus) : c.conductor ? Int(4 * *c.conductor) : Int(4);
  const Int W = parse_integer(s.W);
  if (W != 1 && W != -1) throw InvalidInput("root number W must be 1 or -1");
  c.W = static_cast<int>(W.get_si());
  c.threads = s.threads;
  c.class_number_limit = parse_integer(s.class_number_limit);
  validate(c);

  std::optional<CurveProfile> profile;
  const CurveQ E = CurveQ::family(c.a, c.conductor);
  if (!ca.points.empty()) profile = make_profile(E, parse_points(ca.points), parse_tol(ca.tol), parse_scale(ca.scale));
  const ScanResult result = scan(c, profile ? &*profile : nullptr);

  std::size_t failed = 0;
  std::vector<Row> rows;
  for (const auto& r : result.records) {
    const bool ok = -r.d * r.t * r.t == r.m * r.m * r.m - r.a * r.n * r.n * r.n * r.n * r.n * r.n &&
                    twist_point_on_curve(E, r.Q);
    if (!ok) ++failed;
    rows.push_back(scan_record_row(r));
  }
  const OutputFormat fmt = parse_output_format(co.format);
  Row cfg{{"a", c.a.get_str()},
          {"X", c.X.get_str()},
          {"T", c.T.get_str()},
          {"A", c.A.get_str()},
          {"B", c.B.get_str()},
          {"h", c.h.get_str()},
          {"modulus", c.modulus.get_str()},
          {"modulus_origin", default_modulus ? "4N" : "relaxed"},
          {"conductor", c.conductor ? c.conductor->get_str() : "none"},
          {"W", std::to_string(c.W)},
          {"threads", std::to_string(c.threads)},
          {"class_number_limit", c.class_number_limit.get_str()},
          {"tol", ca.tol}};
  for (std::size_t i = 0; i < ca.points.size(); ++i) cfg.emplace_back("point" + std::to_string(i), ca.points[i]);
  Row counts{{"records", std::to_string(rows.size())},
             {"uncertified_squarefree", std::to_string(result.uncertified)},
             {"failed_verification", std::to_string(failed)}};
  std::string text = render_manifest({"scan", cfg, clock.seconds(), counts});
  text += render_section("records", rows, fmt);
  text += render_section("summary", {scan_summary_row(c, result)}, fmt);
  emit(co.output, text);
  if (failed) {
    std::cerr << "error: " << failed << " records failed re-verification\n";
    return kFindings;
  }
  return rows.empty() ? kNoRecords : kOk;
}

struct RhoArgs {
  std::string a = "1", m_min = "-50", m_max = "50", cap = "3000", modulus, formula = "closed";
};

int cmd_rho(const RhoArgs& r, const Common& co) {
  Clock clock;
  const Int a = parse_integer(r.a), m_lo = parse_integer(r.m_min), m_hi = parse_integer(r.m_max);
  const Int cap = parse_integer(r.cap);
  if (a <= 0) throw InvalidInput("a must be positive");
  if (r.formula != "closed" && r.formula != "derived")
    throw InvalidInput("unknown formula '" + r.formula + "' (expected closed or derived)");
  if (cap > RhoOptions{}.max_modulus) throw CapExceeded("prime-power cap above the enumeration budget");
  std::vector<Int> moduli;
  if (!r.modulus.empty()) {
    moduli.push_back(parse_integer(r.modulus));
  } else {
    for (Int q = 2; q <= cap; ++q) {
      const auto f = factor(q);
      if (f.size() == 1) moduli.push_back(q);
    }
  }
  std::vector<Row> rows;
  std::size_t mismatches = 0, unhandled = 0;
  for (Int m = m_lo; m <= m_hi; ++m) {
    if (m == 0) continue;
    for (const Int& q : moduli) {
      const Int brute = rho_brute(m, a, q);
      std::string closed, match;
      if (r.formula == "derived") {
        const Int v = rho_closed_corrected(m, a, q);
        closed = v.get_str();
        match = v == brute ? "true" : "false";
      } else {
        const RhoValue v = rho_closed(m, a, q);
        closed = v.handled ? v.value.get_str() : "unhandled";
        match = v.handled ? (v.value == brute ? "true" : "false") : "unhandled";
      }
      if (match == "false") ++mismatches;
      if (match == "unhandled") ++unhandled;
      rows.push_back({{"m", m.get_str()}, {"a", a.get_str()}, {"q", q.get_str()}, {"closed", closed}, {"brute", brute.get_str()}, {"match", match}});
    }
  }
  const OutputFormat fmt = parse_output_format(co.format);
  Row cfg{{"a", r.a}, {"m_min", r.m_min}, {"m_max", r.m_max}, {"cap", r.cap},
          {"modulus", r.modulus.empty() ? "all_prime_powers" : r.modulus}, {"formula", r.formula}};
  Row summary{{"checked", std::to_string(rows.size())}, {"mismatches", std::to_string(mismatches)}, {"unhandled", std::to_string(unhandled)}};
  emit(co.output, render_manifest({"rho", cfg, clock.seconds(), {{"records", std::to_string(rows.size())}}}) +
                      render_section("rho", rows, fmt) + render_section("summary", {summary}, fmt));
  if (mismatches) {
    std::cerr << "error: " << mismatches << " closed-form values disagree with direct count\n";
    return kFindings;
  }
  return kOk;
}

struct ClassArgs {
  std::string D;
  bool list = false;
};

int cmd_classnum(const ClassArgs& c, const Common& co) {
  Clock clock;
  const Int D = parse_integer(c.D);
  const auto forms = all_reduced_forms(D);
  Row row{{"D", D.get_str()}, {"class_number", std::to_string(forms.size())}};
  if (c.list) {
    std::string s;
    for (const auto& f : forms) s += (s.empty() ? "" : " ") + to_string(f);
    row.emplace_back("forms", s);
  }
  emit(co.output, render_manifest({"classnum", {{"D", c.D}}, clock.seconds(), {{"records", "1"}}}) +
                      render_section("classnum", {row}, parse_output_format(co.format)));
  return kOk;
}

// "--config FILE" lines become "--key=value" right after the subcommand, so
// flags given on the command line (later) take precedence.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw InvalidInput("--config needs a file name");
      path = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<long>(i));
      break;
    }
  }
  if (path.empty()) return args;
  std::size_t sub = 1;
  while (sub < args.size() && args[sub].rfind("-", 0) == 0) ++sub;
  if (sub >= args.size()) throw InvalidInput("--config given without a subcommand");
  std::vector<std::string> extra;
  for (const auto& [k, v] : read_config_file(path)) extra.push_back("--" + k + "=" + v);
  args.insert(args.begin() + static_cast<long>(sub) + 1, extra.begin(), extra.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    const std::vector<std::string> args = expand_config(argc, argv);

    CLI::App app{"Class number lower bounds from rational points on y^2 = x^3 + a4 x + a6"};
    app.set_help_flag("--help", "print help");
    app.set_version_flag("--version", std::string(CNBOUND_VERSION));
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.allow_windows_style_options(false);

    Common common;
    CurveArgs curve;

    auto* profile = app.add_subcommand("profile", "rank, torsion, regulator, d(E), delta(E), Omega_r, c(E)");
    add_curve(profile, curve);
    add_common(profile, common);

    PairArgs pa;
    auto* pairc = app.add_subcommand("pair", "the form attached to a point P and a twist point Q");
    pairc->add_option("--curve", pa.curve, "a4,a6")->required();
    pairc->add_option("--P", pa.P, "point on the curve, x,y")->required();
    pairc->add_option("--Q", pa.Q, "point x,y on -D(y/2)^2 = x^3 + a4 x + a6")->required();
    pairc->add_option("--D", pa.D, "positive discriminant")->required();
    pairc->add_option("--ell", pa.ell, "fix l instead of searching");
    add_common(pairc, common);

    BoundArgs ba;
    auto* bound = app.add_subcommand("bound", "class number lower bound for one discriminant");
    add_curve(bound, curve);
    bound->add_option("--D", ba.D, "positive discriminant")->required();
    bound->add_option("--Q", ba.Q, "twist point x,y")->required();
    add_common(bound, common);

    ScanArgs sa;
    auto* scanc = app.add_subcommand("scan", "enumerate -d t^2 = m^3 - a n^6 with the twist points and bounds");
    scanc->add_option("--a", sa.a, "positive integer a of y^2 = x^3 - a")->capture_default_str();
    scanc->add_option("--X", sa.X, "discriminant bound")->capture_default_str();
    scanc->add_option("--T", sa.T, "t range [T, 2T]")->capture_default_str();
    scanc->add_option("--A", sa.A, "m-range exponent")->capture_default_str();
    scanc->add_option("--B", sa.B, "n-range exponent")->capture_default_str();
    scanc->add_option("--h", sa.h, "residue class of m")->capture_default_str();
    scanc->add_option("--modulus", sa.modulus, "congruence modulus (default 4N, or 4 without --conductor)");
    scanc->add_option("--conductor", sa.conductor, "conductor N of y^2 = x^3 - a");
    scanc->add_option("--W", sa.W, "root number, 1 or -1")->capture_default_str();
    scanc->add_option("--threads", sa.threads, "worker threads")->capture_default_str();
    scanc->add_option("--class-number-limit", sa.class_number_limit, "compute h(-D) for D up to this")->capture_default_str();
    add_curve(scanc, curve, false);
    add_common(scanc, common);

    RhoArgs ra;
    auto* rho = app.add_subcommand("rho", "closed-form rho against direct count");
    rho->add_option("--a", ra.a)->capture_default_str();
    rho->add_option("--m-min", ra.m_min)->capture_default_str();
    rho->add_option("--m-max", ra.m_max)->capture_default_str();
    rho->add_option("--cap", ra.cap, "largest prime power checked")->capture_default_str();
    rho->add_option("--modulus", ra.modulus, "check this modulus only");
    rho->add_option("--formula", ra.formula, "closed (case formulas) or derived (valid for all p)")->capture_default_str();
    add_common(rho, common);

    ClassArgs cla;
    auto* classnum = app.add_subcommand("classnum", "number of reduced forms of discriminant -D");
    classnum->add_option("--D", cla.D, "positive D, 0 or 3 mod 4")->required();
    classnum->add_flag("--list", cla.list, "also print the forms");
    add_common(classnum, common);

    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    try {
      app.parse(std::move(rev));
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      std::cerr << "error: " << one_line(e.what()) << "\n";
      return kError;
    }

    if (*profile) return cmd_profile(curve, common);
    if (*pairc) return cmd_pair(pa, common);
    if (*bound) return cmd_bound(curve, ba, common);
    if (*scanc) return cmd_scan(sa, curve, common);
    if (*rho) return cmd_rho(ra, common);
    if (*classnum) return cmd_classnum(cla, common);
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << one_line(e.what()) << "\n";
    return kError;
  }
}
