#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "regprod/core/bigrational.hpp"
#include "regprod/core/errors.hpp"
#include "regprod/core/real.hpp"
#include "regprod/core/report.hpp"
#include "regprod/dirichlet/character.hpp"
#include "regprod/funcfield/curve.hpp"
#include "regprod/funcfield/zeta_numerator.hpp"
#include "regprod/lfunc/lfunction.hpp"
#include "regprod/numberfield/numberfield.hpp"
#include "regprod/progressions/progression.hpp"
#include "regprod/special/bernoulli.hpp"
#include "regprod/special/hurwitz.hpp"

namespace regprod::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kFault = 2, kUnknownCommand = 64, kMalformed = 65 };

struct RunConfig {
  int precision_bits = 64;
  bool json = false;
  bool verify = false;
  double weil_tol = 1e-9;

  void validate() const {
    if (precision_bits < 53) throw DomainError("precision must be at least 53 bits");
    if (precision_bits > 4096) throw DomainError("precision above 4096 bits is not supported");
    if (!(weil_tol > 0)) throw DomainError("--weil-tol must be positive");
  }
};

struct RunResult {
  int exit_code = kOk;
  std::string out;
  std::string err;
};

inline const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names{"primes", "progression", "number-field", "curve", "rational-ff", "zeta"};
  return names;
}

/// Default precision: REGPROD_PRECISION_BITS if set, else 64.
inline int default_precision_bits() {
  if (const char* env = std::getenv("REGPROD_PRECISION_BITS")) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw DomainError(std::string("REGPROD_PRECISION_BITS='") + env + "' is not an integer");
  }
  return 64;
}

namespace detail {

template <class Real>
Real parse_real(const std::string& s) {
  std::size_t used = 0;
  long double v = 0;
  try {
    v = std::stold(s, &used);
  } catch (const std::exception&) {
    throw DomainError("'" + s + "' is not a real number");
  }
  if (used != s.size()) throw DomainError("'" + s + "' is not a real number");
  if constexpr (std::is_floating_point_v<Real>) {
    return static_cast<Real>(v);
  } else {
    return Real(s);
  }
}

inline std::vector<BigInt> parse_int_list(const std::string& s) {
  std::vector<BigInt> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw DomainError("empty entry in integer list '" + s + "'");
    item = item.substr(b, e - b + 1);
    const std::size_t start = (item[0] == '-' || item[0] == '+') ? 1 : 0;
    if (start == item.size() || item.find_first_not_of("0123456789", start) != std::string::npos)
      throw DomainError("'" + item + "' is not an integer");
    out.push_back(BigInt(item[0] == '+' ? item.substr(1) : item));
  }
  if (out.empty()) throw DomainError("empty integer list");
  return out;
}

inline Json big_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return Json(v.convert_to<long long>());
  return Json(v.str());
}

inline int decimal_digits(int bits) { return static_cast<int>(bits * 0.30102999566398120) + 1; }

template <class Real>
Json real_json(const Real& x) {
  const double d = to_double(x);
  if (!std::isfinite(d)) return Json(format_real(x, 20));
  return Json(d);
}

inline Json numerator_json(const ZetaNumerator& L) {
  Json coeffs = Json::array();
  for (int i = 0; i <= L.degree(); ++i) coeffs.push_back(big_to_json(L.coeff(i)));
  return Json{{"polynomial", L.to_string()}, {"coefficients", coeffs}, {"q", L.q}, {"genus", L.genus}};
}

}  // namespace detail

/// The report document: {command, inputs, exponent: {exact?, float}, value, breakdown,
/// diagnostics: {precision_bits, residuals}, status}.
template <class Real>
Json report_json(const RegProdReport<Real>& rep, const std::string& command, const Json& inputs, int precision_bits) {
  Json j;
  j["command"] = command;
  j["inputs"] = inputs;
  Json e;
  if (rep.exact_exponent) e["exact"] = to_string(*rep.exact_exponent);
  e["float"] = detail::real_json(rep.exponent);
  e["decimal"] = format_real(rep.exponent, detail::decimal_digits(precision_bits));
  j["exponent"] = e;
  j["value"] = detail::real_json(rep.value);
  j["value_decimal"] = format_real(rep.value, detail::decimal_digits(precision_bits));
  Json rows = Json::array();
  for (const auto& row : rep.breakdown) {
    Json fields = Json::object();
    for (const auto& [k, v] : row.fields) fields[k] = detail::real_json(v);
    rows.push_back(Json{{"label", row.label}, {"fields", fields}});
  }
  j["breakdown"] = rows;
  Json residuals = Json::object();
  for (const auto& [k, v] : rep.residuals) residuals[k] = v;
  j["diagnostics"] = Json{{"precision_bits", precision_bits}, {"residuals", residuals}};
  if (!rep.notes.empty()) j["diagnostics"]["notes"] = rep.notes;
  j["status"] = rep.status;
  return j;
}

namespace detail {

inline std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline void render_text(const Json& j, int indent, std::ostringstream& os) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured() && !v.empty()) {
        os << pad << k << ":\n";
        render_text(v, indent + 2, os);
      } else {
        os << pad << k << ": " << (v.is_structured() ? std::string("-") : scalar_text(v)) << "\n";
      }
    }
  } else if (j.is_array()) {
    bool scalars = true;
    for (const auto& v : j) scalars = scalars && !v.is_structured();
    if (scalars) {
      os << pad;
      for (std::size_t i = 0; i < j.size(); ++i) os << (i ? ", " : "") << scalar_text(j[i]);
      os << "\n";
      return;
    }
    for (const auto& v : j) {
      if (v.is_object() && v.contains("label")) {
        os << pad << "- " << scalar_text(v["label"]) << "\n";
        Json rest = v;
        rest.erase("label");
        render_text(rest, indent + 4, os);
      } else {
        os << pad << "-\n";
        render_text(v, indent + 4, os);
      }
    }
  } else {
    os << pad << scalar_text(j) << "\n";
  }
}

}  // namespace detail

/// Formatted text or JSON, both deterministic for a fixed document.
inline std::string emit_report(const Json& doc, const RunConfig& cfg) {
  if (cfg.json) return doc.dump(2) + "\n";
  std::ostringstream os;
  detail::render_text(doc, 0, os);
  return os.str();
}

namespace detail {

struct Options {
  // progression
  long long m = 0;
  long long a = 0;
  // number-field
  std::string field;
  int r1 = -1, r2 = -1, w = 2, h = 1;
  std::string regulator = "1";
  long long disc = 1;
  // curve
  std::uint64_t q = 0;
  std::string kind = "plane";
  std::string f;
  std::string hpoly = "1";
  int genus = -1;
  std::string infinity;
  std::string numerator;
  std::string expect_numerator;
  // zeta
  std::string s = "0";
  std::string s_imag = "0";
  std::string x = "1";
  std::string bx = "0";
  long long character = 0;
  int n = 0;
};

template <class Real>
Json run_primes(const RunConfig& cfg) {
  NumberFieldEngine<Real> nf;
  auto rep = nf.regprod_all_primes();
  if (cfg.verify) {
    const Real target = 4 * pi<Real>() * pi<Real>();
    using std::abs;
    rep.residuals["relative_to_4pi2"] = to_double(Real(abs(rep.value - target) / target));
  }
  return report_json(rep, "primes", Json::object(), cfg.precision_bits);
}

template <class Real>
Json run_progression(const RunConfig& cfg, const Options& o) {
  const ProgressionTarget t(o.m, o.a);
  ProgressionEngine<Real> eng;
  auto rep = eng.regprod_progression(t);
  if (cfg.verify) {
    using std::abs;
    const std::uint64_t N = euler_phi(t.m);
    Real sum(0);
    for (std::uint64_t r = 1; r <= N; ++r) sum += eng.r_coefficient(N, r).value;
    rep.residuals["r_row_sum_vs_minus_2"] = to_double(Real(abs(sum + 2)));
    if (t.m >= 2) rep.residuals["principal_residue_paths"] = to_double(eng.lfunctions().principal_residue_b(t.m).difference);
  }
  return report_json(rep, "progression", Json{{"m", t.m}, {"a", t.a}}, cfg.precision_bits);
}

template <class Real>
Json run_number_field(const RunConfig& cfg, const Options& o) {
  NumberFieldData<Real> field;
  Json inputs;
  if (!o.field.empty()) {
    field = number_field_preset<Real>(o.field);
    inputs["field"] = o.field;
  } else {
    if (o.r1 < 0 || o.r2 < 0) throw DomainError("number-field: give --field or --r1/--r2/--w/--h/--regulator/--disc");
    field.name = "custom";
    field.r1 = o.r1;
    field.r2 = o.r2;
    field.w = o.w;
    field.h = o.h;
    field.regulator = parse_real<Real>(o.regulator);
    field.discriminant = o.disc;
    inputs = Json{{"r1", o.r1}, {"r2", o.r2}, {"w", o.w}, {"h", o.h}, {"regulator", o.regulator}, {"disc", o.disc}};
  }
  NumberFieldEngine<Real> nf;
  const auto rep = nf.regprod_number_field(field);
  return report_json(rep, "number-field", inputs, cfg.precision_bits);
}

inline std::vector<long long> parse_infinity(const std::string& s) {
  std::vector<long long> out;
  if (s.empty()) return out;
  for (const auto& v : parse_int_list(s)) out.push_back(v.convert_to<long long>());
  return out;
}

template <class Real>
void add_roots_residual(RegProdReport<Real>& rep, const ZetaNumerator& L) {
  if (L.inverse_roots.size() != static_cast<std::size_t>(2 * L.genus) || L.degree() != 2 * L.genus) return;
  using std::abs;
  const long double via = regprod_funcfield_via_roots(to_complex_roots(L.inverse_roots), L.genus, L.q);
  rep.residuals["roots_path_vs_exact"] = static_cast<double>(abs(via - to_real<long double>(*rep.exact_exponent)));
}

template <class Real>
RunResult run_curve(const RunConfig& cfg, const Options& o) {
  if (o.q < 2) throw DomainError("curve: --q is required (prime power >= 2)");
  Json inputs{{"q", o.q}};
  RunResult res;
  if (!o.numerator.empty()) {
    std::vector<BigInt> c = parse_int_list(o.numerator);
    while (c.size() > 1 && c.back() == 0) c.pop_back();
    const int deg = static_cast<int>(c.size()) - 1;
    const int g = o.genus >= 0 ? o.genus : (deg + 1) / 2;
    inputs["numerator"] = o.numerator;
    inputs["genus"] = g;
    const auto L = weil_validate(make_numerator(std::move(c), o.q, g), cfg.weil_tol);
    auto rep = regprod_funcfield<Real>(L);
    rep.residuals["root_residual"] = L.root_residual;
    if (cfg.verify) add_roots_residual(rep, L);
    if (L.weil_status != WeilStatus::validated) {
      rep.notes.push_back("supplied numerator fails Weil validation: " + L.weil_details);
      if (cfg.verify) {
        rep.status = "weil-violated";
        res.exit_code = kFault;
      }
    }
    Json j = report_json(rep, "curve", inputs, cfg.precision_bits);
    j["numerator"] = numerator_json(L);
    j["weil"] = to_string(L.weil_status);
    if (!L.weil_details.empty()) j["weil_details"] = L.weil_details;
    res.out = emit_report(j, cfg);
    return res;
  }

  CurveSpec spec;
  inputs["kind"] = o.kind;
  if (o.kind == "plane") {
    if (o.f.empty()) throw DomainError("curve: --f is required");
    spec = plane_curve(o.f, o.q);
    inputs["f"] = o.f;
  } else if (o.kind == "artin-schreier") {
    if (o.f.empty()) throw DomainError("curve: --f is required");
    spec = artin_schreier_curve(o.hpoly, o.f, o.q, parse_infinity(o.infinity));
    inputs["h"] = o.hpoly;
    inputs["f"] = o.f;
    if (!o.infinity.empty()) inputs["infinity"] = o.infinity;
  } else {
    throw DomainError("curve: --kind must be plane or artin-schreier");
  }
  const int g = o.genus >= 0 ? o.genus : spec.default_genus();
  if (g < 0) throw DomainError("curve: genus must be nonnegative");
  inputs["genus"] = g;
  int extra = 0;
  if (cfg.verify) {
    // over-determination needs N_{2g+1}, N_{2g+2}; skip past the enumeration budget
    const double cells = std::pow(static_cast<double>(o.q), 2.0 * (2 * g + 2));
    extra = cells <= 1e9 ? 2 : 0;
  }
  const auto an = analyze_curve(spec, g, extra, cfg.weil_tol);
  auto rep = regprod_funcfield<Real>(an.numerator);
  rep.residuals["root_residual"] = an.numerator.root_residual;
  if (cfg.verify) {
    add_roots_residual(rep, an.numerator);
    const auto pred = predict_counts(an.numerator, 2 * g);
    double worst = 0;
    for (int m = 0; m < 2 * g; ++m)
      worst = std::max(worst, std::abs((pred[static_cast<std::size_t>(m)] - BigInt(an.counts[static_cast<std::size_t>(m)])).convert_to<double>()));
    for (std::size_t i = 0; i < an.extra_counts.size(); ++i)
      worst = std::max(worst, std::abs((an.extra_predicted[i] - BigInt(an.extra_counts[i])).convert_to<double>()));
    rep.residuals["remultiplication_counts"] = worst;
    if (extra == 0) rep.notes.push_back("over-determination check skipped: N_{2g+2} exceeds the enumeration budget");
  }
  if (an.numerator.weil_status != WeilStatus::validated) {
    rep.status = "weil-violated";
    rep.notes.push_back("counted numerator fails Weil validation (wrong genus or singular model?): " +
                        an.numerator.weil_details);
    res.exit_code = kFault;
  }
  if (!an.overdetermined_ok) {
    rep.status = "overdetermination-failed";
    res.exit_code = kFault;
  }
  Json j = report_json(rep, "curve", inputs, cfg.precision_bits);
  j["curve"] = spec.describe();
  Json counts = Json::array();
  for (auto v : an.counts) counts.push_back(v);
  for (auto v : an.extra_counts) counts.push_back(v);
  j["counts"] = counts;
  j["numerator"] = numerator_json(an.numerator);
  j["weil"] = to_string(an.numerator.weil_status);
  if (!an.numerator.weil_details.empty()) j["weil_details"] = an.numerator.weil_details;
  if (!o.expect_numerator.empty()) {
    std::vector<BigInt> c = parse_int_list(o.expect_numerator);
    while (c.size() > 1 && c.back() == 0) c.pop_back();
    const int deg = static_cast<int>(c.size()) - 1;
    const auto expected = weil_validate(make_numerator(std::move(c), o.q, std::max(g, (deg + 1) / 2)), cfg.weil_tol);
    const bool differs = !(expected == an.numerator);
    Json d{{"flag", differs},
           {"expected_numerator", expected.to_string()},
           {"counted_numerator", an.numerator.to_string()},
           {"expected_weil", to_string(expected.weil_status)},
           {"expected_N1", big_to_json(predict_counts(expected, 1)[0])},
           {"counted_N1", an.counts.empty() ? Json(spec.q() + 1) : Json(an.counts[0])}};
    try {
      d["expected_exponent"] = to_string(funcfield_exponent(expected));
    } catch (const DomainError&) {
      d["expected_exponent"] = nullptr;
    }
    j["discrepancy"] = d;
  }
  res.out = emit_report(j, cfg);
  return res;
}

template <class Real>
Json run_rational_ff(const RunConfig& cfg, const Options& o) {
  if (o.q < 2) throw DomainError("rational-ff: --q is required (prime power >= 2)");
  split_prime_power(o.q);
  const auto L = weil_validate(make_numerator({1}, o.q, 0), cfg.weil_tol);
  auto rep = regprod_funcfield<Real>(L);
  if (cfg.verify) {
    using std::abs;
    const Real via = regprod_funcfield_via_roots<Real>({}, 0, o.q);
    rep.residuals["roots_path_vs_exact"] = to_double(Real(abs(via - rep.exponent)));
  }
  Json j = report_json(rep, "rational-ff", Json{{"q", o.q}}, cfg.precision_bits);
  j["weil"] = to_string(L.weil_status);
  return j;
}

template <class Real>
Json complex_json(const Complex<Real>& z, int bits) {
  return Json{{"re", real_json(z.re)},
              {"im", real_json(z.im)},
              {"re_decimal", format_real(z.re, decimal_digits(bits))},
              {"im_decimal", format_real(z.im, decimal_digits(bits))}};
}

template <class Real>
Json run_zeta(const RunConfig& cfg, const Options& o, const std::string& fn) {
  Json j;
  j["command"] = "zeta " + fn;
  if (fn == "hurwitz") {
    const Complex<Real> s(parse_real<Real>(o.s), parse_real<Real>(o.s_imag));
    const Real x = parse_real<Real>(o.x);
    const auto hz = HurwitzEvaluator<Real>::for_precision(cfg.precision_bits);
    j["inputs"] = Json{{"s", o.s}, {"s_imag", o.s_imag}, {"x", o.x}};
    j["value"] = complex_json(hz.zeta(s, x), cfg.precision_bits);
  } else if (fn == "l-value") {
    if (o.m < 1) throw DomainError("zeta l-value: --m must be positive");
    const auto chars = enumerate_characters(static_cast<std::uint64_t>(o.m));
    if (o.character < 0 || o.character >= static_cast<long long>(chars.size()))
      throw DomainError("zeta l-value: --character must be in [0, " + std::to_string(chars.size()) + ")");
    const auto& chi = chars[static_cast<std::size_t>(o.character)];
    const Complex<Real> s(parse_real<Real>(o.s), parse_real<Real>(o.s_imag));
    LFunctionEngine<Real> lf(HurwitzEvaluator<Real>::for_precision(cfg.precision_bits));
    j["inputs"] = Json{{"m", o.m}, {"character", o.character}, {"s", o.s}, {"s_imag", o.s_imag}};
    j["character"] = chi.label();
    if (s.re == 0 && s.im == 0) {
      const auto ex = l_at_zero_exact(chi);
      if (ex.is_rational()) j["exact"] = to_string(ex.rational_value());
      const auto t = lf.l_taylor_at_zero(chi, 1);
      j["value"] = complex_json(t.taylor[0], cfg.precision_bits);
      j["derivative"] = complex_json(t.taylor[1], cfg.precision_bits);
      j["order_of_vanishing"] = t.order_of_vanishing;
    } else {
      j["value"] = complex_json(lf.l_value(chi, s), cfg.precision_bits);
    }
  } else if (fn == "bernoulli") {
    if (o.n < 0 || o.n > 2000) throw DomainError("zeta bernoulli: --n must be in [0, 2000]");
    j["inputs"] = Json{{"n", o.n}, {"x", o.bx}};
    BigRational x;
    try {
      x = parse_rational(o.bx);
    } catch (const std::exception&) {
      throw DomainError("zeta bernoulli: '" + o.bx + "' is not a rational number");
    }
    j["exact"] = to_string(bernoulli_poly(o.n, x));
    j["value"] = real_json(to_real<Real>(bernoulli_poly(o.n, x)));
  } else {
    throw DomainError("zeta: unknown function '" + fn + "'");
  }
  j["diagnostics"] = Json{{"precision_bits", cfg.precision_bits}};
  j["status"] = "ok";
  return j;
}

template <class Real>
RunResult dispatch(const std::string& cmd, const std::string& zeta_fn, const RunConfig& cfg, const Options& o) {
  if (cmd == "curve") return run_curve<Real>(cfg, o);
  Json j;
  if (cmd == "primes") j = run_primes<Real>(cfg);
  else if (cmd == "progression") j = run_progression<Real>(cfg, o);
  else if (cmd == "number-field") j = run_number_field<Real>(cfg, o);
  else if (cmd == "rational-ff") j = run_rational_ff<Real>(cfg, o);
  else if (cmd == "zeta") j = run_zeta<Real>(cfg, o, zeta_fn);
  return RunResult{kOk, emit_report(j, cfg), ""};
}

inline RunResult fault(int code, const std::string& cmd, const std::string& status, const std::string& msg,
                       const RunConfig& cfg) {
  RunResult r;
  r.exit_code = code;
  r.err = "regprod: " + msg + "\n";
  if (cfg.json && !cmd.empty()) {
    Json j{{"command", cmd}, {"status", status}, {"diagnostics", Json{{"message", msg}}}};
    r.out = j.dump(2) + "\n";
  }
  return r;
}

}  // namespace detail

/// Runs one command; `args` excludes the program name.
inline RunResult run_command(const std::vector<std::string>& args) {
  RunConfig cfg;
  detail::Options o;
  std::string zeta_fn;

  CLI::App app{"Regularized products over primes, number fields and curves over finite fields", "regprod"};
  app.fallthrough();
  // --h is the class number and the Artin-Schreier h(x), so help is long-form only
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  std::optional<int> bits;
  app.add_option("--precision-bits", bits, "working precision in bits (>= 53; above 64 uses MPFR)");
  app.add_flag("--json", cfg.json, "emit the JSON report");
  app.add_flag("--verify", cfg.verify, "run the invariant checks and report their residuals");
  app.add_option("--weil-tol", cfg.weil_tol, "tolerance on ||pi_i| - sqrt(q)|");

  app.add_subcommand("primes", "product over all primes (4 pi^2)");
  auto* prog = app.add_subcommand("progression", "product over primes p = a mod m");
  prog->add_option("--m", o.m, "modulus")->required();
  prog->add_option("--a", o.a, "residue coprime to m")->required();

  auto* nf = app.add_subcommand("number-field", "product over prime ideals of Q or a quadratic field");
  nf->add_option("--field", o.field, "preset: Q, Q(i), Q(sqrt5), Q(sqrt-3)");
  nf->add_option("--r1", o.r1, "real embeddings");
  nf->add_option("--r2", o.r2, "pairs of complex embeddings");
  nf->add_option("--w", o.w, "roots of unity");
  nf->add_option("--h", o.h, "class number");
  nf->add_option("--regulator", o.regulator, "regulator");
  nf->add_option("--disc", o.disc, "fundamental discriminant");

  auto* curve = app.add_subcommand("curve", "product over closed points of a curve over F_q");
  curve->add_option("--q", o.q, "base field size")->required();
  curve->add_option("--kind", o.kind, "plane | artin-schreier");
  curve->add_option("--f", o.f, "plane: F(x,y,z); artin-schreier: f(x) in y^2 + h(x) y = f(x)");
  curve->add_option("--h", o.hpoly, "artin-schreier h(x)");
  curve->add_option("--genus", o.genus, "genus (default from the degree)");
  curve->add_option("--infinity", o.infinity, "points at infinity: constant or per-degree list");
  curve->add_option("--numerator", o.numerator, "L(t) coefficients, low to high; skips counting");
  curve->add_option("--expect-numerator", o.expect_numerator, "compare the counted L(t) with this one");

  auto* rff = app.add_subcommand("rational-ff", "rational function field F_q(t)");
  rff->add_option("--q", o.q, "field size")->required();

  auto* zeta = app.add_subcommand("zeta", "utility evaluators");
  zeta->require_subcommand(1);
  auto* hz = zeta->add_subcommand("hurwitz", "zeta_H(s, x)");
  hz->add_option("--s", o.s, "real part of s");
  hz->add_option("--s-imag", o.s_imag, "imaginary part of s");
  hz->add_option("--x", o.x, "shift x > 0");
  auto* lv = zeta->add_subcommand("l-value", "L(s, chi); at s = 0 also L'(0, chi)");
  lv->add_option("--m", o.m, "modulus")->required();
  lv->add_option("--character", o.character, "index into the enumerated characters mod m");
  lv->add_option("--s", o.s, "real part of s");
  lv->add_option("--s-imag", o.s_imag, "imaginary part of s");
  auto* bn = zeta->add_subcommand("bernoulli", "B_n(x), exact");
  bn->add_option("--n", o.n, "index")->required();
  bn->add_option("--x", o.bx, "rational point p/q (default 0)");
  for (auto* sub : {hz, lv, bn}) sub->callback([&zeta_fn, sub] { zeta_fn = sub->get_name(); });

  // The first bare token names the command.
  std::string cmd;
  bool help = false;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto& t = args[i];
    if (t == "--help") help = true;
    if (t == "--precision-bits" || t == "--weil-tol") {
      ++i;
      continue;
    }
    if (!t.empty() && t[0] == '-') continue;
    cmd = t;
    break;
  }
  if (!cmd.empty()) {
    const auto& names = subcommand_names();
    if (std::find(names.begin(), names.end(), cmd) == names.end())
      return RunResult{kUnknownCommand, "", "regprod: unknown subcommand '" + cmd + "'\n" + app.help()};
  } else if (!help) {
    return RunResult{kMalformed, "", "regprod: missing subcommand\n" + app.help()};
  }

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    return RunResult{kOk, app.help(), ""};
  } catch (const CLI::ParseError& e) {
    return RunResult{kMalformed, "", "regprod: " + std::string(e.what()) + "\n"};
  }

  try {
    cfg.precision_bits = bits ? *bits : default_precision_bits();
    cfg.validate();
  } catch (const DomainError& e) {
    return detail::fault(kMalformed, cmd, "malformed-input", e.what(), cfg);
  }

  try {
    if (cfg.precision_bits <= 64) return detail::dispatch<long double>(cmd, zeta_fn, cfg, o);
    MpfrPrecisionScope scope(cfg.precision_bits);
    return detail::dispatch<MpfrReal>(cmd, zeta_fn, cfg, o);
  } catch (const DomainError& e) {
    return detail::fault(kMalformed, cmd, "malformed-input", e.what(), cfg);
  } catch (const ValidationError& e) {
    return detail::fault(kFault, cmd, "validation-error", e.what(), cfg);
  } catch (const PrecisionError& e) {
    return detail::fault(kFault, cmd, "precision-error", e.what(), cfg);
  }
}

}  // namespace regprod::cli
