// Command-line front end. Three verbs:
//   carlitz     fundamental period and its kernel residual
//   verify      run one named check suite, emit a JSON report
//   eisenstein  weight-one lattice sum at a certified point
// Exit codes: 0 pass, 1 check failure, 2 config or usage error, 3 budget
// exceeded. Flags override --config file entries, which override defaults.

#include <CLI11.hpp>

#include <array>
#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "drinfeld/runner.hpp"
#include "drinfeld/serialize.hpp"
#include "drinfeld/tate.hpp"

using namespace drinfeld;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Polynomials in theta are written with the variable t (or theta), e.g.
// "t^3+2t+1". Coefficients are decimal element codes; values past the field
// cardinality reduce into the prime field.
Poly parse_poly(const Field* F, const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  // strip redundant outer parentheses, e.g. the denominator in 1/(t^2+1)
  while (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
    int depth = 0;
    bool outer = true;
    for (size_t k = 0; k + 1 < s.size(); ++k) {
      if (s[k] == '(') ++depth;
      else if (s[k] == ')') --depth;
      if (depth == 0) { outer = false; break; }
    }
    if (!outer) break;
    s = s.substr(1, s.size() - 2);
  }
  if (s.empty()) throw DomainError("empty polynomial");
  Poly out(F);
  size_t i = 0;
  bool negate = false;
  if (s[0] == '+' || s[0] == '-') {
    negate = s[0] == '-';
    i = 1;
  }
  while (i < s.size()) {
    std::uint64_t cval = 1;
    bool has_coeff = false;
    size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) {
      cval = std::stoull(s.substr(i, j - i));
      has_coeff = true;
      i = j;
    }
    if (i < s.size() && s[i] == '*') ++i;
    int exp = 0;
    bool has_var = false;
    if (s.compare(i, 5, "theta") == 0) {
      has_var = true;
      i += 5;
    } else if (s.compare(i, 2, "\xce\xb8") == 0) {
      has_var = true;
      i += 2;
    } else if (i < s.size() && s[i] == 't') {
      has_var = true;
      i += 1;
    }
    if (has_var) {
      exp = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        size_t k = i;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
        if (k == i) throw DomainError("missing exponent in polynomial: " + text);
        exp = std::stoi(s.substr(i, k - i));
        i = k;
      }
    }
    if (!has_coeff && !has_var)
      throw DomainError("cannot parse polynomial term in: " + text);
    fq code = cval < F->card() ? static_cast<fq>(cval)
                               : F->from_int(static_cast<std::int64_t>(cval));
    if (negate) code = F->neg(code);
    out.set_coeff(exp, F->add(out.coeff(exp), code));
    if (i == s.size()) break;
    if (s[i] == '+') negate = false;
    else if (s[i] == '-') negate = true;
    else throw DomainError("cannot parse polynomial: " + text);
    ++i;
    if (i == s.size()) throw DomainError("trailing sign in polynomial: " + text);
  }
  return out;
}

// shift u = v/N entered componentwise as a or a/b with polynomial a, b;
// each component times N must land back in the polynomial ring
std::vector<Poly> parse_shift(const Field* F, const std::string& text, const Poly& N) {
  std::vector<Poly> v;
  bool nonzero = false;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    std::string part = text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    size_t slash = part.find('/');
    Poly num = parse_poly(F, slash == std::string::npos ? part : part.substr(0, slash));
    Poly vi;
    if (slash == std::string::npos) {
      vi = num * N;
    } else {
      Poly den = parse_poly(F, part.substr(slash + 1));
      if (den.is_zero()) throw DomainError("zero denominator in shift: " + part);
      Poly rem;
      Poly::divrem(num * N, den, &vi, &rem);
      if (!rem.is_zero())
        throw DomainError("shift component " + part + " does not have level " + N.str());
    }
    Poly quo, red;
    Poly::divrem(vi, N, &quo, &red);
    if (!red.is_zero()) nonzero = true;
    v.push_back(std::move(vi));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (!nonzero)
    throw DomainError("the shift u is zero modulo the lattice; nothing to sum");
  return v;
}

// one coordinate: [c*][t[^a | ^(a/b)]] as a monomial c theta^(a/b)
Series parse_coord(const Ctx& C, const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw DomainError("empty point coordinate");
  const Field& F = C.field();
  size_t i = 0;
  std::uint64_t cval = 1;
  size_t j = i;
  while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
  if (j > i) {
    cval = std::stoull(s.substr(i, j - i));
    i = j;
  }
  if (i < s.size() && s[i] == '*') ++i;
  std::int64_t a = 0, b = 1;
  if (s.compare(i, 5, "theta") == 0 || s.compare(i, 2, "\xce\xb8") == 0 ||
      (i < s.size() && s[i] == 't')) {
    i += s.compare(i, 5, "theta") == 0 ? 5 : (s[i] == 't' ? 1 : 2);
    a = 1;
    if (i < s.size() && s[i] == '^') {
      ++i;
      bool paren = i < s.size() && s[i] == '(';
      if (paren) ++i;
      size_t k = i;
      while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
      if (k == i) throw DomainError("missing exponent in coordinate: " + text);
      a = std::stoll(s.substr(i, k - i));
      i = k;
      if (i < s.size() && s[i] == '/') {
        ++i;
        k = i;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
        if (k == i) throw DomainError("missing denominator in coordinate: " + text);
        b = std::stoll(s.substr(i, k - i));
        i = k;
      }
      if (paren) {
        if (i < s.size() && s[i] == ')') ++i;
        else throw DomainError("unbalanced parenthesis in coordinate: " + text);
      }
    }
  }
  if (i != s.size()) throw DomainError("cannot parse coordinate: " + text);
  if (b <= 0 || C.m() % b != 0)
    throw DomainError("coordinate exponent denominator must divide m = " +
                      std::to_string(C.m()));
  fq code = cval < F.card() ? static_cast<fq>(cval)
                            : F.from_int(static_cast<std::int64_t>(cval));
  if (code == 0) throw DomainError("zero coordinate in point: " + text);
  return Series::monomial(C, code, -(a * (C.m() / b)));
}

UpperHalfPoint parse_point(const Ctx& C, const std::string& text) {
  if (text == "sqrt_theta") return cm_point_sqrt_theta(C).omega;
  if (text.rfind("kummer:", 0) == 0) {
    int r = 0;
    auto digits = text.substr(7);
    try {
      r = std::stoi(digits);
    } catch (const std::exception&) {
      throw DomainError("kummer point wants an integer rank: " + text);
    }
    return cm_point_kummer(C, r).omega;
  }
  std::vector<Series> w;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    w.push_back(parse_coord(C, text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (w.size() < 2) throw DomainError("a point needs at least two coordinates");
  return make_upper_half_point(C, std::move(w));
}

// flag storage routed through the same key = value path as config files
struct FlagSet {
  static constexpr std::array<std::pair<const char*, const char*>, 15> kKeys = {{
      {"p", "--p"},
      {"e", "--e"},
      {"s", "--s"},
      {"m", "--m"},
      {"prec", "--prec"},
      {"t_order", "--t-order"},
      {"deg_budget", "--deg-budget"},
      {"kmax", "--kmax"},
      {"deg_x", "--deg-x"},
      {"deg_theta", "--deg-theta"},
      {"samples", "--samples"},
      {"threshold_frac", "--threshold-frac"},
      {"seed", "--seed"},
      {"threads", "--threads"},
      {"out", "--out"},
  }};
  std::array<std::string, kKeys.size()> store;
  std::string config_path;
  CLI::App* sub = nullptr;

  void attach(CLI::App* s) {
    sub = s;
    static const char* const descs[kKeys.size()] = {
        "characteristic", "base field degree over the prime field",
        "coefficient field degree over the base", "ramification index",
        "precision in theta digits", "t-expansion order",
        "lattice enumeration degree", "exponential depth",
        "detector X-degree bound", "detector coefficient degree bound",
        "sample count", "pass threshold as a fraction of prec",
        "random seed", "worker threads", "report output path"};
    for (size_t i = 0; i < kKeys.size(); ++i)
      sub->add_option(kKeys[i].second, store[i], descs[i]);
    sub->add_option("--config", config_path, "key = value config file");
  }

  bool given(const char* flag) const { return sub->count(flag) > 0; }

  RunConfig build() const {
    RunConfig cfg;
    if (!config_path.empty()) cfg = parse_config(slurp(config_path));
    for (size_t i = 0; i < kKeys.size(); ++i)
      if (sub->count(kKeys[i].second) > 0) apply_config_kv(&cfg, kKeys[i].first, store[i]);
    return cfg;
  }
};

void write_report_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write report to " + path);
  out << text;
}

int cmd_carlitz(const RunConfig& cfg) {
  cfg.validate();
  Ctx C(cfg.field, cfg.prec);
  Series pi = carlitz_period(C, cfg.prec);
  DrinfeldModule carl(C, {Series::one(C)});
  std::int64_t prec_u = static_cast<std::int64_t>(cfg.prec) * C.m();
  int kk = 2;
  std::int64_t qk = static_cast<std::int64_t>(C.q()) * C.q();
  // term k of exp(pi) has valuation at least q^k (k - 2) m, so stop once
  // that clears the window
  while (kk < cfg.kmax && qk < (std::int64_t{1} << 40) &&
         qk * (kk - 2) * C.m() < prec_u + 2 * C.m()) {
    ++kk;
    qk *= C.q();
  }
  Series residual = entire_eval(exp_coeffs(carl, kk), pi);
  std::int64_t res = residual.val();
  std::int64_t thr = cfg.threshold_num();
  bool pass = res >= thr;
  std::cout << "field: p=" << cfg.field.p << " e=" << cfg.field.e
            << " s=" << cfg.field.s << " m=" << cfg.field.m
            << ", prec=" << cfg.prec << " theta digits\n";
  std::cout << "pi = " << series_to_text(pi) << "\n";
  std::cout << "|pi| = " << C.q() << "^(" << exp_str(-pi.val(), C.m()) << ")\n";
  std::cout << "val(exp(pi)) = " << exp_str(res, C.m())
            << " theta digits (threshold " << exp_str(thr, C.m()) << ")\n";
  std::cout << (pass ? "pass" : "FAIL") << "\n";
  if (!cfg.out.empty()) {
    ojson j;
    j["field"] = {{"p", cfg.field.p}, {"e", cfg.field.e},
                  {"s", cfg.field.s}, {"m", cfg.field.m}};
    j["prec"] = cfg.prec;
    j["pi"] = series_to_json(pi);
    j["kernel_residual"] = res;
    j["threshold"] = thr;
    j["pass"] = pass;
    write_report_file(cfg.out, j.dump(2) + "\n");
  }
  return pass ? 0 : 1;
}

int cmd_verify(const std::string& suite, RunConfig cfg, bool prec_given) {
  // these two read prec as the lattice evaluation target, so the generic
  // default of 80 would be rejected; drop to the documented default instead
  if ((suite == "automorphy" || suite == "expansion") && !prec_given) cfg.prec = 3;
  SuiteReport rep = run_suite(suite, cfg);
  std::string text = report_text(rep);
  if (!cfg.out.empty()) {
    write_report_file(cfg.out, text);
    std::cout << (rep.pass ? "pass" : "FAIL") << ": report written to "
              << cfg.out << "\n";
  } else {
    std::cout << text;
  }
  return rep.pass ? 0 : 1;
}

int cmd_eisenstein(RunConfig cfg, const std::string& u_text,
                   const std::string& n_text, const std::string& point_text,
                   bool prec_given) {
  if (!prec_given) cfg.prec = 3;
  cfg.validate();
  if (cfg.prec > 6)
    throw DomainError(
        "evaluation targets past 6 theta digits exceed the enumeration "
        "budget; lower --prec");
  Ctx C(cfg.field, 40);
  Poly N = parse_poly(C.fptr(), n_text);
  if (!N.monic() || N.deg() < 1)
    throw DomainError("the level N must be monic of degree at least 1");
  std::vector<Poly> v = parse_shift(C.fptr(), u_text, N);
  UpperHalfPoint pt = parse_point(C, point_text);
  if (static_cast<int>(v.size()) != pt.rank())
    throw DomainError("shift has " + std::to_string(v.size()) +
                      " components but the point has rank " +
                      std::to_string(pt.rank()));
  EisensteinValue ev = eisenstein_eval({N, v}, pt, cfg.prec, cfg.deg_budget);
  std::cout << "level N = " << N.str() << ", shift v = (";
  for (size_t i = 0; i < v.size(); ++i)
    std::cout << (i ? ", " : "") << v[i].str();
  std::cout << ")\n";
  std::cout << "point: rank " << pt.rank() << ", certified to degree "
            << pt.tested_degree << ", separation iota = "
            << exp_str(pt.iota_val, C.m()) << "\n";
  std::cout << "value = " << series_to_text(ev.value) << "\n";
  std::cout << "|value| = " << C.q() << "^(" << exp_str(-ev.value.val(), C.m())
            << ")\n";
  std::cout << "certified precision " << exp_str(ev.value.prec(), C.m())
            << " theta digits (tail below " << C.q() << "^(-"
            << exp_str(ev.tail_val, C.m()) << ") at cutoff D = " << ev.D
            << ")\n";
  if (!cfg.out.empty()) {
    ojson j;
    j["N"] = N.str();
    ojson vv = ojson::array();
    for (const Poly& p : v) vv.push_back(p.str());
    j["v"] = vv;
    ojson ww = ojson::array();
    for (const Series& w : pt.w) ww.push_back(series_to_json(w));
    j["point"] = {{"w", ww},
                  {"separation", pt.iota_val},
                  {"tested_degree", pt.tested_degree}};
    j["value"] = series_to_json(ev.value);
    j["D"] = ev.D;
    j["tail_val"] = ev.tail_val;
    write_report_file(cfg.out, j.dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"function-field analytics: periods, verification suites, "
               "weight-one sums"};
  app.require_subcommand(1);

  CLI::App* carlitz = app.add_subcommand(
      "carlitz", "fundamental period and its kernel residual");
  FlagSet carlitz_flags;
  carlitz_flags.attach(carlitz);

  CLI::App* verify = app.add_subcommand("verify", "run one check suite");
  std::string suite;
  verify->add_option("suite", suite, "one of: exp quasi omega automorphy "
                                     "levelchange expansion legendre cm "
                                     "independence")
      ->required();
  FlagSet verify_flags;
  verify_flags.attach(verify);

  CLI::App* eis = app.add_subcommand(
      "eisenstein", "weight-one lattice sum at a certified point");
  std::string u_text, n_text, point_text = "sqrt_theta";
  eis->add_option("--u", u_text, "shift vector, e.g. 1/t,0")->required();
  eis->add_option("--N", n_text, "monic level polynomial, e.g. t")->required();
  eis->add_option("--point", point_text,
                  "sqrt_theta, kummer:<r>, or coordinates like t^(3/2),t,1");
  FlagSet eis_flags;
  eis_flags.attach(eis);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(carlitz)) return cmd_carlitz(carlitz_flags.build());
    if (app.got_subcommand(verify))
      return cmd_verify(suite, verify_flags.build(),
                        verify_flags.given("--prec") ||
                            !verify_flags.config_path.empty());
    return cmd_eisenstein(eis_flags.build(), u_text, n_text, point_text,
                          eis_flags.given("--prec") ||
                              !eis_flags.config_path.empty());
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const PrecisionError& e) {
    std::cerr << "precision loss: " << e.what() << "\n";
    return 2;
  }
}
