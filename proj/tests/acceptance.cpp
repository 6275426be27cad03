// Release gate: ten numbered checks, one line each. Tolerances are pinned
// here, not read from anywhere else. Exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "drinfeld/lattice.hpp"
#include "drinfeld/relations.hpp"
#include "drinfeld/runner.hpp"
#include "drinfeld/tate.hpp"

using namespace drinfeld;

namespace {

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// val(exp(pi)) for the Carlitz module, u-units
std::int64_t kernel_residual(const FieldParams& f, int prec) {
  Ctx C(f, prec);
  Series pi = carlitz_period(C, prec);
  DrinfeldModule carl(C, {Series::one(C)});
  std::int64_t qk = std::int64_t{1} * C.q() * C.q();
  int kk = 2;
  while (kk < 16 && qk < (std::int64_t{1} << 40) &&
         qk * (kk - 2) * C.m() < std::int64_t{prec} * C.m() + 2 * C.m()) {
    ++kk;
    qk *= C.q();
  }
  return entire_eval(exp_coeffs(carl, kk), pi).val();
}

bool suite_ok(const std::string& name, const RunConfig& cfg, std::string* detail) {
  SuiteReport rep = run_suite(name, cfg);
  if (!rep.pass) {
    for (const auto& row : rep.rows)
      if (!row.pass)
        *detail += " [" + name + ": " + row.check + "/" + row.sample + " at " +
                   std::to_string(row.residual_valuation) + "]";
  }
  return rep.pass;
}

bool c1_carlitz_kernel(std::string* detail) {
  struct Case { FieldParams f; int prec; };
  const Case cases[] = {{{2, 1, 1, 1}, 80}, {{2, 1, 1, 1}, 160},
                        {{3, 1, 2, 2}, 80}, {{3, 1, 2, 2}, 160}};
  bool ok = true;
  for (const Case& c : cases) {
    auto t0 = std::chrono::steady_clock::now();
    std::int64_t res = kernel_residual(c.f, c.prec);
    double dt = elapsed(t0);
    std::int64_t floor = (std::int64_t{c.prec} * 4 / 5) * c.f.m;  // 0.8 prec
    char buf[96];
    std::snprintf(buf, sizeof buf, " q=%d prec=%d: %lld/%lld u (%.1fs)",
                  c.f.p, c.prec, static_cast<long long>(res),
                  static_cast<long long>(floor), dt);
    *detail += buf;
    if (res < floor || dt >= 5.0) ok = false;
  }
  return ok;
}

bool c2_functional_equations(std::string* detail) {
  RunConfig cfg;
  cfg.prec = 80;
  cfg.samples = 20;
  cfg.threshold_frac = 0.8;  // 0.8 prec
  bool ok = suite_ok("exp", cfg, detail);
  ok = suite_ok("quasi", cfg, detail) && ok;
  return ok;
}

bool c3_omega(std::string* detail) {
  RunConfig cfg;
  cfg.prec = 80;
  cfg.t_order = 12;
  cfg.threshold_frac = 0.8;  // coefficients 0.8 prec; value row drops to 0.7
  return suite_ok("omega", cfg, detail);
}

bool c4_lattice_module(std::string* detail) {
  // period lattice back to the module: coefficient must be 1
  Ctx C({3, 1, 2, 2}, 80);
  Series pi = carlitz_period(C, 80);
  LatticeModule M1 = drinfeld_from_lattice(make_lattice(C, {pi}, 3), 8);
  std::int64_t r1 = Series::diff_val(M1.phi.g(1), Series::one(C));
  std::int64_t floor1 = 112;  // 0.7 * 80 theta digits, m = 2
  // rank-2 round trip at enumeration degree 4
  Series w1 = Series::theta_pow(C, 3);  // theta^(3/2)
  LatticeModule M2 =
      drinfeld_from_lattice(make_lattice(C, {pi * w1, pi}, 3), 4, 4);
  EntireSeries e2 = exp_coeffs(M2.phi, 9);
  Series z1 = entire_eval(e2, pi * w1);
  Series z2 = entire_eval(e2, pi);
  std::int64_t r2 = std::min(z1.val(), z2.val());
  std::int64_t floor2 = 96;  // 0.6 * 80 theta digits
  char buf[96];
  std::snprintf(buf, sizeof buf, " g1: %lld/%lld u; basis kill: %lld/%lld u",
                static_cast<long long>(r1), static_cast<long long>(floor1),
                static_cast<long long>(r2), static_cast<long long>(floor2));
  *detail += buf;
  return r1 >= floor1 && z1.zero_to_prec() && z2.zero_to_prec() && r2 >= floor2;
}

bool c5_automorphy(std::string* detail) {
  RunConfig cfg;
  cfg.prec = 2;  // lattice evaluation target, theta digits
  cfg.samples = 8;
  cfg.threshold_frac = 0.6;
  return suite_ok("automorphy", cfg, detail);
}

bool c6_identity_chains(std::string* detail) {
  RunConfig lc;
  lc.prec = 80;
  lc.threshold_frac = 0.5;
  bool ok = suite_ok("levelchange", lc, detail);
  RunConfig ex;
  ex.prec = 3;  // lattice evaluation target
  ex.threshold_frac = 0.5;
  ok = suite_ok("expansion", ex, detail) && ok;
  return ok;
}

bool c7_cm_certificates(std::string* detail) {
  RunConfig cfg;
  cfg.prec = 80;
  cfg.threshold_frac = 0.5;  // v_t = 40 theta digits
  cfg.deg_x = 4;
  cfg.deg_theta = 8;
  bool ok = suite_ok("cm", cfg, detail);
  ok = suite_ok("legendre", cfg, detail) && ok;
  return ok;
}

bool c8_trdeg_predictor(std::string* detail) {
  for (int n = 1; n <= 6; ++n) {
    std::vector<int> ranks(static_cast<size_t>(n + 1), 2);
    TrdegPrediction p = trdeg_predict(ranks, true, true);
    if (p.degree != n + 2) {
      *detail += " (2 x " + std::to_string(n + 1) + ") gave " +
                 std::to_string(p.degree);
      return false;
    }
  }
  TrdegPrediction mixed = trdeg_predict({3, 5, 2}, true, true);
  if (mixed.degree != 8) {
    *detail += " (3,5,2) gave " + std::to_string(mixed.degree);
    return false;
  }
  TrdegPrediction single = trdeg_predict({4}, true, true, 2);
  if (single.degree != 8) {
    *detail += " single r=4 s=2 gave " + std::to_string(single.degree);
    return false;
  }
  *detail += " (2,..,2) -> n+1; (3,5,2) -> 8; r=4,s=2 -> 8";
  return true;
}

bool c9_negative_controls(std::string* detail) {
  RunConfig cfg;
  cfg.prec = 60;
  cfg.threshold_frac = 0.5;
  return suite_ok("independence", cfg, detail);
}

bool c10_determinism(std::string* detail) {
  struct Pick { const char* suite; int prec; int samples; int t_order; };
  const Pick picks[] = {
      {"exp", 40, 4, 12},       {"quasi", 40, 4, 12},
      {"omega", 30, 4, 6},      {"automorphy", 2, 4, 12},
      {"levelchange", 40, 4, 12}, {"expansion", 3, 4, 12},
      {"legendre", 48, 4, 12},  {"cm", 48, 4, 12},
      {"independence", 48, 4, 12}};
  bool ok = true;
  for (const Pick& pk : picks) {
    RunConfig cfg;
    cfg.prec = pk.prec;
    cfg.samples = pk.samples;
    cfg.t_order = pk.t_order;
    cfg.threshold_frac = 0.5;
    cfg.seed = 7;
    cfg.threads = 1;
    std::string a = report_text(run_suite(pk.suite, cfg));
    cfg.threads = 4;
    std::string b = report_text(run_suite(pk.suite, cfg));
    if (a != b) {
      *detail += std::string(" [") + pk.suite + " differs]";
      ok = false;
    }
  }
  return ok;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* label;
    double budget;  // seconds; 0 = none
    std::function<bool(std::string*)> fn;
  };
  const std::vector<Criterion> criteria = {
      {1, "carlitz kernel floors (q in {2,3}, prec in {80,160})", 0, c1_carlitz_kernel},
      {2, "functional equations, 20 random modules of rank <= 3", 60, c2_functional_equations},
      {3, "omega twist equation and special value", 0, c3_omega},
      {4, "lattice-module equivalence and rank-2 round trip", 120, c4_lattice_module},
      {5, "eisenstein automorphy under level-theta matrices", 300, c5_automorphy},
      {6, "expansion and level-change identity chains", 300, c6_identity_chains},
      {7, "cm value and legendre certificates, stable under prec+20", 0, c7_cm_certificates},
      {8, "transcendence degree predictor", 0, c8_trdeg_predictor},
      {9, "negative controls: no spurious relations", 0, c9_negative_controls},
      {10, "byte-identical reports across thread counts", 0, c10_determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.fn(&detail);
    } catch (const std::exception& e) {
      detail = std::string(" threw: ") + e.what();
    }
    double dt = elapsed(t0);
    if (c.budget > 0 && dt >= c.budget) {
      ok = false;
      detail += " over budget " + std::to_string(c.budget) + "s";
    }
    std::printf("criterion %2d: %s (%.1fs) %s%s\n", c.id, ok ? "pass" : "FAIL",
                dt, c.label, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures;
}
