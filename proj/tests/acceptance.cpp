// Acceptance suite: one PASS/FAIL line per criterion, with the measured
// quantity, its pinned tolerance and the wall time. Exit status is nonzero if
// any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "popuc/cli.hpp"
#include "popuc/cmv.hpp"
#include "popuc/harness.hpp"
#include "popuc/rank_one.hpp"

using namespace popuc;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

TrialConfig config(std::uint64_t seed, std::size_t trials, std::size_t n_max) {
  TrialConfig cfg;
  cfg.seed = seed;
  cfg.trials = trials;
  cfg.n_max = n_max;
  return cfg;
}

std::string report_line(const TheoremReport& r) {
  return fmt("%s: %zu trials, %zu resampled, %zu skipped, %zu failures, max slack %.2e", r.theorem.c_str(),
             r.trials, r.resampled, r.skipped, r.failures.size(), r.max_slack);
}

// Prescribed-zero family: alpha = 0, beta_n = conj(lambda)^n.
Verdict ac1() {
  const double t = 0.3;
  const CirclePoint lambda = CirclePoint::polar(t);
  const VerblunskyWord zero = VerblunskyWord::constant(0.0, 49);
  double coeff = 0.0;
  double value = 0.0;
  for (std::size_t n = 1; n <= 50; ++n) {
    const double nd = static_cast<double>(n);
    const Polynomial p = popuc_first(zero, CirclePoint::polar(-t * nd), n);
    std::vector<Complex> expected(n + 1, 0.0);
    expected[0] = -std::polar(1.0, t * nd);
    expected[n] = 1.0;
    coeff = std::max(coeff, coefficient_distance(p, Polynomial(expected)));
    value = std::max(value, std::abs(p(lambda.value())));
  }
  return {coeff <= 1e-12 && value <= 1e-10,
          fmt("coefficient error %.2e (tol 1e-12), |p(lambda)| %.2e (tol 1e-10)", coeff, value)};
}

Verdict ac2() {
  std::mt19937_64 rng = trial_stream(2, 0);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng() % 30);
    std::vector<Complex> a(n - 1);
    for (auto& x : a) x = random_disk_point(rng, 0.95);
    const VerblunskyWord w(a);
    const CirclePoint beta = random_circle_point(rng);
    worst = std::max(worst, coefficient_distance(char_poly(build(w, beta)), popuc_first(w, beta, n)));
  }
  return {worst <= 1e-8, fmt("200 instances, n <= 30, max coefficient error %.2e (tol 1e-8)", worst)};
}

Verdict ac3() {
  const TheoremReport r2 = run_thm_1_2(config(3, 500, 20));
  const TheoremReport r3 = run_thm_1_3(config(4, 500, 20));
  const bool ok = r2.passed() && r3.passed() && r2.trials == 500 && r3.trials == 500;
  return {ok, report_line(r2) + "; " + report_line(r3)};
}

Verdict ac4() {
  const TheoremReport r = run_thm_1_4(config(5, 500, 20), 50);
  const auto count = [&](const char* key) { return r.tallies.count(key) ? r.tallies.at(key) : std::size_t{0}; };
  const bool classified = count("case_i") == 500 && count("case_ii_constructed") == 50 && r.skipped == 0;

  // The printed value lambda^{2n+1} must miss the common zero whenever
  // lambda^{2n} != 1, while the constructed value hits it.
  const double t = 0.3;
  const CirclePoint lambda = CirclePoint::polar(t);
  const VerblunskyWord zero = VerblunskyWord::constant(0.0, 50);
  double derived_miss = 0.0;
  std::size_t printed_caught = 0;
  std::size_t printed_cases = 0;
  for (std::size_t n = 1; n <= 50; ++n) {
    const CirclePoint bn = CirclePoint::polar(-t * static_cast<double>(n));
    const CirclePoint bnext = CirclePoint::polar(-t * static_cast<double>(n + 1));
    derived_miss = std::max(derived_miss, distance(split(build(zero.prefix(n), bnext), bn).decoupled, lambda));
    if (std::abs(std::polar(1.0, 2.0 * t * static_cast<double>(n)) - 1.0) > 1e-6) {
      ++printed_caught;
      if (check_thm_1_4(zero, bn, bnext, n, DecouplingRule::Transcribed, lambda).passed()) --printed_caught;
      ++printed_cases;
    }
  }
  const bool ok = r.passed() && classified && r.max_slack <= 1e-8 && derived_miss <= 1e-8 &&
                  printed_caught == printed_cases;
  return {ok, report_line(r) +
                  fmt("; case_i %zu/500, constructed case_ii %zu/50; derived |lambda_n - z| %.2e (tol 1e-8); "
                      "printed formula rejected %zu/%zu",
                      count("case_i"), count("case_ii_constructed"), derived_miss, printed_caught, printed_cases)};
}

Verdict ac5() {
  const TheoremReport r = run_thm_3_4(config(6, 200, 15));
  const VerblunskyWord zero = VerblunskyWord::constant(0.0, 15);
  const CirclePoint one(Complex(1.0));
  std::size_t exact = 0;
  std::size_t exact_pass = 0;
  for (std::size_t n = 1; n < 15; ++n) {
    for (std::size_t m = n + 1; m <= 15; ++m) {
      ++exact;
      if (check_thm_3_4(zero, one, one, n, m).passed()) ++exact_pass;
    }
  }
  return {r.passed() && r.trials == 200 && exact_pass == exact,
          report_line(r) + fmt("; roots of unity %zu/%zu pairs", exact_pass, exact)};
}

Verdict ac6() {
  const TheoremReport shift = run_perturbation_property(PerturbationProperty::SchurShift, config(7, 100, 20));
  const TheoremReport inter = run_perturbation_property(PerturbationProperty::CyclicInterlace, config(8, 200, 20));
  const TheoremReport gap = run_perturbation_property(PerturbationProperty::GapCount, config(9, 200, 20));
  const TheoremReport sum = run_perturbation_property(PerturbationProperty::DirectSum, config(10, 50, 20));
  const bool ok = shift.passed() && inter.passed() && gap.passed() && sum.passed() && shift.max_slack <= 1e-8;
  return {ok, report_line(shift) + " (tol 1e-8); " + report_line(inter) + "; " + report_line(gap) + "; " +
                  report_line(sum)};
}

Verdict ac7() {
  const SpectralMeasure mu({{CirclePoint(Complex(1.0)), 0.5}, {CirclePoint(Complex(-1.0)), 0.5}});
  double f_err = 0.0;
  for (const Complex z : disk_grid(20, 0.9)) f_err = std::max(f_err, std::abs(schur_f(mu, z) - z));
  double atom_err = 0.0;
  for (const Atom& a : mu.atoms()) {
    atom_err = std::max(atom_err, std::abs(a.point.value() * schur_f_boundary(mu, a.point) - 1.0));
  }
  return {f_err <= 1e-10 && atom_err <= 1e-6,
          fmt("|f(z) - z| %.2e on 20 points (tol 1e-10); |z f(z) - 1| at atoms %.2e (tol 1e-6)", f_err, atom_err)};
}

// Reads the running maxima accumulated by everything above.
Verdict ac8() {
  const HygieneStats h = hygiene_snapshot();
  const bool ok = h.unitaries_checked > 0 && h.eigenpairs_checked > 0 && h.max_unitarity_defect <= 1e-10 &&
                  h.max_eigen_residual <= 1e-10 && h.max_eigen_modulus_defect <= 1e-10;
  return {ok, fmt("%llu unitaries, max defect %.2e; %llu eigenpairs, max residual %.2e, max modulus defect %.2e "
                  "(tol 1e-10)",
                  static_cast<unsigned long long>(h.unitaries_checked), h.max_unitarity_defect,
                  static_cast<unsigned long long>(h.eigenpairs_checked), h.max_eigen_residual,
                  h.max_eigen_modulus_defect)};
}

Verdict ac9() {
  const auto once = [] {
    const char* argv[] = {"popuc", "verify", "--theorem", "1.4", "--trials", "200", "--seed", "2024"};
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(8, argv, out, err);
    return std::make_pair(code, out.str());
  };
  const auto a = once();
  const auto b = once();
  return {a.first == 0 && a.second == b.second && !a.second.empty(),
          fmt("two runs of verify --theorem 1.4 --seed 2024: %zu bytes, identical = %s", a.second.size(),
              a.second == b.second ? "yes" : "no")};
}

struct Criterion {
  const char* id;
  double budget_seconds;
  std::function<Verdict()> run;
};

}  // namespace

int main() {
  hygiene_reset();
  const std::vector<Criterion> criteria{
      {"AC1", 1.0, ac1},  {"AC2", 30.0, ac2}, {"AC3", 60.0, ac3}, {"AC4", 60.0, ac4}, {"AC5", 30.0, ac5},
      {"AC6", 60.0, ac6}, {"AC7", 60.0, ac7}, {"AC8", 60.0, ac8}, {"AC9", 60.0, ac9},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v{false, ""};
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < c.budget_seconds;
    const bool pass = v.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s %s [%.2fs, budget %.0fs%s] %s\n", pass ? "PASS" : "FAIL", c.id, seconds, c.budget_seconds,
                in_time ? "" : ", over budget", v.detail.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
