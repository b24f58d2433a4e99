#include "popuc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "harness_runner.hpp"

namespace popuc {

// ---------------------------------------------------------------------------
// Configuration and instances

void TrialConfig::validate() const {
  if (n_min < 1) throw Error(ErrorKind::InvalidArgument, "n_min must be at least 1");
  if (n_max < n_min) throw Error(ErrorKind::InvalidArgument, "n_max must be at least n_min");
  if (!(alpha_radius_max > 0.0 && alpha_radius_max < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "alpha_radius_max must lie in (0, 1)");
  }
}

Json TrialConfig::to_json() const {
  return Json{{"seed", seed},       {"trials", trials},
              {"n_min", n_min},     {"n_max", n_max},
              {"alpha_radius_max", alpha_radius_max}};
}

Json Instance::to_json() const {
  return Json{{"seed", seed}, {"trial_index", trial_index}, {"attempt", attempt}, {"n", n},
              {"m", m},       {"word", popuc::to_json(word)}, {"betas", popuc::to_json(betas)}};
}

std::mt19937_64 trial_stream(std::uint64_t seed, std::size_t trial_index) {
  const auto index = static_cast<std::uint64_t>(trial_index);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

namespace detail {

double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

Json witness_from(const InterlaceVerdict& v, const CyclicSet& a, const CyclicSet& b) {
  Json w{{"first", to_json(a)}, {"second", to_json(b)}};
  if (v.witness_arc) {
    w["arc"] = Json::array({to_json(v.witness_arc->start()), to_json(v.witness_arc->end())});
    w["members_in_arc"] = v.witness_count;
  }
  return w;
}

double separation_of(const CyclicSet& a, const CyclicSet& b) {
  return std::min({min_separation(a), min_separation(b), min_cross_distance(a, b)});
}

// Interlacing of two zero sets, with shared points reported as failures.
TrialOutcome interlace_outcome(const CyclicSet& a, const CyclicSet& b, double residual) {
  TrialOutcome out;
  out.slack = residual;
  out.separation = separation_of(a, b);
  try {
    const InterlaceVerdict v = strictly_interlace(a, b);
    if (!v.interlace) {
      out.status = TrialStatus::Fail;
      out.witness = witness_from(v, a, b);
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SharedPoint) throw;
    out.status = TrialStatus::Fail;
    out.witness = Json{{"error", e.what()}, {"first", to_json(a)}, {"second", to_json(b)}};
  }
  return out;
}

}  // namespace detail

Complex random_disk_point(std::mt19937_64& rng, double radius) {
  const double r = radius * std::sqrt(detail::unit_interval(rng));
  return std::polar(r, kTwoPi * detail::unit_interval(rng));
}

CirclePoint random_circle_point(std::mt19937_64& rng) {
  return CirclePoint::polar(kTwoPi * detail::unit_interval(rng));
}

Instance draw_instance(const TrialConfig& cfg, std::mt19937_64& rng) {
  Instance inst;
  inst.n = detail::uniform_index(rng, cfg.n_min, cfg.n_max);
  inst.m = inst.n < cfg.n_max ? detail::uniform_index(rng, inst.n + 1, cfg.n_max) : inst.n;
  std::vector<Complex> alphas(cfg.n_max);
  for (auto& a : alphas) a = random_disk_point(rng, cfg.alpha_radius_max);
  inst.word = VerblunskyWord(std::move(alphas));
  inst.betas = {random_circle_point(rng), random_circle_point(rng)};
  inst.seed = cfg.seed;
  return inst;
}

Instance random_instance(const TrialConfig& cfg, std::size_t trial_index) {
  cfg.validate();
  auto rng = trial_stream(cfg.seed, trial_index);
  Instance inst = draw_instance(cfg, rng);
  inst.trial_index = trial_index;
  return inst;
}

// ---------------------------------------------------------------------------
// Reports

Json TheoremReport::to_json() const {
  Json fails = Json::array();
  for (const auto& f : failures) fails.push_back(Json{{"instance", f.instance}, {"witness", f.witness}});
  Json tally = Json::object();
  for (const auto& [k, v] : tallies) tally[k] = v;
  return Json{{"theorem", theorem}, {"trials", trials},   {"failures", fails},
              {"max_slack", max_slack}, {"seed", seed},   {"config", config},
              {"passed", passed()},   {"resampled", resampled}, {"skipped", skipped},
              {"tallies", tally},     {"notes", notes}};
}

std::string TheoremReport::summary() const {
  std::ostringstream out;
  out << theorem << ": " << (passed() ? "PASS" : "FAIL") << " trials=" << trials
      << " failures=" << failures.size() << " resampled=" << resampled << " skipped=" << skipped
      << " max_slack=" << max_slack;
  for (const auto& [k, v] : tallies) out << " " << k << "=" << v;
  return out.str();
}

void TheoremReport::absorb(const TrialOutcome& outcome, const Json& instance) {
  if (outcome.status == TrialStatus::Resample) {
    ++skipped;
    return;
  }
  ++trials;
  max_slack = std::max(max_slack, outcome.slack);
  if (!outcome.tally.empty()) ++tallies[outcome.tally];
  if (outcome.status == TrialStatus::Fail) failures.push_back(Failure{instance, outcome.witness});
}

namespace {

TheoremReport single_report(const std::string& id, const TrialOutcome& outcome, const Json& instance) {
  TheoremReport report;
  report.theorem = id;
  report.absorb(outcome, instance);
  if (outcome.status == TrialStatus::Resample) {
    report.notes.push_back("instance too close to a coincidence to classify");
  }
  return report;
}

struct ZeroSet {
  CyclicSet points;
  double residual;
};

// Eigenvalues of the CMV matrix. DuplicatePoint propagates.
ZeroSet zeros_of(const FiniteCMV& c) {
  const UnitaryEigen eig = unitary_eigs(c.dense());
  return ZeroSet{eig.cyclic_set(), eig.max_residual};
}

ZeroSet popuc_zeros(const VerblunskyWord& word, const CirclePoint& beta, std::size_t n) {
  return zeros_of(build(word.prefix(n - 1), beta));
}

void require_degree(const VerblunskyWord& word, std::size_t n, std::size_t needed_coefficients) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "degree must be at least 1");
  if (word.size() < needed_coefficients) {
    std::ostringstream msg;
    msg << "degree " << n << " needs " << needed_coefficients << " coefficients, word has " << word.size();
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
}

TrialOutcome failure(Json witness) {
  TrialOutcome out;
  out.status = TrialStatus::Fail;
  out.witness = std::move(witness);
  return out;
}

TrialOutcome degenerate(const Error& e) {
  TrialOutcome out = failure(Json{{"error", e.what()}});
  out.separation = 0.0;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Theorem checks

using detail::interlace_outcome;

TrialOutcome evaluate_thm_1_1(const VerblunskyWord& word, const std::vector<OpenArc>& gaps,
                              const std::vector<CirclePoint>& betas, const std::vector<std::size_t>& ns) {
  for (const std::size_t n : ns) require_degree(word, n, n - 1);
  TrialOutcome out;
  if (gaps.empty()) {
    out.tally = "vacuous";
    return out;
  }
  out.tally = "gap";
  std::size_t ambiguous = 0;
  for (const std::size_t n : ns) {
    for (const auto& beta : betas) {
      ZeroSet zeros;
      try {
        zeros = popuc_zeros(word, beta, n);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::DuplicatePoint) throw;
        return degenerate(e);
      }
      out.slack = std::max(out.slack, zeros.residual);
      for (const auto& gap : gaps) {
        std::vector<CirclePoint> inside;
        for (const auto& z : zeros.points) {
          if (same_point(z, gap.start()) || same_point(z, gap.end())) {
            ++ambiguous;
            continue;
          }
          if (arc_contains(gap, z)) inside.push_back(z);
        }
        if (inside.size() >= 2) {
          TrialOutcome bad = failure(Json{{"gap", Json::array({to_json(gap.start()), to_json(gap.end())})},
                                          {"beta", to_json(beta)},
                                          {"n", n},
                                          {"zeros_in_gap", to_json(inside)}});
          bad.slack = out.slack;
          return bad;
        }
      }
    }
  }
  if (ambiguous > 0) out.witness = Json{{"zeros_on_gap_endpoints", ambiguous}};
  return out;
}

TheoremReport check_thm_1_1(const VerblunskyWord& word, const std::vector<OpenArc>& gaps,
                            const std::vector<CirclePoint>& betas, const std::vector<std::size_t>& ns) {
  Json gap_json = Json::array();
  for (const auto& g : gaps) gap_json.push_back(Json::array({to_json(g.start()), to_json(g.end())}));
  TheoremReport r = single_report("1.1", evaluate_thm_1_1(word, gaps, betas, ns),
                                  Json{{"word", to_json(word)}, {"gaps", gap_json},
                                       {"betas", to_json(betas)}, {"ns", ns}});
  r.notes.push_back("gaps are supplied or estimated, not derived from the support of a measure");
  return r;
}

TrialOutcome evaluate_thm_1_2(const VerblunskyWord& word, const CirclePoint& beta, std::size_t n) {
  require_degree(word, n, n - 1);
  const VerblunskyWord head = word.prefix(n - 1);
  const CirclePoint minus_beta = CirclePoint::normalized(-beta.value());
  try {
    const ZeroSet first = zeros_of(build(head, beta));
    const ZeroSet second = zeros_of(build(head.negated(), minus_beta));
    return interlace_outcome(first.points, second.points, std::max(first.residual, second.residual));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DuplicatePoint) throw;
    return degenerate(e);
  }
}

TheoremReport check_thm_1_2(const VerblunskyWord& word, const CirclePoint& beta, std::size_t n) {
  return single_report("1.2", evaluate_thm_1_2(word, beta, n),
                       Json{{"word", to_json(word)}, {"beta", to_json(beta)}, {"n", n}});
}

TrialOutcome evaluate_thm_1_3(const VerblunskyWord& word, std::size_t n, const CirclePoint& beta,
                              const CirclePoint& beta_prime) {
  require_degree(word, n, n - 1);
  if (same_point(beta, beta_prime)) {
    throw Error(ErrorKind::InvalidArgument, "boundary coefficients must be distinct");
  }
  try {
    const ZeroSet first = popuc_zeros(word, beta, n);
    const ZeroSet second = popuc_zeros(word, beta_prime, n);
    return interlace_outcome(first.points, second.points, std::max(first.residual, second.residual));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DuplicatePoint) throw;
    return degenerate(e);
  }
}

TheoremReport check_thm_1_3(const VerblunskyWord& word, std::size_t n, const CirclePoint& beta,
                            const CirclePoint& beta_prime) {
  return single_report("1.3", evaluate_thm_1_3(word, n, beta, beta_prime),
                       Json{{"word", to_json(word)}, {"n", n}, {"beta", to_json(beta)},
                            {"beta_prime", to_json(beta_prime)}});
}

TrialOutcome evaluate_thm_1_4(const VerblunskyWord& word, const CirclePoint& beta_n,
                              const CirclePoint& beta_next, std::size_t n, DecouplingRule rule,
                              const std::optional<CirclePoint>& planted) {
  require_degree(word, n, n);
  ZeroSet low;
  ZeroSet high;
  CirclePoint lambda = beta_n;
  try {
    const FiniteCMV c_next = build(word.prefix(n), beta_next);
    low = popuc_zeros(word, beta_n, n);
    high = zeros_of(c_next);
    lambda = rule == DecouplingRule::Constructed
                 ? split(c_next, beta_n).decoupled
                 : transcribed_decoupling_value(word[n - 1], beta_n, beta_next);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DuplicatePoint) throw;
    return degenerate(e);
  }

  TrialOutcome out;
  out.slack = std::max(low.residual, high.residual);
  const Json base{{"zeros_n", to_json(low.points)}, {"zeros_n_plus_1", to_json(high.points)},
                  {"lambda_n", to_json(lambda)}};

  // A known common zero must be the split-off value, however the zero sets
  // happen to be conditioned.
  if (planted) {
    const double miss = distance(lambda, *planted);
    out.slack = std::max(out.slack, miss);
    if (miss > kMatchTol) {
      TrialOutcome bad = failure(base);
      bad.witness["reason"] = "lambda_n differs from the common zero";
      bad.witness["common_zero"] = to_json(*planted);
      bad.witness["distance"] = miss;
      bad.tally = "case_ii";
      bad.slack = out.slack;
      return bad;
    }
  }

  // Pairs closer than kMatchTol are common zeros; anything in the band above
  // that cannot be classified reliably.
  std::vector<std::pair<std::size_t, std::size_t>> common;
  double separation = std::min(min_separation(low.points), min_separation(high.points));
  for (std::size_t i = 0; i < low.points.size(); ++i) {
    for (std::size_t j = 0; j < high.points.size(); ++j) {
      const double d = distance(low.points[i], high.points[j]);
      if (d <= kMatchTol) {
        common.emplace_back(i, j);
      } else {
        separation = std::min(separation, d);
        if (d <= 10.0 * kMatchTol) out.status = TrialStatus::Resample;
      }
    }
  }
  out.separation = separation;
  if (out.status == TrialStatus::Resample) return out;

  // Eigenvectors of random CMV matrices localize, so zeros of successive
  // polynomials can agree to within a few ulps without being equal. Matches
  // the theorem cannot accommodate (several, or one away from lambda_n) are
  // therefore numerically undecidable and resampled.
  if (common.size() > 1) {
    out.status = TrialStatus::Resample;
    out.separation = 0.0;
    return out;
  }

  if (common.empty() && planted) {
    TrialOutcome bad = failure(base);
    bad.witness["reason"] = "the common zero is missing from the zero sets";
    bad.witness["common_zero"] = to_json(*planted);
    return bad;
  }
  if (common.empty()) {
    out.tally = "case_i";
    double to_lambda = std::numeric_limits<double>::infinity();
    for (const auto& z : low.points) to_lambda = std::min(to_lambda, distance(z, lambda));
    for (const auto& z : high.points) to_lambda = std::min(to_lambda, distance(z, lambda));
    if (to_lambda <= kMatchTol) {
      TrialOutcome bad = failure(base);
      bad.witness["reason"] = "no common zero, yet lambda_n is a zero";
      bad.tally = out.tally;
      return bad;
    }
    if (to_lambda <= 10.0 * kMatchTol) {
      out.status = TrialStatus::Resample;
      return out;
    }
    out.separation = std::min(out.separation, to_lambda);
    const std::vector<CirclePoint> lambda_only{lambda};
    const CyclicSet augmented = merge(low.points, cyclic_order(lambda_only));
    TrialOutcome inter = interlace_outcome(augmented, high.points, out.slack);
    inter.tally = out.tally;
    inter.separation = std::min(inter.separation, out.separation);
    if (inter.status == TrialStatus::Fail) {
      inter.witness["zeros_n"] = base["zeros_n"];
      inter.witness["lambda_n"] = base["lambda_n"];
      inter.witness["reason"] = "union with lambda_n does not interlace";
    }
    return inter;
  }

  out.tally = "case_ii";
  const CirclePoint shared = high.points[common.front().second];
  const double miss = distance(shared, lambda);
  out.slack = std::max(out.slack, miss);
  if (miss > kMatchTol) {
    out.status = TrialStatus::Resample;
    out.separation = 0.0;
    return out;
  }
  const CyclicSet rest = high.points.without(common.front().second);
  TrialOutcome inter = interlace_outcome(low.points, rest, out.slack);
  inter.tally = out.tally;
  // The removed pair is a coincidence by construction, not a conditioning issue.
  inter.separation = std::min(out.separation, inter.separation);
  if (inter.status == TrialStatus::Fail) inter.witness["reason"] = "remaining zeros do not interlace";
  return inter;
}

TheoremReport check_thm_1_4(const VerblunskyWord& word, const CirclePoint& beta_n, const CirclePoint& beta_next,
                            std::size_t n, DecouplingRule rule, const std::optional<CirclePoint>& planted) {
  Json instance{{"word", to_json(word)}, {"beta_n", to_json(beta_n)}, {"beta_next", to_json(beta_next)}, {"n", n}};
  if (planted) instance["common_zero"] = to_json(*planted);
  return single_report("1.4", evaluate_thm_1_4(word, beta_n, beta_next, n, rule, planted), instance);
}

TrialOutcome evaluate_thm_3_4(const VerblunskyWord& word, const CirclePoint& beta_n, const CirclePoint& beta_m,
                              std::size_t n, std::size_t m) {
  if (m <= n) throw Error(ErrorKind::InvalidArgument, "the second degree must exceed the first");
  require_degree(word, m, m - 1);
  ZeroSet low;
  ZeroSet high;
  try {
    low = popuc_zeros(word, beta_n, n);
    high = popuc_zeros(word, beta_m, m);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DuplicatePoint) throw;
    return degenerate(e);
  }
  TrialOutcome out;
  out.slack = std::max(low.residual, high.residual);
  out.separation = detail::separation_of(low.points, high.points);
  if (n < 2) {
    out.tally = "vacuous";
    return out;
  }
  for (std::size_t j = 0; j < low.points.size(); ++j) {
    const OpenArc gap = low.points.gap(j);
    std::size_t inside = 0;
    for (const auto& z : high.points) {
      if (same_point(z, gap.start()) || same_point(z, gap.end())) continue;
      if (arc_contains(gap, z)) ++inside;
    }
    if (inside == 0) {
      TrialOutcome bad = failure(Json{{"arc", Json::array({to_json(gap.start()), to_json(gap.end())})},
                                      {"zeros_n", to_json(low.points)},
                                      {"zeros_m", to_json(high.points)}});
      bad.slack = out.slack;
      bad.separation = out.separation;
      return bad;
    }
  }
  return out;
}

TheoremReport check_thm_3_4(const VerblunskyWord& word, const CirclePoint& beta_n, const CirclePoint& beta_m,
                            std::size_t n, std::size_t m) {
  return single_report("3.4", evaluate_thm_3_4(word, beta_n, beta_m, n, m),
                       Json{{"word", to_json(word)}, {"beta_n", to_json(beta_n)},
                            {"beta_m", to_json(beta_m)}, {"n", n}, {"m", m}});
}

// ---------------------------------------------------------------------------
// Support gaps

std::vector<Complex> opuc_zeros(const VerblunskyWord& word, std::size_t degree) {
  if (degree == 0) return {};
  if (word.size() < degree) throw Error(ErrorKind::InvalidArgument, "word shorter than the requested degree");
  std::vector<Block> blocks;
  blocks.reserve(degree);
  for (std::size_t j = 0; j < degree; ++j) blocks.push_back(theta(word[j]).entries);
  // The last block is cut to conj(alpha_{N-1}), which leaves the top-left
  // N x N corner of the full CMV matrix.
  const CMVFactorization f = factorize(blocks, 1);
  const Matrix truncated = f.L * f.M;
  Eigen::ComplexEigenSolver<Matrix> solver(truncated, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NumericalFailure, "eigenvalue iteration did not converge");
  }
  const auto& ev = solver.eigenvalues();
  return std::vector<Complex>(ev.data(), ev.data() + ev.size());
}

std::optional<OpenArc> estimate_support_gap(const VerblunskyWord& word, std::size_t degree, double shrink) {
  if (!(shrink >= 0.0 && shrink < 0.5)) throw Error(ErrorKind::InvalidArgument, "shrink must lie in [0, 0.5)");
  std::vector<double> angles;
  for (const Complex z : opuc_zeros(word, degree)) {
    if (std::abs(z) < 0.5) continue;
    double a = std::arg(z);
    if (a < 0.0) a += kTwoPi;
    angles.push_back(a);
  }
  if (angles.size() < 2) return std::nullopt;
  std::sort(angles.begin(), angles.end());
  double best = -1.0;
  double start = 0.0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double next = i + 1 < angles.size() ? angles[i + 1] : angles.front() + kTwoPi;
    if (next - angles[i] > best) {
      best = next - angles[i];
      start = angles[i];
    }
  }
  const double lo = start + shrink * best;
  const double hi = start + (1.0 - shrink) * best;
  const CirclePoint a = CirclePoint::polar(lo);
  const CirclePoint b = CirclePoint::polar(hi);
  if (same_point(a, b)) return std::nullopt;
  return OpenArc(a, b);
}

// ---------------------------------------------------------------------------
// Common zeros

std::vector<CirclePoint> corollary_beta_sequence(const CirclePoint& lambda, const VerblunskyWord& word,
                                                 std::size_t count) {
  if (count == 0) return {};
  if (word.size() + 1 < count) {
    throw Error(ErrorKind::InvalidArgument, "word too short for the requested number of boundaries");
  }
  std::vector<CirclePoint> betas;
  betas.reserve(count);
  betas.push_back(lambda.conj());
  for (std::size_t n = 1; n < count; ++n) {
    // The split of C_{n+1} to C_n leaves conj(beta_{n+1}) * x with
    // x = rank_one_completion(alpha_{n-1}, conj(beta_n)); solve for beta_{n+1}.
    const CirclePoint x = rank_one_completion(word[n - 1], betas.back().conj());
    betas.push_back(lambda.conj() * x);
  }
  return betas;
}

std::vector<double> common_zero_residuals(const CirclePoint& lambda, const VerblunskyWord& word,
                                          const std::vector<CirclePoint>& betas) {
  std::vector<double> out;
  out.reserve(betas.size());
  for (std::size_t n = 1; n <= betas.size(); ++n) {
    out.push_back(std::abs(eval(popuc_first(word, betas[n - 1], n), lambda.value())));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Randomized runs

namespace {

TheoremReport new_report(const std::string& id, const TrialConfig& cfg) {
  cfg.validate();
  TheoremReport r;
  r.theorem = id;
  r.seed = cfg.seed;
  r.config = cfg.to_json();
  return r;
}

template <class Eval>
TheoremReport run_instances(const std::string& id, const TrialConfig& cfg, Eval eval) {
  TheoremReport report = new_report(id, cfg);
  const auto records = detail::run_trials(cfg.trials, cfg.threads, [&](std::size_t index) {
    auto rng = trial_stream(cfg.seed, index);
    return detail::resampling_trial(rng, [&](std::mt19937_64& g, std::size_t attempt) {
      Instance inst = draw_instance(cfg, g);
      inst.trial_index = index;
      inst.attempt = attempt;
      return std::make_pair(inst.to_json(), eval(inst));
    });
  });
  detail::fold(report, records);
  return report;
}

}  // namespace

TheoremReport run_thm_1_1(const TrialConfig& cfg, std::size_t gap_degree) {
  TheoremReport report = new_report("1.1", cfg);
  const auto records = detail::run_trials(cfg.trials, cfg.threads, [&](std::size_t index) {
    auto rng = trial_stream(cfg.seed, index);
    return detail::resampling_trial(rng, [&](std::mt19937_64& g, std::size_t attempt) {
      // Constant coefficients give a measure whose support misses an arc
      // around the positive real axis direction of alpha.
      const double r = 0.2 + (cfg.alpha_radius_max - 0.2) * detail::unit_interval(g);
      const Complex alpha = std::polar(std::max(r, 0.05), kTwoPi * detail::unit_interval(g));
      const VerblunskyWord word = VerblunskyWord::constant(alpha, std::max(gap_degree, cfg.n_max));
      const double offset = kTwoPi * detail::unit_interval(g);
      std::vector<CirclePoint> betas;
      for (int k = 0; k < 8; ++k) betas.push_back(CirclePoint::polar(offset + kTwoPi * k / 8.0));
      std::vector<std::size_t> ns;
      for (std::size_t n = cfg.n_min; n <= cfg.n_max; ++n) ns.push_back(n);
      std::vector<OpenArc> gaps;
      if (auto gap = estimate_support_gap(word, gap_degree)) gaps.push_back(*gap);
      Json gap_json = Json::array();
      for (const auto& gp : gaps) gap_json.push_back(Json::array({to_json(gp.start()), to_json(gp.end())}));
      Json inst{{"seed", cfg.seed}, {"trial_index", index}, {"attempt", attempt},
                {"alpha", to_json(alpha)}, {"gap_degree", gap_degree}, {"gaps", gap_json},
                {"betas", to_json(betas)}, {"n_min", cfg.n_min}, {"n_max", cfg.n_max}};
      return std::make_pair(std::move(inst), evaluate_thm_1_1(word, gaps, betas, ns));
    });
  });
  detail::fold(report, records);
  report.notes.push_back(
      "gaps are estimated as the widest zero-free arc of a high-degree orthogonal polynomial, "
      "shrunk on both sides; this checks a weaker statement than the support hypothesis");
  return report;
}

TheoremReport run_thm_1_2(const TrialConfig& cfg) {
  return run_instances("1.2", cfg, [](const Instance& inst) {
    return evaluate_thm_1_2(inst.word, inst.betas[0], inst.n);
  });
}

TheoremReport run_thm_1_3(const TrialConfig& cfg) {
  return run_instances("1.3", cfg, [](const Instance& inst) {
    if (same_point(inst.betas[0], inst.betas[1])) {
      TrialOutcome out;
      out.status = TrialStatus::Resample;
      return out;
    }
    return evaluate_thm_1_3(inst.word, inst.n, inst.betas[0], inst.betas[1]);
  });
}

TheoremReport run_thm_1_4(const TrialConfig& cfg, std::size_t constructed, DecouplingRule rule) {
  TheoremReport report = run_instances("1.4", cfg, [rule](const Instance& inst) {
    return evaluate_thm_1_4(inst.word, inst.betas[0], inst.betas[1], inst.n, rule);
  });
  if (rule == DecouplingRule::Transcribed) report.notes.push_back("split-off value from the transcribed formula");
  if (constructed == 0) return report;

  const auto records = detail::run_trials(constructed, cfg.threads, [&](std::size_t k) {
    const std::size_t index = cfg.trials + k;
    auto rng = trial_stream(cfg.seed, index);
    return detail::resampling_trial(rng, [&](std::mt19937_64& g, std::size_t attempt) {
      Instance inst = draw_instance(cfg, g);
      inst.trial_index = index;
      inst.attempt = attempt;
      const CirclePoint lambda = inst.betas[0];
      const auto betas = corollary_beta_sequence(lambda, inst.word, inst.n + 1);
      inst.betas = {betas[inst.n - 1], betas[inst.n]};
      Json descriptor = inst.to_json();
      descriptor["common_zero"] = to_json(lambda);
      TrialOutcome out = evaluate_thm_1_4(inst.word, inst.betas[0], inst.betas[1], inst.n, rule, lambda);
      if (out.status != TrialStatus::Resample && out.tally == "case_ii") {
        out.tally = "case_ii_constructed";
      }
      return std::make_pair(std::move(descriptor), std::move(out));
    });
  });
  detail::fold(report, records);
  return report;
}

TheoremReport run_thm_3_4(const TrialConfig& cfg) {
  return run_instances("3.4", cfg, [](const Instance& inst) {
    if (inst.m <= inst.n) {
      TrialOutcome out;
      out.status = TrialStatus::Resample;
      return out;
    }
    return evaluate_thm_3_4(inst.word, inst.betas[0], inst.betas[1], inst.n, inst.m);
  });
}

}  // namespace popuc
