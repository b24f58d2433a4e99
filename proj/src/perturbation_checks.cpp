#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "harness_runner.hpp"
#include "popuc/harness.hpp"
#include "popuc/rank_one.hpp"

namespace popuc {

using detail::interlace_outcome;
using detail::uniform_index;
using detail::unit_interval;

const char* property_id(PerturbationProperty p) noexcept {
  switch (p) {
    case PerturbationProperty::GapCount: return "2.3";
    case PerturbationProperty::CyclicInterlace: return "2.4";
    case PerturbationProperty::ClosedArcEigenvalue: return "2.5";
    case PerturbationProperty::DirectSum: return "2.6";
    case PerturbationProperty::SchurShift: return "2.8";
  }
  return "2.?";
}

Matrix haar_unitary(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = Complex(normal(rng), normal(rng));
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

Vector random_unit_vector(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(normal(rng), normal(rng));
  return v.normalized();
}

namespace {

TrialOutcome resample() {
  TrialOutcome out;
  out.status = TrialStatus::Resample;
  return out;
}

// Multiplier away from 1 (lambda = 1 is the trivial perturbation).
CirclePoint random_multiplier(std::mt19937_64& rng) {
  for (;;) {
    const CirclePoint lambda = random_circle_point(rng);
    if (std::abs(lambda.value() - 1.0) > 1e-3) return lambda;
  }
}

std::vector<double> random_angles(std::mt19937_64& rng, std::size_t count, double lo, double hi) {
  std::vector<double> out(count);
  for (auto& a : out) a = lo + (hi - lo) * unit_interval(rng);
  return out;
}

Matrix with_spectrum(const Matrix& q, const std::vector<double>& angles) {
  Vector d(static_cast<Eigen::Index>(angles.size()));
  for (std::size_t i = 0; i < angles.size(); ++i) d(static_cast<Eigen::Index>(i)) = std::polar(1.0, angles[i]);
  return q * d.asDiagonal() * q.adjoint();
}

// Coordinates in the eigenbasis with roughly a third of them switched off.
Vector sparse_coordinates(std::mt19937_64& rng, Eigen::Index n) {
  Vector c = random_unit_vector(rng, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (unit_interval(rng) < 1.0 / 3.0) c(i) = 0.0;
  }
  if (c.norm() == 0.0) c(0) = 1.0;
  return c.normalized();
}

double min_distance_to(const std::vector<CirclePoint>& points, const CirclePoint& z) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : points) best = std::min(best, distance(p, z));
  return best;
}

Json arc_json(const OpenArc& arc) { return Json::array({to_json(arc.start()), to_json(arc.end())}); }

Eigen::Index dimension(std::mt19937_64& rng, const TrialConfig& cfg, std::size_t floor) {
  const std::size_t lo = std::max(cfg.n_min, floor);
  const std::size_t hi = std::max(cfg.n_max, lo);
  return static_cast<Eigen::Index>(uniform_index(rng, lo, hi));
}

Matrix random_cmv(std::mt19937_64& rng, const TrialConfig& cfg, Eigen::Index k) {
  std::vector<Complex> alphas(static_cast<std::size_t>(k - 1));
  for (auto& a : alphas) a = random_disk_point(rng, cfg.alpha_radius_max);
  return build(VerblunskyWord(std::move(alphas)), random_circle_point(rng)).dense().matrix();
}

using Draw = std::pair<Json, TrialOutcome>;

Draw gap_count_trial(std::mt19937_64& rng, const TrialConfig& cfg, std::size_t index) {
  const Eigen::Index k = dimension(rng, cfg, 2);
  const bool endpoints_in_spectrum = index % 2 == 0;
  const double width = 0.5 + 2.0 * unit_interval(rng);
  const double start = kTwoPi * unit_interval(rng);
  const OpenArc gap(CirclePoint::polar(start), CirclePoint::polar(start + width));

  std::vector<double> angles;
  Vector coords;
  if (endpoints_in_spectrum) {
    // Endpoints are eigenvalues, so a cyclic phi is required for the bound.
    angles = random_angles(rng, static_cast<std::size_t>(k - 2), start + width, start + kTwoPi);
    angles.push_back(start);
    angles.push_back(start + width);
    coords = random_unit_vector(rng, k);
  } else {
    angles = random_angles(rng, static_cast<std::size_t>(k), start + width + 0.05, start + kTwoPi - 0.05);
    coords = sparse_coordinates(rng, k);
  }
  const Matrix q = haar_unitary(rng, k);
  const UnitaryMatrix u(with_spectrum(q, angles));
  const CirclePoint lambda = random_multiplier(rng);
  const RankOnePair pair(u, q * coords, lambda);

  Json inst{{"base", to_json(u.matrix())},
            {"phi", to_json(Matrix(pair.direction()))},
            {"lambda", to_json(lambda)},
            {"gap", arc_json(gap)}};

  const UnitaryEigen before = unitary_eigs(u);
  const UnitaryEigen after = unitary_eigs(perturb(pair));
  TrialOutcome out;
  out.slack = std::max(before.max_residual, after.max_residual);
  out.tally = endpoints_in_spectrum ? "endpoints_in_spectrum" : "interior_gap";
  double separation = std::numeric_limits<double>::infinity();
  std::vector<CirclePoint> inside;
  for (const auto& z : after.values) {
    separation = std::min({separation, distance(z, gap.start()), distance(z, gap.end())});
    if (closed_arc_contains(gap, z)) inside.push_back(z);
  }
  try {
    separation = std::min(separation, min_separation(before.cyclic_set()));
  } catch (const Error&) {
    separation = 0.0;
  }
  out.separation = separation;
  if (inside.size() > 1) {
    out.status = TrialStatus::Fail;
    out.witness = Json{{"eigenvalues_in_closed_gap", to_json(inside)}};
  }
  return {std::move(inst), std::move(out)};
}

Draw cyclic_interlace_trial(std::mt19937_64& rng, const TrialConfig& cfg, std::size_t index) {
  const Eigen::Index k = dimension(rng, cfg, 2);
  const Matrix base = index % 2 == 0 ? haar_unitary(rng, k) : random_cmv(rng, cfg, k);
  const UnitaryMatrix u(base);
  const Vector phi = random_unit_vector(rng, k);
  const CirclePoint lambda = random_multiplier(rng);
  Json inst{{"base", to_json(u.matrix())}, {"phi", to_json(Matrix(phi))}, {"lambda", to_json(lambda)}};
  if (!krylov_cyclic(u.matrix(), phi).cyclic) return {std::move(inst), resample()};

  const RankOnePair pair(u, phi, lambda);
  const UnitaryEigen before = unitary_eigs(u);
  const UnitaryEigen after = unitary_eigs(perturb(pair));
  try {
    return {std::move(inst), interlace_outcome(before.cyclic_set(), after.cyclic_set(),
                                               std::max(before.max_residual, after.max_residual))};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DuplicatePoint) throw;
    return {std::move(inst), resample()};
  }
}

Draw closed_arc_trial(std::mt19937_64& rng, const TrialConfig& cfg, std::size_t) {
  const Eigen::Index k = dimension(rng, cfg, 2);
  const auto angles = random_angles(rng, static_cast<std::size_t>(k), 0.0, kTwoPi);
  const Matrix q = haar_unitary(rng, k);
  const UnitaryMatrix u(with_spectrum(q, angles));
  const CirclePoint lambda = random_multiplier(rng);
  const RankOnePair pair(u, q * sparse_coordinates(rng, k), lambda);
  Json inst{{"base", to_json(u.matrix())},
            {"phi", to_json(Matrix(pair.direction()))},
            {"lambda", to_json(lambda)}};

  const UnitaryEigen before = unitary_eigs(u);
  const UnitaryEigen after = unitary_eigs(perturb(pair));
  TrialOutcome out;
  out.slack = std::max(before.max_residual, after.max_residual);
  CyclicSet spectrum;
  try {
    spectrum = before.cyclic_set();
  } catch (const Error&) {
    return {std::move(inst), resample()};
  }
  out.separation = min_separation(spectrum);
  for (std::size_t j = 0; j < spectrum.size(); ++j) {
    const OpenArc arc = spectrum.gap(j);
    const bool hit = std::any_of(after.values.begin(), after.values.end(),
                                 [&](const CirclePoint& z) { return closed_arc_contains(arc, z); });
    if (!hit) {
      out.status = TrialStatus::Fail;
      out.witness = Json{{"closed_arc", arc_json(arc)}, {"perturbed_spectrum", to_json(after.values)}};
      break;
    }
  }
  return {std::move(inst), std::move(out)};
}

Draw direct_sum_trial(std::mt19937_64& rng, const TrialConfig& cfg, std::size_t) {
  const std::size_t half = std::max<std::size_t>(1, cfg.n_max / 2);
  const std::size_t k1 = uniform_index(rng, 1, half);
  const std::size_t k2 = uniform_index(rng, 1, half);
  const std::size_t shared = uniform_index(rng, 0, std::min(k1, k2));
  const auto common = random_angles(rng, shared, 0.0, kTwoPi);
  auto angles1 = random_angles(rng, k1 - shared, 0.0, kTwoPi);
  auto angles2 = random_angles(rng, k2 - shared, 0.0, kTwoPi);
  angles1.insert(angles1.end(), common.begin(), common.end());
  angles2.insert(angles2.end(), common.begin(), common.end());

  const Matrix u1 = with_spectrum(haar_unitary(rng, static_cast<Eigen::Index>(k1)), angles1);
  const Matrix u2 = with_spectrum(haar_unitary(rng, static_cast<Eigen::Index>(k2)), angles2);
  const Vector phi1 = random_unit_vector(rng, static_cast<Eigen::Index>(k1));
  const Vector phi2 = random_unit_vector(rng, static_cast<Eigen::Index>(k2));
  const double t = 0.1 + (kTwoPi / 4.0 - 0.2) * unit_interval(rng);
  const Complex a = std::cos(t);
  const Complex b = std::polar(std::sin(t), kTwoPi * unit_interval(rng));
  const CirclePoint lambda = random_multiplier(rng);

  Json inst{{"u1", to_json(u1)},       {"u2", to_json(u2)},       {"phi1", to_json(Matrix(phi1))},
            {"phi2", to_json(Matrix(phi2))}, {"a", to_json(a)}, {"b", to_json(b)},
            {"lambda", to_json(lambda)}, {"common", shared}};
  if (!krylov_cyclic(u1, phi1).cyclic || !krylov_cyclic(u2, phi2).cyclic) return {std::move(inst), resample()};
  return {std::move(inst), evaluate_direct_sum(u1, u2, phi1, phi2, a, b, lambda)};
}

Draw schur_shift_trial(std::mt19937_64& rng, const TrialConfig& cfg, std::size_t index) {
  const Eigen::Index k = dimension(rng, cfg, 1);
  const Matrix base = index % 2 == 0 ? haar_unitary(rng, k) : random_cmv(rng, cfg, k);
  const RankOnePair pair(UnitaryMatrix(base), random_unit_vector(rng, k), random_circle_point(rng));
  Json inst{{"base", to_json(base)},
            {"phi", to_json(Matrix(pair.direction()))},
            {"lambda", to_json(pair.multiplier())}};
  TrialOutcome out;
  const auto grid = disk_grid(50, 0.7);
  out.slack = schur_shift_check(pair, grid);
  if (!(out.slack <= 1e-8)) {
    out.status = TrialStatus::Fail;
    out.witness = Json{{"deviation", out.slack}};
  }
  return {std::move(inst), std::move(out)};
}

}  // namespace

TrialOutcome evaluate_direct_sum(const Matrix& u1, const Matrix& u2, const Vector& phi1, const Vector& phi2,
                                 Complex a, Complex b, const CirclePoint& lambda) {
  const Eigen::Index k1 = u1.rows();
  const Eigen::Index k2 = u2.rows();
  Matrix block = Matrix::Zero(k1 + k2, k1 + k2);
  block.topLeftCorner(k1, k1) = u1;
  block.bottomRightCorner(k2, k2) = u2;
  Vector phi(k1 + k2);
  phi << a * phi1, b * phi2;
  const UnitaryMatrix u(block);
  const RankOnePair pair(u, phi, lambda);

  TrialOutcome out;
  CyclicSet first;
  CyclicSet second;
  UnitaryEigen after;
  try {
    const UnitaryEigen e1 = unitary_eigs(UnitaryMatrix(u1));
    const UnitaryEigen e2 = unitary_eigs(UnitaryMatrix(u2));
    first = e1.cyclic_set();
    second = e2.cyclic_set();
    after = unitary_eigs(perturb(pair));
    out.slack = std::max({e1.max_residual, e2.max_residual, after.max_residual});
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DuplicatePoint) throw;
    return resample();
  }

  // Split the spectrum of U into the shared values and the rest.
  std::vector<CirclePoint> shared;
  const std::vector<CirclePoint> first_points(first.begin(), first.end());
  std::vector<CirclePoint> distinct = first_points;
  double separation = std::min(min_separation(first), min_separation(second));
  for (const auto& z : second) {
    const double d = min_distance_to(first_points, z);
    if (d <= kMatchTol) {
      shared.push_back(z);
    } else {
      separation = std::min(separation, d);
      distinct.push_back(z);
    }
  }
  out.tally = "common_" + std::to_string(shared.size());

  std::vector<CirclePoint> remaining = after.values;
  double worst_persist = 0.0;
  for (const auto& c : shared) {
    auto it = std::min_element(remaining.begin(), remaining.end(), [&](const CirclePoint& x, const CirclePoint& y) {
      return distance(x, c) < distance(y, c);
    });
    const double d = it == remaining.end() ? std::numeric_limits<double>::infinity() : distance(*it, c);
    worst_persist = std::max(worst_persist, d);
    if (d > kMatchTol) {
      out.status = TrialStatus::Fail;
      out.witness = Json{{"reason", "common eigenvalue does not persist"},
                         {"common", to_json(c)},
                         {"perturbed_spectrum", to_json(after.values)}};
      out.separation = separation;
      return out;
    }
    remaining.erase(it);
  }
  out.slack = std::max(out.slack, worst_persist);

  try {
    TrialOutcome inter = interlace_outcome(cyclic_order(distinct), cyclic_order(remaining), out.slack);
    inter.tally = out.tally;
    inter.separation = std::min(inter.separation, separation);
    return inter;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DuplicatePoint) throw;
    TrialOutcome bad = resample();
    bad.separation = 0.0;
    return bad;
  }
}

TheoremReport run_perturbation_property(PerturbationProperty property, const TrialConfig& cfg) {
  cfg.validate();
  TheoremReport report;
  report.theorem = property_id(property);
  report.seed = cfg.seed;
  report.config = cfg.to_json();
  const auto records = detail::run_trials(cfg.trials, cfg.threads, [&](std::size_t index) {
    auto rng = trial_stream(cfg.seed, index);
    return detail::resampling_trial(rng, [&](std::mt19937_64& g, std::size_t attempt) {
      Draw d;
      switch (property) {
        case PerturbationProperty::GapCount: d = gap_count_trial(g, cfg, index); break;
        case PerturbationProperty::CyclicInterlace: d = cyclic_interlace_trial(g, cfg, index); break;
        case PerturbationProperty::ClosedArcEigenvalue: d = closed_arc_trial(g, cfg, index); break;
        case PerturbationProperty::DirectSum: d = direct_sum_trial(g, cfg, index); break;
        case PerturbationProperty::SchurShift: d = schur_shift_trial(g, cfg, index); break;
      }
      d.first["seed"] = cfg.seed;
      d.first["trial_index"] = index;
      d.first["attempt"] = attempt;
      return d;
    });
  });
  detail::fold(report, records);
  return report;
}

std::vector<TheoremReport> check_perturbation_properties(const std::set<PerturbationProperty>& properties, const TrialConfig& cfg) {
  std::vector<TheoremReport> out;
  for (const auto p : properties) out.push_back(run_perturbation_property(p, cfg));
  return out;
}

}  // namespace popuc
