#include "popuc/rank_one.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace popuc {

UnitaryMatrix::UnitaryMatrix(Matrix entries) : entries_(std::move(entries)) {
  const double defect = unitarity_defect(entries_);
  if (!(defect <= kUnitaryTol)) {
    std::ostringstream msg;
    msg << "matrix is not unitary: ||U*U - I||_max = " << defect;
    throw Error(ErrorKind::NotUnitary, msg.str());
  }
  record_unitary(defect);
}

RankOnePair::RankOnePair(UnitaryMatrix base, Vector direction, CirclePoint multiplier)
    : base_(std::move(base)), direction_(std::move(direction)), multiplier_(multiplier) {
  if (direction_.size() != base_.size()) {
    throw Error(ErrorKind::SizeMismatch, "direction and matrix dimensions differ");
  }
  if (std::abs(direction_.norm() - 1.0) > 1e-12) {
    throw Error(ErrorKind::InvalidArgument, "direction is not a unit vector");
  }
}

UnitaryMatrix perturb(const RankOnePair& pair) {
  const Matrix& u = pair.base().matrix();
  const Vector& phi = pair.direction();
  const Vector u_phi = u * phi;
  return UnitaryMatrix(u + (pair.multiplier().value() - 1.0) * u_phi * phi.adjoint());
}

RankOneData recover(const UnitaryMatrix& u, const UnitaryMatrix& v) {
  if (u.size() != v.size()) throw Error(ErrorKind::SizeMismatch, "matrix dimensions differ");
  const Matrix diff = v.matrix() - u.matrix();
  Eigen::JacobiSVD<Matrix> svd(diff, Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) <= kRankTol) {
    throw Error(ErrorKind::ZeroDifference, "the matrices coincide");
  }
  if (s.size() > 1 && s(1) > kRankTol) {
    std::ostringstream msg;
    msg << "difference is not rank one: second singular value " << s(1);
    throw Error(ErrorKind::NotRankOne, msg.str());
  }
  Vector phi = svd.matrixV().col(0);
  Eigen::Index top = 0;
  phi.cwiseAbs().maxCoeff(&top);
  phi *= std::conj(phi(top)) / std::abs(phi(top));
  phi.normalize();

  const Complex lambda = (u.matrix() * phi).dot(v.matrix() * phi);
  RankOneData out{phi, CirclePoint::normalized(lambda, 1e-8)};

  const Matrix rebuilt =
      u.matrix() + (out.multiplier.value() - 1.0) * (u.matrix() * phi) * phi.adjoint();
  if (max_abs(rebuilt - v.matrix()) > kUnitaryTol) {
    throw Error(ErrorKind::NumericalFailure, "recovered rank-one data does not reproduce V");
  }
  return out;
}

CyclicSet UnitaryEigen::cyclic_set() const { return cyclic_order(values); }

namespace {

// Rotation of the Hermitian part; irrational in units of pi so that the
// symmetric pairs it confuses are never roots of unity.
constexpr double kHermitianPhase = 0.5772156649015329;
// Hermitian eigenvalues closer than this are split jointly with U itself.
constexpr double kClusterGap = 1e-3;

}  // namespace

UnitaryEigen unitary_eigs(const UnitaryMatrix& u) {
  const Matrix& a = u.matrix();
  const Eigen::Index n = a.rows();

  // QR iteration on U directly stagnates on shift-like matrices (the CMV
  // matrices of the zero word). Instead diagonalize the Hermitian matrix
  // Re(e^{-i phase} U), whose eigenvectors are those of U up to mixing inside
  // clusters of equal cos(theta - phase), and finish each cluster with a small
  // Schur decomposition of the compressed U.
  const Complex rot = std::polar(1.0, -kHermitianPhase);
  const Matrix h = 0.5 * (rot * a + std::conj(rot) * a.adjoint());
  const Eigen::SelfAdjointEigenSolver<Matrix> herm(h);
  if (herm.info() != Eigen::Success) {
    throw Error(ErrorKind::NumericalFailure, "Hermitian eigensolver did not converge");
  }
  const Eigen::VectorXd& cosines = herm.eigenvalues();
  const Matrix& basis = herm.eigenvectors();

  Matrix q(n, n);
  Vector diag(n);
  for (Eigen::Index begin = 0; begin < n;) {
    Eigen::Index end = begin + 1;
    while (end < n && cosines(end) - cosines(end - 1) <= kClusterGap) ++end;
    const Eigen::Index len = end - begin;
    const Matrix block = basis.middleCols(begin, len);
    const Matrix compressed = block.adjoint() * a * block;
    Eigen::ComplexSchur<Matrix> schur(compressed, true);
    if (schur.info() != Eigen::Success) {
      throw Error(ErrorKind::NumericalFailure, "Schur decomposition did not converge");
    }
    q.middleCols(begin, len) = block * schur.matrixU();
    diag.segment(begin, len) = schur.matrixT().diagonal();
    begin = end;
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::vector<CirclePoint> raw;
  raw.reserve(order.size());
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex z = diag(k);
    const double modulus_defect = std::abs(std::abs(z) - 1.0);
    if (!(modulus_defect <= kEigenTol)) {
      throw Error(ErrorKind::NumericalFailure, "eigenvalue of a unitary matrix is off the circle");
    }
    raw.push_back(CirclePoint::normalized(z, kEigenTol));
  }
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return raw[static_cast<std::size_t>(i)].arg() < raw[static_cast<std::size_t>(j)].arg();
  });

  UnitaryEigen out;
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    const CirclePoint& z = raw[static_cast<std::size_t>(src)];
    out.values.push_back(z);
    out.vectors.col(k) = q.col(src);
    const double residual = (a * q.col(src) - z.value() * q.col(src)).norm();
    if (!(residual <= kEigenTol)) {
      std::ostringstream msg;
      msg << "eigenpair residual " << residual << " exceeds tolerance";
      throw Error(ErrorKind::NumericalFailure, msg.str());
    }
    record_eigenpair(residual, std::abs(std::abs(diag(src)) - 1.0));
    out.max_residual = std::max(out.max_residual, residual);
  }
  return out;
}

SpectralMeasure::SpectralMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  double total = 0.0;
  for (const auto& atom : atoms_) {
    if (!(atom.weight >= 0.0)) throw Error(ErrorKind::InvalidArgument, "negative atom weight");
    total += atom.weight;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw Error(ErrorKind::InvalidArgument, "atom weights do not sum to 1");
  }
  std::vector<CirclePoint> points;
  for (const auto& atom : atoms_) points.push_back(atom.point);
  (void)cyclic_order(points);
}

namespace {
constexpr double kNullWeight = 1e-24;
}  // namespace

SpectralMeasure spectral_measure(const UnitaryMatrix& a, const Vector& phi) {
  if (phi.size() != a.size()) throw Error(ErrorKind::SizeMismatch, "vector and matrix dimensions differ");
  if (std::abs(phi.norm() - 1.0) > 1e-10) {
    throw Error(ErrorKind::InvalidArgument, "spectral measure needs a unit vector");
  }
  const UnitaryEigen eig = unitary_eigs(a);
  const Vector coords = eig.vectors.adjoint() * phi;
  const std::size_t n = eig.values.size();

  // Group eigenvalues into clusters of matching points; sorted order keeps
  // clusters contiguous except across the wrap at angle 0.
  std::vector<std::size_t> cluster(n, 0);
  std::size_t clusters = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0 && same_point(eig.values[k], eig.values[k - 1])) {
      cluster[k] = cluster[k - 1];
    } else {
      cluster[k] = clusters++;
    }
  }
  if (clusters > 1 && same_point(eig.values.front(), eig.values.back())) {
    const std::size_t last = cluster.back();
    for (auto& c : cluster) {
      if (c == last) c = 0;
    }
    --clusters;
  }

  std::vector<double> weight(clusters, 0.0);
  std::vector<std::size_t> representative(clusters, n);
  for (std::size_t k = 0; k < n; ++k) {
    weight[cluster[k]] += std::norm(coords(static_cast<Eigen::Index>(k)));
    if (representative[cluster[k]] == n) representative[cluster[k]] = k;
  }
  std::vector<Atom> atoms;
  atoms.reserve(clusters);
  for (std::size_t c = 0; c < clusters; ++c) {
    // Eigenspaces orthogonal to phi carry no mass: drop roundoff-level weights.
    if (weight[c] <= kNullWeight) continue;
    atoms.push_back(Atom{eig.values[representative[c]], weight[c]});
  }
  return SpectralMeasure(std::move(atoms));
}

namespace {

void require_open_disk(Complex z) {
  if (!(std::abs(z) < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "evaluation point must lie in the open unit disk");
  }
}

// G(z) = sum_k w_k / (z_k - z). Then F = 1 + 2 z G exactly, and the Schur
// function is G / (1 + z G), which needs no special case at z = 0.
Complex resolvent_sum(const SpectralMeasure& m, Complex z) {
  Complex g{};
  for (const auto& atom : m.atoms()) g += atom.weight / (atom.point.value() - z);
  return g;
}

Complex schur_from_sum(Complex g, Complex z, SchurConvention convention) {
  const Complex f = g / (1.0 + z * g);
  return convention == SchurConvention::Standard ? f : -f;
}

}  // namespace

Complex caratheodory_F(const SpectralMeasure& m, Complex z) {
  require_open_disk(z);
  return 1.0 + 2.0 * z * resolvent_sum(m, z);
}

Complex schur_f(const SpectralMeasure& m, Complex z, SchurConvention convention) {
  require_open_disk(z);
  return schur_from_sum(resolvent_sum(m, z), z, convention);
}

Complex schur_f_boundary(const SpectralMeasure& m, const CirclePoint& z, SchurConvention convention) {
  const Complex near = kRadialRadius * z.value();
  const Complex nearer = (1.0 - 2e-7) * z.value();
  const Complex f1 = schur_from_sum(resolvent_sum(m, near), near, convention);
  const Complex f2 = schur_from_sum(resolvent_sum(m, nearer), nearer, convention);
  if (!(std::abs(f1 - f2) <= 1e-4)) {
    throw Error(ErrorKind::NumericalFailure, "radial limit of the Schur function is unstable");
  }
  // f is smooth along the radius, so the first-order term cancels.
  return 2.0 * f1 - f2;
}

std::vector<Complex> disk_grid(std::size_t count, double radius) {
  std::vector<Complex> grid;
  grid.reserve(count);
  const double golden = kTwoPi * (1.0 - 1.0 / 1.6180339887498949);
  for (std::size_t k = 0; k < count; ++k) {
    const double r = count > 1 ? radius * std::sqrt(static_cast<double>(k) / static_cast<double>(count - 1)) : 0.0;
    grid.push_back(std::polar(r, golden * static_cast<double>(k)));
  }
  return grid;
}

double schur_shift_check(const RankOnePair& pair, std::span<const Complex> grid) {
  const UnitaryMatrix v = perturb(pair);
  const SpectralMeasure before = spectral_measure(pair.base(), pair.direction());
  const SpectralMeasure after = spectral_measure(v, pair.direction());
  const Complex inverse = std::conj(pair.multiplier().value());
  double worst = 0.0;
  for (const Complex z : grid) {
    worst = std::max(worst, std::abs(schur_f(after, z) - inverse * schur_f(before, z)));
  }
  return worst;
}

MonotoneVerdict arg_monotone_check(const SpectralMeasure& m, const OpenArc& arc, std::size_t samples) {
  std::size_t support = 0;
  for (const auto& atom : m.atoms()) {
    if (atom.weight <= kWeightFloor) continue;
    ++support;
    if (!same_point(atom.point, arc.start()) && !same_point(atom.point, arc.end()) &&
        arc_contains(arc, atom.point)) {
      throw Error(ErrorKind::PreconditionViolation, "arc contains an atom of the measure");
    }
  }
  if (support < 2) {
    throw Error(ErrorKind::PreconditionViolation,
                "Schur function is constant for a measure with fewer than two atoms");
  }
  if (samples < 2) throw Error(ErrorKind::InvalidArgument, "need at least two samples");

  MonotoneVerdict verdict;
  verdict.samples = samples;
  verdict.min_step = std::numeric_limits<double>::infinity();
  const double step = arc.length() / static_cast<double>(samples + 1);
  Complex previous{};
  for (std::size_t s = 1; s <= samples; ++s) {
    const CirclePoint z = CirclePoint::polar(arc.start().arg() + step * static_cast<double>(s));
    const Complex f = schur_f_boundary(m, z);
    verdict.max_modulus_defect = std::max(verdict.max_modulus_defect, std::abs(std::abs(f) - 1.0));
    if (s > 1) verdict.min_step = std::min(verdict.min_step, std::arg(f / previous));
    previous = f;
  }
  verdict.monotone = verdict.min_step > 1e-9;
  verdict.unimodular = verdict.max_modulus_defect <= 1e-5;
  return verdict;
}

}  // namespace popuc
