#ifndef POPUC_RANK_ONE_HPP
#define POPUC_RANK_ONE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "popuc/circle.hpp"
#include "popuc/linalg.hpp"

namespace popuc {

/// A square matrix with ||U^* U - I||_max <= kUnitaryTol.
class UnitaryMatrix {
 public:
  /// Throws ErrorKind::NotUnitary.
  explicit UnitaryMatrix(Matrix entries);

  const Matrix& matrix() const noexcept { return entries_; }
  Eigen::Index size() const noexcept { return entries_.rows(); }

 private:
  Matrix entries_;
};

/// A unitary U, a unit vector phi and a unimodular multiplier lambda. They
/// define V = U + (lambda - 1) <phi, .> U phi, the unique unitary agreeing
/// with U on phi's orthogonal complement and with V phi = lambda U phi.
class RankOnePair {
 public:
  /// Throws ErrorKind::SizeMismatch or ErrorKind::InvalidArgument when
  /// | ||phi|| - 1 | > 1e-12.
  RankOnePair(UnitaryMatrix base, Vector direction, CirclePoint multiplier);

  const UnitaryMatrix& base() const noexcept { return base_; }
  const Vector& direction() const noexcept { return direction_; }
  const CirclePoint& multiplier() const noexcept { return multiplier_; }

 private:
  UnitaryMatrix base_;
  Vector direction_;
  CirclePoint multiplier_;
};

UnitaryMatrix perturb(const RankOnePair& pair);

struct RankOneData {
  Vector direction;
  CirclePoint multiplier;
};

/// Inverts perturb: given U and V with rank(V - U) = 1, returns the unit
/// vector spanning ker(V - U)^perp and lambda with V phi = lambda U phi.
/// The phase of phi makes its largest-modulus entry real and positive.
/// Throws ErrorKind::ZeroDifference or ErrorKind::NotRankOne.
RankOneData recover(const UnitaryMatrix& u, const UnitaryMatrix& v);

/// Eigenvalues of a unitary matrix sorted by principal argument, with
/// multiplicity, and an orthonormal eigenbasis in matching column order.
struct UnitaryEigen {
  std::vector<CirclePoint> values;
  Matrix vectors;
  double max_residual = 0.0;

  /// The eigenvalues as a cyclic set; throws ErrorKind::DuplicatePoint when
  /// the spectrum is degenerate.
  CyclicSet cyclic_set() const;
};

/// Eigenbasis from a rotated Hermitian part, refined by small Schur
/// decompositions inside near-degenerate clusters. Throws ErrorKind::NumericalFailure if any eigenpair misses
/// kEigenTol in residual or modulus.
UnitaryEigen unitary_eigs(const UnitaryMatrix& u);

struct Atom {
  CirclePoint point;
  double weight;
};

/// Finite atomic probability measure on the circle.
class SpectralMeasure {
 public:
  /// Throws ErrorKind::InvalidArgument unless weights are nonnegative and sum
  /// to 1 within 1e-10, and ErrorKind::DuplicatePoint for repeated points.
  explicit SpectralMeasure(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }

 private:
  std::vector<Atom> atoms_;
};

/// Weights below this are treated as outside the support.
inline constexpr double kWeightFloor = 1e-14;

/// Spectral measure of (A, phi): one atom per distinct eigenvalue, weighted by
/// the squared norm of phi's projection onto that eigenspace. Eigenvalues
/// within kMatchTol are merged; eigenspaces orthogonal to phi (weight at
/// roundoff level, <= 1e-24) contribute no atom.
SpectralMeasure spectral_measure(const UnitaryMatrix& a, const Vector& phi);

/// How the Schur function is tied to the Caratheodory function.
enum class SchurConvention {
  /// F = (1 + z f) / (1 - z f), so z f(z) = 1 exactly at the atoms.
  Standard,
  /// f = z^{-1} (1 - F) / (1 + F); differs from Standard by a sign.
  Reflected,
};

/// F(z) = sum_k w_k (z_k + z) / (z_k - z) for |z| < 1.
/// Throws ErrorKind::InvalidArgument for |z| >= 1.
Complex caratheodory_F(const SpectralMeasure& m, Complex z);

/// Schur function of the measure for |z| < 1, including z = 0 where it takes
/// the limiting value F'(0)/2 (up to the convention's sign).
Complex schur_f(const SpectralMeasure& m, Complex z,
                SchurConvention convention = SchurConvention::Standard);

inline constexpr double kRadialRadius = 1.0 - 1e-7;

/// Boundary value of f at a circle point: Richardson extrapolation of the
/// values at kRadialRadius and one step further in, which must agree within
/// 1e-4 (else ErrorKind::NumericalFailure).
Complex schur_f_boundary(const SpectralMeasure& m, const CirclePoint& z,
                         SchurConvention convention = SchurConvention::Standard);

/// `count` points on a golden-angle spiral filling the disk of `radius`;
/// the first point is 0.
std::vector<Complex> disk_grid(std::size_t count, double radius);

/// max over the grid of |f_{V,phi}(z) - conj(lambda) f_{U,phi}(z)|.
double schur_shift_check(const RankOnePair& pair, std::span<const Complex> grid);

struct MonotoneVerdict {
  bool monotone = false;
  bool unimodular = false;
  double min_step = 0.0;
  double max_modulus_defect = 0.0;
  std::size_t samples = 0;

  bool ok() const noexcept { return monotone && unimodular; }
};

/// Samples the boundary values of f across an arc free of atoms and checks
/// that Arg f increases by more than 1e-9 between consecutive samples and
/// that |f| = 1 within 1e-5.
/// Throws ErrorKind::PreconditionViolation when the measure has fewer than two
/// atoms of positive weight or an atom lies inside the arc.
MonotoneVerdict arg_monotone_check(const SpectralMeasure& m, const OpenArc& arc,
                                   std::size_t samples);

}  // namespace popuc

#endif  // POPUC_RANK_ONE_HPP
