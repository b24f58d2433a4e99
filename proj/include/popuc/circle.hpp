#ifndef POPUC_CIRCLE_HPP
#define POPUC_CIRCLE_HPP

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "popuc/error.hpp"

namespace popuc {

using Complex = std::complex<double>;

/// Tolerance on | |z| - 1 | for anything claimed to lie on the unit circle.
inline constexpr double kCircleTol = 1e-10;
/// Two circle points closer than this (chordal distance) are the same point.
inline constexpr double kMatchTol = 1e-8;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// A point on the unit circle. The principal argument in [0, 2pi) is
/// computed once at construction and used for all ordering decisions.
class CirclePoint {
 public:
  /// Throws ErrorKind::NotUnimodular if | |z| - 1 | > kCircleTol.
  explicit CirclePoint(Complex z);

  /// e^{i theta}.
  static CirclePoint polar(double theta);

  /// Rescales z onto the circle after validating it against `tol`.
  static CirclePoint normalized(Complex z, double tol = kCircleTol);

  Complex value() const noexcept { return value_; }
  double arg() const noexcept { return arg_; }
  CirclePoint conj() const noexcept;

  friend CirclePoint operator*(const CirclePoint& a, const CirclePoint& b);

 private:
  struct Unchecked {};
  CirclePoint(Complex z, Unchecked) noexcept;

  Complex value_;
  double arg_;
};

/// Chordal distance |a - b|.
double distance(const CirclePoint& a, const CirclePoint& b) noexcept;
bool same_point(const CirclePoint& a, const CirclePoint& b) noexcept;

/// Counterclockwise open arc from `start` to `end`.
class OpenArc {
 public:
  /// Throws ErrorKind::InvalidArgument when start and end coincide.
  OpenArc(CirclePoint start, CirclePoint end);

  const CirclePoint& start() const noexcept { return start_; }
  const CirclePoint& end() const noexcept { return end_; }
  /// Angular length in (0, 2pi).
  double length() const noexcept;
  OpenArc reversed() const { return OpenArc(end_, start_); }

 private:
  CirclePoint start_;
  CirclePoint end_;
};

/// Strict membership in the open arc. Throws ErrorKind::BoundaryAmbiguous
/// when `z` is within kMatchTol of either endpoint.
bool arc_contains(const OpenArc& arc, const CirclePoint& z);

/// Membership in the closed arc; endpoints match within kMatchTol.
bool closed_arc_contains(const OpenArc& arc, const CirclePoint& z);

/// Distinct circle points in counterclockwise order, starting from the point
/// of smallest principal argument.
class CyclicSet {
 public:
  CyclicSet() = default;

  const std::vector<CirclePoint>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const CirclePoint& operator[](std::size_t i) const { return points_[i]; }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  /// Open arc from point j to its cyclic successor. Requires size() >= 2.
  OpenArc gap(std::size_t j) const;

  /// Index of the member within kMatchTol of z, if any.
  std::optional<std::size_t> find(const CirclePoint& z) const;

  /// Copy with the member at `index` removed.
  CyclicSet without(std::size_t index) const;

 private:
  friend CyclicSet cyclic_order(std::span<const CirclePoint> points);
  explicit CyclicSet(std::vector<CirclePoint> sorted) : points_(std::move(sorted)) {}

  std::vector<CirclePoint> points_;
};

/// Throws ErrorKind::DuplicatePoint if two inputs lie within kMatchTol.
CyclicSet cyclic_order(std::span<const CirclePoint> points);

/// Union of two sets; throws ErrorKind::DuplicatePoint on overlap.
CyclicSet merge(const CyclicSet& a, const CyclicSet& b);

/// Smallest chordal distance between any two members (infinity if < 2).
double min_separation(const CyclicSet& s) noexcept;
/// Smallest chordal distance between a member of `a` and a member of `b`.
double min_cross_distance(const CyclicSet& a, const CyclicSet& b) noexcept;

struct InterlaceVerdict {
  bool interlace = false;
  /// On failure: the gap of the first set holding zero or several members of
  /// the second, together with that count.
  std::optional<OpenArc> witness_arc;
  std::size_t witness_count = 0;
};

/// Strict interlacing of equal-size cyclic sets.
/// Throws ErrorKind::SizeMismatch for unequal or empty sets and
/// ErrorKind::SharedPoint when a point of `a` matches a point of `b`.
InterlaceVerdict strictly_interlace(const CyclicSet& a, const CyclicSet& b);

}  // namespace popuc

#endif  // POPUC_CIRCLE_HPP
