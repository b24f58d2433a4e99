#include "popuc/circle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace popuc {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotUnimodular: return "not-unimodular";
    case ErrorKind::OutsideDisk: return "outside-disk";
    case ErrorKind::BoundaryAmbiguous: return "boundary-ambiguous";
    case ErrorKind::DuplicatePoint: return "duplicate-point";
    case ErrorKind::SharedPoint: return "shared-point";
    case ErrorKind::SizeMismatch: return "size-mismatch";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::NotUnitary: return "not-unitary";
    case ErrorKind::NotRankOne: return "not-rank-one";
    case ErrorKind::ZeroDifference: return "zero-difference";
    case ErrorKind::PreconditionViolation: return "precondition-violation";
    case ErrorKind::NumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

namespace {

double principal_arg(Complex z) noexcept {
  double a = std::arg(z);
  if (a < 0.0) a += kTwoPi;
  // arg of a point just below the positive real axis can round up to 2pi
  if (a >= kTwoPi) a = 0.0;
  return a;
}

// Counterclockwise angular offset of `to` from `from`, in [0, 2pi).
double ccw_offset(double from, double to) noexcept {
  double d = to - from;
  if (d < 0.0) d += kTwoPi;
  return d;
}

}  // namespace

CirclePoint::CirclePoint(Complex z) : value_(z), arg_(principal_arg(z)) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) ||
      std::abs(std::abs(z) - 1.0) > kCircleTol) {
    std::ostringstream msg;
    msg << "point (" << z.real() << ", " << z.imag() << ") is not on the unit circle";
    throw Error(ErrorKind::NotUnimodular, msg.str());
  }
}

CirclePoint::CirclePoint(Complex z, Unchecked) noexcept : value_(z), arg_(principal_arg(z)) {}

CirclePoint CirclePoint::polar(double theta) {
  return CirclePoint(std::polar(1.0, theta), Unchecked{});
}

CirclePoint CirclePoint::normalized(Complex z, double tol) {
  const double r = std::abs(z);
  if (!std::isfinite(r) || std::abs(r - 1.0) > tol) {
    std::ostringstream msg;
    msg << "point (" << z.real() << ", " << z.imag() << ") is not on the unit circle";
    throw Error(ErrorKind::NotUnimodular, msg.str());
  }
  return CirclePoint(z / r, Unchecked{});
}

CirclePoint CirclePoint::conj() const noexcept {
  return CirclePoint(std::conj(value_), Unchecked{});
}

CirclePoint operator*(const CirclePoint& a, const CirclePoint& b) {
  return CirclePoint(a.value_ * b.value_, CirclePoint::Unchecked{});
}

double distance(const CirclePoint& a, const CirclePoint& b) noexcept {
  return std::abs(a.value() - b.value());
}

bool same_point(const CirclePoint& a, const CirclePoint& b) noexcept {
  return distance(a, b) <= kMatchTol;
}

OpenArc::OpenArc(CirclePoint start, CirclePoint end) : start_(start), end_(end) {
  if (same_point(start_, end_)) {
    throw Error(ErrorKind::InvalidArgument, "arc endpoints coincide");
  }
}

double OpenArc::length() const noexcept { return ccw_offset(start_.arg(), end_.arg()); }

bool arc_contains(const OpenArc& arc, const CirclePoint& z) {
  if (same_point(z, arc.start()) || same_point(z, arc.end())) {
    throw Error(ErrorKind::BoundaryAmbiguous, "point lies on an arc endpoint");
  }
  const double offset = ccw_offset(arc.start().arg(), z.arg());
  return offset > 0.0 && offset < arc.length();
}

bool closed_arc_contains(const OpenArc& arc, const CirclePoint& z) {
  if (same_point(z, arc.start()) || same_point(z, arc.end())) return true;
  return arc_contains(arc, z);
}

OpenArc CyclicSet::gap(std::size_t j) const {
  if (points_.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "a gap needs at least two points");
  }
  return OpenArc(points_.at(j), points_[(j + 1) % points_.size()]);
}

std::optional<std::size_t> CyclicSet::find(const CirclePoint& z) const {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (same_point(points_[i], z)) return i;
  }
  return std::nullopt;
}

CyclicSet CyclicSet::without(std::size_t index) const {
  std::vector<CirclePoint> rest = points_;
  rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(index));
  return CyclicSet(std::move(rest));
}

CyclicSet cyclic_order(std::span<const CirclePoint> points) {
  std::vector<CirclePoint> sorted(points.begin(), points.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const CirclePoint& a, const CirclePoint& b) { return a.arg() < b.arg(); });
  // Near points are neighbours in angular order, up to the wrap at 0.
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    if (same_point(sorted[i], sorted[i + 1])) {
      throw Error(ErrorKind::DuplicatePoint, "duplicate point in cyclic set");
    }
  }
  if (sorted.size() > 1 && same_point(sorted.front(), sorted.back())) {
    throw Error(ErrorKind::DuplicatePoint, "duplicate point in cyclic set");
  }
  return CyclicSet(std::move(sorted));
}

CyclicSet merge(const CyclicSet& a, const CyclicSet& b) {
  std::vector<CirclePoint> all = a.points();
  all.insert(all.end(), b.begin(), b.end());
  return cyclic_order(all);
}

double min_separation(const CyclicSet& s) noexcept {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = s.size();
  if (n < 2) return best;
  for (std::size_t i = 0; i < n; ++i) {
    best = std::min(best, distance(s[i], s[(i + 1) % n]));
  }
  return best;
}

double min_cross_distance(const CyclicSet& a, const CyclicSet& b) noexcept {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : a) {
    for (const auto& q : b) best = std::min(best, distance(p, q));
  }
  return best;
}

InterlaceVerdict strictly_interlace(const CyclicSet& a, const CyclicSet& b) {
  if (a.size() != b.size() || a.empty()) {
    throw Error(ErrorKind::SizeMismatch, "interlacing needs two non-empty sets of equal size");
  }
  if (min_cross_distance(a, b) <= kMatchTol) {
    throw Error(ErrorKind::SharedPoint, "the two sets share a point");
  }
  const std::size_t n = a.size();
  if (n == 1) return InterlaceVerdict{true, std::nullopt, 0};

  // counts[j] = members of b in the gap (a_j, a_{j+1}); the last gap wraps.
  std::vector<std::size_t> counts(n, 0);
  for (const auto& q : b) {
    auto it = std::lower_bound(a.begin(), a.end(), q.arg(),
                               [](const CirclePoint& p, double t) { return p.arg() < t; });
    const auto below = static_cast<std::size_t>(it - a.begin());
    ++counts[below == 0 ? n - 1 : below - 1];
  }

  InterlaceVerdict verdict;
  verdict.interlace = std::all_of(counts.begin(), counts.end(), [](std::size_t c) { return c == 1; });
  if (!verdict.interlace) {
    // An empty gap always exists when some gap is crowded; report it first.
    auto empty = std::find(counts.begin(), counts.end(), std::size_t{0});
    auto bad = empty != counts.end()
                   ? empty
                   : std::find_if(counts.begin(), counts.end(), [](std::size_t c) { return c != 1; });
    const auto j = static_cast<std::size_t>(bad - counts.begin());
    verdict.witness_arc = a.gap(j);
    verdict.witness_count = counts[j];
  }
  return verdict;
}

}  // namespace popuc
