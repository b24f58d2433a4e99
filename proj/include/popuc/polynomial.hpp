#ifndef POPUC_POLYNOMIAL_HPP
#define POPUC_POLYNOMIAL_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "popuc/circle.hpp"

namespace popuc {

/// Coefficients must satisfy |alpha| < 1 - kDiskTol.
inline constexpr double kDiskTol = 1e-12;

/// Verblunsky coefficients alpha_0, ..., alpha_{m-1}, all strictly inside the
/// unit disk.
class VerblunskyWord {
 public:
  VerblunskyWord() = default;
  /// Throws ErrorKind::OutsideDisk for any |alpha_j| >= 1 - kDiskTol.
  explicit VerblunskyWord(std::vector<Complex> coefficients);
  VerblunskyWord(std::initializer_list<Complex> coefficients)
      : VerblunskyWord(std::vector<Complex>(coefficients)) {}

  /// `length` copies of `alpha`.
  static VerblunskyWord constant(Complex alpha, std::size_t length);

  std::size_t size() const noexcept { return coefficients_.size(); }
  bool empty() const noexcept { return coefficients_.empty(); }
  Complex operator[](std::size_t j) const { return coefficients_[j]; }
  const std::vector<Complex>& coefficients() const noexcept { return coefficients_; }

  /// alpha_j -> -alpha_j; the coefficients of the second-kind polynomials.
  VerblunskyWord negated() const;
  /// The first `length` coefficients.
  VerblunskyWord prefix(std::size_t length) const;

 private:
  std::vector<Complex> coefficients_;
};

/// Dense polynomial c_0 + c_1 z + ... + c_n z^n with an explicit degree.
/// Monic polynomials (c_n == 1 exactly) are flagged; reversed polynomials
/// share this type with the flag cleared.
class Polynomial {
 public:
  /// Throws ErrorKind::InvalidArgument for an empty coefficient list.
  explicit Polynomial(std::vector<Complex> coefficients);
  /// Requires c_n == 1 exactly.
  static Polynomial monic(std::vector<Complex> coefficients);

  std::size_t degree() const noexcept { return coefficients_.size() - 1; }
  bool is_monic() const noexcept { return monic_; }
  const std::vector<Complex>& coefficients() const noexcept { return coefficients_; }
  Complex operator[](std::size_t j) const { return coefficients_[j]; }

  /// Horner evaluation.
  Complex operator()(Complex z) const noexcept;

 private:
  std::vector<Complex> coefficients_;
  bool monic_ = false;
};

/// Horner evaluation.
Complex eval(const Polynomial& p, Complex z) noexcept;

/// Max coefficient-wise distance; the shorter list is padded with zeros.
double coefficient_distance(const Polynomial& p, const Polynomial& q) noexcept;

/// Reversed polynomial relative to degree n: (c_0..c_n) -> (conj c_n..conj c_0).
/// Throws ErrorKind::InvalidArgument if p has a nonzero coefficient above z^n.
Polynomial star(const Polynomial& p, std::size_t n);

/// Monic orthogonal polynomial of degree n from the Szego recursion
/// Phi_{k+1} = z Phi_k - conj(alpha_k) Phi_k^*, Phi_0 = 1.
/// Throws ErrorKind::InvalidArgument when n > word.size().
Polynomial phi(const VerblunskyWord& word, std::size_t n);

/// Second-kind polynomial: phi of the negated word.
Polynomial psi(const VerblunskyWord& word, std::size_t n);

/// Paraorthogonal polynomial z Phi_{n-1} - conj(beta) Phi_{n-1}^*.
///
/// The boundary coefficient enters conjugated, so for beta = conj(lambda)^n and
/// the zero word the result is z^n - lambda^n. Requires 1 <= n <= word.size() + 1.
Polynomial popuc_first(const VerblunskyWord& word, const CirclePoint& beta, std::size_t n);

/// Paraorthogonal polynomial of the second kind, built from Psi_{n-1}.
Polynomial popuc_second(const VerblunskyWord& word, const CirclePoint& beta, std::size_t n);

}  // namespace popuc

#endif  // POPUC_POLYNOMIAL_HPP
