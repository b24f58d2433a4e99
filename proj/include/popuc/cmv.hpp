#ifndef POPUC_CMV_HPP
#define POPUC_CMV_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "popuc/circle.hpp"
#include "popuc/linalg.hpp"
#include "popuc/polynomial.hpp"
#include "popuc/rank_one.hpp"

namespace popuc {

using Block = Eigen::Matrix2cd;

/// The 2x2 unitary [[conj g, t], [t, -g]] with t = sqrt(1 - |g|^2).
struct ThetaBlock {
  Complex gamma;
  double tau;
  Block entries;
};

/// Throws ErrorKind::OutsideDisk for |gamma| > 1. Coefficients within
/// kCircleTol of the circle get tau = 0 exactly.
ThetaBlock theta(Complex gamma);

/// Block-diagonal factors of a finite CMV matrix. Block j sits on rows and
/// columns (j, j+1): even j in L, odd j in M, with a 1x1 corner sign at M(0,0).
/// The final block is cut down to its top-left entry.
struct CMVFactorization {
  Matrix L;
  Matrix M;
  int corner_sign = 1;
};

/// Places `blocks` as described for CMVFactorization. Throws
/// ErrorKind::InvalidArgument for an empty block list or a corner sign other
/// than +1 / -1.
CMVFactorization factorize(std::span<const Block> blocks, int corner_sign = 1);

/// The n x n CMV matrix of alpha_0..alpha_{n-2} closed off by a unimodular
/// boundary coefficient.
class FiniteCMV {
 public:
  FiniteCMV(VerblunskyWord word, CirclePoint boundary, CMVFactorization factors);

  const VerblunskyWord& word() const noexcept { return word_; }
  const CirclePoint& boundary() const noexcept { return boundary_; }
  const UnitaryMatrix& dense() const noexcept { return dense_; }
  const CMVFactorization& factors() const noexcept { return factors_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(dense_.size()); }

 private:
  VerblunskyWord word_;
  CirclePoint boundary_;
  CMVFactorization factors_;
  UnitaryMatrix dense_;
};

/// Finite CMV matrix with L = Theta(g0) + Theta(g2) + ..., M = 1 + Theta(g1) + ...
FiniteCMV build(const VerblunskyWord& word, const CirclePoint& beta);

/// As build, with -1 in place of the leading 1x1 block of M. Its spectrum is
/// that of build(word.negated(), -beta), and it differs from build(word, beta)
/// by a rank-one matrix.
FiniteCMV build_m_tilde(const VerblunskyWord& word, const CirclePoint& beta);

/// True when |C_ij| > 0 implies |i - j| <= 2.
bool is_five_diagonal(const Matrix& c);

/// det(z - C), recovered by evaluating the determinant at the n+1 roots of
/// unity and inverting the discrete Fourier transform.
Polynomial char_poly(const FiniteCMV& c);

/// Eigenvalues of the CMV matrix, sorted by argument.
CyclicSet cmv_zeros(const FiniteCMV& c);

/// The unimodular x making Theta(alpha) - diag(beta, x) singular:
/// x = conj(beta) (beta alpha - 1) / (conj(beta) conj(alpha) - 1).
/// Throws ErrorKind::OutsideDisk for |alpha| >= 1.
CirclePoint rank_one_completion(Complex alpha, const CirclePoint& beta);

/// Closed form of the split-off eigenvalue when C_{n+1} (last interior
/// coefficient alpha, boundary beta_next) is reduced to C_n (boundary beta):
/// conj(beta_next) * beta * (conj(beta) alpha - 1) / (beta conj(alpha) - 1).
CirclePoint decoupling_value(Complex alpha, const CirclePoint& beta, const CirclePoint& beta_next);

/// conj(beta_next) * conj(beta) * (beta alpha - 1) / (conj(beta) conj(alpha) - 1).
/// A conjugation pattern that does not match the block construction: for
/// alpha = 0 and beta_j = conj(lambda)^j it yields lambda^{2n+1} rather than
/// lambda. Kept only to mutation-test the theorem harness.
CirclePoint transcribed_decoupling_value(Complex alpha, const CirclePoint& beta,
                                         const CirclePoint& beta_next);

struct SplitResult {
  /// build(alpha_0..alpha_{n-2}, beta_n).
  FiniteCMV inner;
  /// The eigenvalue of the 1x1 block split off at index n.
  CirclePoint decoupled;
  /// perturbed = original + (mu - 1) <phi, .> original phi.
  RankOneData perturbation;
  /// diag(conj(beta_n), x) that replaced Theta(alpha_{n-1}).
  Block replaced_block;
  /// Whether the replaced block lives in L (n - 1 even) or M (n - 1 odd).
  bool replaced_in_l;
  UnitaryMatrix perturbed;
};

/// Rank-one reduction of the (n+1) x (n+1) matrix C_next = build(alpha_0..alpha_{n-1},
/// beta_{n+1}) to inner + [lambda_n], obtained by swapping Theta(alpha_{n-1})
/// for a diagonal block. Throws ErrorKind::SizeMismatch if C_next has size < 2
/// and ErrorKind::NumericalFailure if the reconstruction invariants fail.
SplitResult split(const FiniteCMV& c_next, const CirclePoint& beta_n);

struct KrylovRank {
  bool cyclic = false;
  std::size_t rank = 0;
};

/// Dimension of span{phi, C phi, C^2 phi, ...} by modified Gram-Schmidt with
/// reorthogonalization; a new direction counts when its residual exceeds
/// kRankTol relative to ||phi||. Throws ErrorKind::InvalidArgument for phi = 0.
KrylovRank krylov_cyclic(const Matrix& c, const Vector& phi);

}  // namespace popuc

#endif  // POPUC_CMV_HPP
