#ifndef POPUC_TEST_SUPPORT_HPP
#define POPUC_TEST_SUPPORT_HPP

// Independent reference computations used as test oracles. Nothing here goes
// through the library's own factorization or interpolation code.

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "popuc/circle.hpp"
#include "popuc/linalg.hpp"
#include "popuc/polynomial.hpp"

namespace testing {

using popuc::Complex;
using popuc::Matrix;

inline Complex random_disk(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(radius * std::sqrt(u(rng)), popuc::kTwoPi * u(rng));
}

inline popuc::CirclePoint random_circle(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, popuc::kTwoPi);
  return popuc::CirclePoint::polar(u(rng));
}

inline popuc::VerblunskyWord random_word(std::mt19937_64& rng, std::size_t length, double radius = 0.9) {
  std::vector<Complex> a(length);
  for (auto& x : a) x = random_disk(rng, radius);
  return popuc::VerblunskyWord(a);
}

// CMV matrix written out entry by entry: Theta blocks at (j, j+1), even j in
// L and odd j in M, M(0,0) = 1, the boundary block reduced to conj(beta).
inline Matrix naive_cmv(const popuc::VerblunskyWord& word, Complex beta) {
  const int n = static_cast<int>(word.size()) + 1;
  Matrix L = Matrix::Identity(n, n);
  Matrix M = Matrix::Identity(n, n);
  for (int j = 0; j < n; ++j) {
    Matrix& target = j % 2 == 0 ? L : M;
    if (j == n - 1) {
      target(j, j) = std::conj(beta);
      break;
    }
    const Complex g = word[static_cast<std::size_t>(j)];
    const double rho = std::sqrt(1.0 - std::norm(g));
    target(j, j) = std::conj(g);
    target(j, j + 1) = rho;
    target(j + 1, j) = rho;
    target(j + 1, j + 1) = -g;
  }
  return L * M;
}

// det(z I - C) by LU.
inline Complex char_det(const Matrix& c, Complex z) {
  const Eigen::Index n = c.rows();
  return (z * Matrix::Identity(n, n) - c).determinant();
}

// Zeros of a monic polynomial from the companion matrix.
inline std::vector<Complex> companion_roots(const popuc::Polynomial& p) {
  const auto& c = p.coefficients();
  const Eigen::Index n = static_cast<Eigen::Index>(c.size()) - 1;
  Matrix comp = Matrix::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) comp(i, n - 1) = -c[static_cast<std::size_t>(i)] / c.back();
  Eigen::ComplexEigenSolver<Matrix> es(comp, false);
  std::vector<Complex> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
  return out;
}

// <phi, (U + z)(U - z)^{-1} phi> from the resolvent.
inline Complex resolvent_F(const Matrix& u, const popuc::Vector& phi, Complex z) {
  const Eigen::Index n = u.rows();
  const Matrix id = Matrix::Identity(n, n);
  const popuc::Vector x = (u - z * id).partialPivLu().solve((u + z * id) * phi);
  return phi.dot(x);
}

}  // namespace testing

#endif  // POPUC_TEST_SUPPORT_HPP
