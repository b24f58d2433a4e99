#include "popuc/cmv.hpp"

#include <cmath>
#include <sstream>

namespace popuc {

ThetaBlock theta(Complex gamma) {
  const double r = std::abs(gamma);
  if (!std::isfinite(r) || r > 1.0 + kCircleTol) {
    throw Error(ErrorKind::OutsideDisk, "Theta block needs |gamma| <= 1");
  }
  const double tau = std::abs(r - 1.0) <= kCircleTol ? 0.0 : std::sqrt(1.0 - r * r);
  Block entries;
  entries << std::conj(gamma), tau, tau, -gamma;
  return ThetaBlock{gamma, tau, entries};
}

CMVFactorization factorize(std::span<const Block> blocks, int corner_sign) {
  if (blocks.empty()) throw Error(ErrorKind::InvalidArgument, "a CMV matrix needs at least one block");
  if (corner_sign != 1 && corner_sign != -1) {
    throw Error(ErrorKind::InvalidArgument, "corner sign must be +1 or -1");
  }
  const auto n = static_cast<Eigen::Index>(blocks.size());
  CMVFactorization f{Matrix::Zero(n, n), Matrix::Zero(n, n), corner_sign};
  f.M(0, 0) = static_cast<double>(corner_sign);
  for (Eigen::Index j = 0; j < n; ++j) {
    Matrix& host = (j % 2 == 0) ? f.L : f.M;
    const Block& b = blocks[static_cast<std::size_t>(j)];
    if (j + 1 < n) {
      host.block<2, 2>(j, j) = b;
    } else {
      host(j, j) = b(0, 0);
    }
  }
  return f;
}

FiniteCMV::FiniteCMV(VerblunskyWord word, CirclePoint boundary, CMVFactorization factors)
    : word_(std::move(word)),
      boundary_(boundary),
      factors_(std::move(factors)),
      dense_(factors_.L * factors_.M) {}

namespace {

std::vector<Block> theta_blocks(const VerblunskyWord& word, const CirclePoint& beta) {
  std::vector<Block> blocks;
  blocks.reserve(word.size() + 1);
  for (std::size_t j = 0; j < word.size(); ++j) blocks.push_back(theta(word[j]).entries);
  const Complex b = beta.value() / std::abs(beta.value());
  blocks.push_back(theta(b).entries);
  return blocks;
}

FiniteCMV build_with_corner(const VerblunskyWord& word, const CirclePoint& beta, int corner) {
  const auto blocks = theta_blocks(word, beta);
  return FiniteCMV(word, beta, factorize(blocks, corner));
}

}  // namespace

FiniteCMV build(const VerblunskyWord& word, const CirclePoint& beta) {
  return build_with_corner(word, beta, 1);
}

FiniteCMV build_m_tilde(const VerblunskyWord& word, const CirclePoint& beta) {
  return build_with_corner(word, beta, -1);
}

bool is_five_diagonal(const Matrix& c) {
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    for (Eigen::Index j = 0; j < c.cols(); ++j) {
      if (std::abs(i - j) > 2 && c(i, j) != Complex{}) return false;
    }
  }
  return true;
}

Polynomial char_poly(const FiniteCMV& c) {
  const Matrix& a = c.dense().matrix();
  const Eigen::Index n = a.rows();
  const Eigen::Index points = n + 1;
  std::vector<Complex> nodes(static_cast<std::size_t>(points));
  std::vector<Complex> values(static_cast<std::size_t>(points));
  for (Eigen::Index k = 0; k < points; ++k) {
    const Complex z = std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(points));
    nodes[static_cast<std::size_t>(k)] = z;
    const Matrix shifted = z * Matrix::Identity(n, n) - a;
    values[static_cast<std::size_t>(k)] = shifted.partialPivLu().determinant();
  }
  std::vector<Complex> coefficients(static_cast<std::size_t>(points));
  for (Eigen::Index j = 0; j < points; ++j) {
    Complex acc{};
    for (Eigen::Index k = 0; k < points; ++k) {
      // nodes[k]^{-j} = nodes[(k * j) mod points]^{-1}
      const auto idx = static_cast<std::size_t>((k * j) % points);
      acc += values[static_cast<std::size_t>(k)] * std::conj(nodes[idx]);
    }
    coefficients[static_cast<std::size_t>(j)] = acc / static_cast<double>(points);
  }
  coefficients.back() = Complex(1.0, 0.0);
  return Polynomial::monic(std::move(coefficients));
}

CyclicSet cmv_zeros(const FiniteCMV& c) { return unitary_eigs(c.dense()).cyclic_set(); }

CirclePoint rank_one_completion(Complex alpha, const CirclePoint& beta) {
  if (!(std::abs(alpha) < 1.0)) throw Error(ErrorKind::OutsideDisk, "completion needs |alpha| < 1");
  const Complex b = beta.value();
  const Complex x = std::conj(b) * (b * alpha - 1.0) / (std::conj(b) * std::conj(alpha) - 1.0);
  return CirclePoint::normalized(x);
}

CirclePoint decoupling_value(Complex alpha, const CirclePoint& beta, const CirclePoint& beta_next) {
  return beta_next.conj() * rank_one_completion(alpha, beta.conj());
}

CirclePoint transcribed_decoupling_value(Complex alpha, const CirclePoint& beta,
                                         const CirclePoint& beta_next) {
  const Complex b = beta.value();
  const Complex ratio = (b * alpha - 1.0) / (std::conj(b) * std::conj(alpha) - 1.0);
  return CirclePoint::normalized(std::conj(beta_next.value()) * std::conj(b) * ratio);
}

SplitResult split(const FiniteCMV& c_next, const CirclePoint& beta_n) {
  const std::size_t size = c_next.size();
  if (size < 2) throw Error(ErrorKind::SizeMismatch, "split needs a CMV matrix of size at least 2");
  if (c_next.factors().corner_sign != 1) {
    throw Error(ErrorKind::InvalidArgument, "split needs a standard CMV matrix");
  }
  const std::size_t n = size - 1;
  const VerblunskyWord& word = c_next.word();
  const Complex alpha = word[n - 1];

  FiniteCMV inner = build(word.prefix(n - 1), beta_n);

  // Replacing Theta(alpha_{n-1}) by diag(conj(beta_n), x) decouples index n
  // in whichever factor hosts that block, so the product splits as well.
  const CirclePoint x = rank_one_completion(alpha, beta_n.conj());
  Block replacement = Block::Zero();
  replacement(0, 0) = std::conj(beta_n.value()) / std::abs(beta_n.value());
  replacement(1, 1) = x.value();

  auto blocks = theta_blocks(word, c_next.boundary());
  blocks[n - 1] = replacement;
  const CMVFactorization f = factorize(blocks, 1);
  UnitaryMatrix perturbed(f.L * f.M);

  const auto ni = static_cast<Eigen::Index>(n);
  const CirclePoint lambda = CirclePoint::normalized(perturbed.matrix()(ni, ni));

  Matrix expected = Matrix::Zero(ni + 1, ni + 1);
  expected.topLeftCorner(ni, ni) = inner.dense().matrix();
  expected(ni, ni) = lambda.value();
  const double mismatch = max_abs(perturbed.matrix() - expected);
  if (mismatch > 1e-10) {
    std::ostringstream msg;
    msg << "split does not reproduce C_n + [lambda]: mismatch " << mismatch;
    throw Error(ErrorKind::NumericalFailure, msg.str());
  }
  // The split-off entry is the product of the two decoupled 1x1 pieces,
  // whichever factor each came from.
  const Complex product = x.value() * std::conj(c_next.boundary().value()) / std::abs(c_next.boundary().value());
  if (std::abs(product - lambda.value()) > 1e-12) {
    throw Error(ErrorKind::NumericalFailure, "decoupled value depends on factor parity");
  }

  RankOneData data = recover(c_next.dense(), perturbed);
  return SplitResult{std::move(inner), lambda, std::move(data), replacement, (n - 1) % 2 == 0,
                     std::move(perturbed)};
}

KrylovRank krylov_cyclic(const Matrix& c, const Vector& phi) {
  const double scale = phi.norm();
  if (!(scale > 0.0)) throw Error(ErrorKind::InvalidArgument, "Krylov test needs a nonzero vector");
  if (c.rows() != c.cols() || c.rows() != phi.size()) {
    throw Error(ErrorKind::SizeMismatch, "matrix and vector dimensions differ");
  }
  const Eigen::Index n = c.rows();
  Matrix basis(n, n);
  std::size_t rank = 0;
  Vector next = phi / scale;
  for (Eigen::Index step = 0; step < n; ++step) {
    Vector w = next;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < rank; ++k) {
        const auto col = basis.col(static_cast<Eigen::Index>(k));
        w -= col.dot(w) * col;
      }
    }
    const double residual = w.norm();
    // Once C^k phi lies in the span, every later power does too.
    if (residual <= kRankTol) break;
    basis.col(static_cast<Eigen::Index>(rank)) = w / residual;
    ++rank;
    next = c * basis.col(static_cast<Eigen::Index>(rank - 1));
  }
  return KrylovRank{rank == static_cast<std::size_t>(n), rank};
}

}  // namespace popuc
