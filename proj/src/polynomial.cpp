#include "popuc/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace popuc {

VerblunskyWord::VerblunskyWord(std::vector<Complex> coefficients)
    : coefficients_(std::move(coefficients)) {
  for (std::size_t j = 0; j < coefficients_.size(); ++j) {
    const double r = std::abs(coefficients_[j]);
    if (!std::isfinite(r) || r >= 1.0 - kDiskTol) {
      std::ostringstream msg;
      msg << "Verblunsky coefficient " << j << " has modulus " << r << ", outside the open disk";
      throw Error(ErrorKind::OutsideDisk, msg.str());
    }
  }
}

VerblunskyWord VerblunskyWord::constant(Complex alpha, std::size_t length) {
  return VerblunskyWord(std::vector<Complex>(length, alpha));
}

VerblunskyWord VerblunskyWord::negated() const {
  std::vector<Complex> out(coefficients_.size());
  std::transform(coefficients_.begin(), coefficients_.end(), out.begin(),
                 [](Complex a) { return -a; });
  return VerblunskyWord(std::move(out));
}

VerblunskyWord VerblunskyWord::prefix(std::size_t length) const {
  if (length > coefficients_.size()) {
    throw Error(ErrorKind::InvalidArgument, "prefix longer than the word");
  }
  return VerblunskyWord(std::vector<Complex>(coefficients_.begin(),
                                             coefficients_.begin() + static_cast<std::ptrdiff_t>(length)));
}

Polynomial::Polynomial(std::vector<Complex> coefficients) : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) {
    throw Error(ErrorKind::InvalidArgument, "a polynomial needs at least one coefficient");
  }
}

Polynomial Polynomial::monic(std::vector<Complex> coefficients) {
  Polynomial p(std::move(coefficients));
  if (p.coefficients_.back() != Complex(1.0, 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "leading coefficient is not 1");
  }
  p.monic_ = true;
  return p;
}

Complex Polynomial::operator()(Complex z) const noexcept {
  Complex acc = coefficients_.back();
  for (auto it = coefficients_.rbegin() + 1; it != coefficients_.rend(); ++it) {
    acc = acc * z + *it;
  }
  return acc;
}

Complex eval(const Polynomial& p, Complex z) noexcept { return p(z); }

double coefficient_distance(const Polynomial& p, const Polynomial& q) noexcept {
  const std::size_t n = std::max(p.coefficients().size(), q.coefficients().size());
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const Complex a = j < p.coefficients().size() ? p[j] : Complex{};
    const Complex b = j < q.coefficients().size() ? q[j] : Complex{};
    worst = std::max(worst, std::abs(a - b));
  }
  return worst;
}

Polynomial star(const Polynomial& p, std::size_t n) {
  const auto& c = p.coefficients();
  for (std::size_t j = n + 1; j < c.size(); ++j) {
    if (c[j] != Complex{}) {
      throw Error(ErrorKind::InvalidArgument, "polynomial degree exceeds the declared degree");
    }
  }
  std::vector<Complex> out(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    const std::size_t src = n - j;
    out[j] = src < c.size() ? std::conj(c[src]) : Complex{};
  }
  return Polynomial(std::move(out));
}

namespace {

// z p(z) - conj(a) p^*(z) for p of degree k (monic), giving degree k + 1.
Polynomial szego_step(const Polynomial& p, Complex a) {
  const std::size_t k = p.degree();
  const Polynomial reversed = star(p, k);
  std::vector<Complex> next(k + 2, Complex{});
  for (std::size_t j = 0; j <= k; ++j) {
    next[j + 1] += p[j];
    next[j] -= std::conj(a) * reversed[j];
  }
  next[k + 1] = Complex(1.0, 0.0);
  return Polynomial::monic(std::move(next));
}

}  // namespace

Polynomial phi(const VerblunskyWord& word, std::size_t n) {
  if (n > word.size()) {
    std::ostringstream msg;
    msg << "degree " << n << " needs " << n << " coefficients, word has " << word.size();
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
  Polynomial p = Polynomial::monic({Complex(1.0, 0.0)});
  for (std::size_t k = 0; k < n; ++k) p = szego_step(p, word[k]);
  return p;
}

Polynomial psi(const VerblunskyWord& word, std::size_t n) { return phi(word.negated(), n); }

Polynomial popuc_first(const VerblunskyWord& word, const CirclePoint& beta, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "paraorthogonal degree must be at least 1");
  return szego_step(phi(word, n - 1), beta.value());
}

Polynomial popuc_second(const VerblunskyWord& word, const CirclePoint& beta, std::size_t n) {
  return popuc_first(word.negated(), beta, n);
}

}  // namespace popuc
