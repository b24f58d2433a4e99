#include "popuc/linalg.hpp"

#include <atomic>
#include <limits>

namespace popuc {

double unitarity_defect(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  const Matrix gram = m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
  return max_abs(gram);
}

Eigen::VectorXd singular_values(const Matrix& m) {
  return Eigen::JacobiSVD<Matrix>(m).singularValues();
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

Vector basis_vector(Eigen::Index n, Eigen::Index index) {
  Vector v = Vector::Zero(n);
  v(index) = 1.0;
  return v;
}

namespace {

struct Counters {
  std::atomic<double> unitarity{0.0};
  std::atomic<double> residual{0.0};
  std::atomic<double> modulus{0.0};
  std::atomic<std::uint64_t> unitaries{0};
  std::atomic<std::uint64_t> eigenpairs{0};
};

Counters& counters() {
  static Counters c;
  return c;
}

void raise_to(std::atomic<double>& slot, double value) {
  double current = slot.load(std::memory_order_relaxed);
  while (value > current &&
         !slot.compare_exchange_weak(current, value, std::memory_order_relaxed)) {
  }
}

}  // namespace

HygieneStats hygiene_snapshot() {
  auto& c = counters();
  return HygieneStats{c.unitarity.load(), c.residual.load(), c.modulus.load(),
                      c.unitaries.load(), c.eigenpairs.load()};
}

void hygiene_reset() {
  auto& c = counters();
  c.unitarity = 0.0;
  c.residual = 0.0;
  c.modulus = 0.0;
  c.unitaries = 0;
  c.eigenpairs = 0;
}

void record_unitary(double defect) {
  raise_to(counters().unitarity, defect);
  counters().unitaries.fetch_add(1, std::memory_order_relaxed);
}

void record_eigenpair(double residual, double modulus_defect) {
  raise_to(counters().residual, residual);
  raise_to(counters().modulus, modulus_defect);
  counters().eigenpairs.fetch_add(1, std::memory_order_relaxed);
}

}  // namespace popuc
