#ifndef POPUC_LINALG_HPP
#define POPUC_LINALG_HPP

#include <cstdint>

#include <Eigen/Dense>

namespace popuc {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Unitarity tolerance on ||U^* U - I||_max.
inline constexpr double kUnitaryTol = 1e-10;
/// Residual and modulus tolerance for reported eigenpairs.
inline constexpr double kEigenTol = 1e-10;
/// Singular values at or below this count as zero in rank decisions.
inline constexpr double kRankTol = 1e-10;

/// ||M^* M - I||_max; infinity for a non-square matrix.
double unitarity_defect(const Matrix& m);

Eigen::VectorXd singular_values(const Matrix& m);

double max_abs(const Matrix& m);

/// Standard basis vector delta_index of dimension n.
Vector basis_vector(Eigen::Index n, Eigen::Index index);

/// Process-wide running maxima of the numerical quantities every unitary and
/// every eigenpair is checked against. Updated lock-free from any thread.
struct HygieneStats {
  double max_unitarity_defect = 0.0;
  double max_eigen_residual = 0.0;
  double max_eigen_modulus_defect = 0.0;
  std::uint64_t unitaries_checked = 0;
  std::uint64_t eigenpairs_checked = 0;
};

HygieneStats hygiene_snapshot();
void hygiene_reset();
void record_unitary(double defect);
void record_eigenpair(double residual, double modulus_defect);

}  // namespace popuc

#endif  // POPUC_LINALG_HPP
