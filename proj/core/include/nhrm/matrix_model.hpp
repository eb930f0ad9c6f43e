#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "nhrm/pnorm.hpp"
#include "nhrm/rational.hpp"

namespace nhrm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Nonnegative matrix of entry scales b_ij. A symmetric profile describes a
/// Hermitian-type matrix whose entries on and below the diagonal are independent.
class VarianceProfile {
 public:
  std::size_t rows() const noexcept { return static_cast<std::size_t>(b_.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(b_.cols()); }
  bool symmetric() const noexcept { return symmetric_; }
  const Matrix& b() const noexcept { return b_; }
  double operator()(std::size_t i, std::size_t j) const { return b_(i, j); }

  VarianceProfile scaled(double c) const;
  VarianceProfile transposed() const;
  /// Rows (and for symmetric profiles also columns) reordered so that position k
  /// holds original index perm[k].
  VarianceProfile permuted(std::span<const std::size_t> perm) const;
  /// Copy with the diagonal set to zero.
  VarianceProfile off_diagonal() const;

  std::vector<double> row_max() const;
  /// Euclidean norm of each row.
  std::vector<double> row_norms() const;

 private:
  friend VarianceProfile new_profile(const Matrix& m, bool symmetric);
  Matrix b_;
  bool symmetric_ = false;
};

/// Validates entries and builds a profile. With symmetric = true a matrix with one
/// strict triangle entirely zero is mirrored from the other; otherwise it must be
/// exactly symmetric.
VarianceProfile new_profile(const Matrix& m, bool symmetric);
VarianceProfile new_profile(const RealTable& t, bool symmetric);
RealTable to_table(const VarianceProfile& p);

/// Symmetric profile reordered so that row maxima are nonincreasing.
struct RearrangedProfile {
  VarianceProfile base;
  /// perm[k] = original index placed at position k (0-based).
  std::vector<std::size_t> perm;
  /// Row maxima in the new order; nonincreasing.
  std::vector<double> rowmax;

  VarianceProfile permuted() const { return base.permuted(perm); }
};

/// Stable sort by row maximum, descending; ties keep original order.
RearrangedProfile rearrange_decreasing(const VarianceProfile& p);

/// l_p norm of a vector, overflow-safe for large p.
double lp_norm(std::span<const double> v, PNorm p);
/// l_p over rows of the row Euclidean norms.
double mixed_norm(const Matrix& m, PNorm p);

/// Singular values, descending. Symmetric input uses |eigenvalues|; anything
/// else goes through the eigenvalues of the bipartite dilation.
Vector singular_values(const Matrix& m);
/// Eigenvalues of a symmetric matrix, ascending.
Vector symmetric_eigenvalues(const Matrix& m);
double schatten_from_singular_values(const Vector& s, PNorm p);
double schatten_norm(const Matrix& m, PNorm p);
std::size_t numerical_rank(const Matrix& m, double rel_tol = 1e-10);

bool exactly_symmetric(const Matrix& m);

/// [[0, X], [X^T, 0]].
Matrix bipartite_dilation(const Matrix& x);

enum class ModelKind { Gaussian, Bounded, Heavy, Stable };

/// Entry law used by the samplers. `parameter` is beta for Heavy, alpha for Stable.
struct EntryModel {
  ModelKind kind = ModelKind::Gaussian;
  double parameter = 0.0;
  /// Per-entry bound for the Bounded model.
  std::shared_ptr<const VarianceProfile> sup;

  static EntryModel gaussian() { return {}; }
  static EntryModel heavy(double beta);
  static EntryModel stable(double alpha);
  static EntryModel bounded(VarianceProfile sup);
  std::string tag() const;
};

struct MatrixSample {
  Matrix entries;
  ModelKind model = ModelKind::Gaussian;
  double model_parameter = 0.0;
  std::uint64_t seed = 0;
};

MatrixSample sample_gaussian(const VarianceProfile& p, std::uint64_t seed);
/// Two-point entries with variance var_ij^2 and |X_ij| <= sup_ij.
MatrixSample sample_bounded(const VarianceProfile& var, const VarianceProfile& sup,
                            std::uint64_t seed);
/// Symmetric sign times Exp(1)^beta; beta = 1/2 has Gaussian-like tails.
MatrixSample sample_heavy(const VarianceProfile& p, double beta, std::uint64_t seed);
/// Symmetric alpha-stable entries, alpha in (1, 2]; alpha = 2 is standard Gaussian.
MatrixSample sample_stable(const VarianceProfile& p, double alpha, std::uint64_t seed);
MatrixSample sample(const VarianceProfile& p, const EntryModel& model, std::uint64_t seed);

}  // namespace nhrm
