#include "nhrm/matrix_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nhrm/error.hpp"

namespace nhrm {

namespace {

bool strict_lower_zero(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = j + 1; i < m.rows(); ++i)
      if (m(i, j) != 0.0) return false;
  return true;
}

bool strict_upper_zero(const Matrix& m) { return strict_lower_zero(m.transpose()); }

}  // namespace

bool exactly_symmetric(const Matrix& m) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = j + 1; i < m.rows(); ++i)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

VarianceProfile new_profile(const Matrix& m, bool symmetric) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const double x = m(i, j);
      if (!std::isfinite(x)) throw Error(ErrorCode::NonFiniteEntry, "profile entry is not finite");
      if (x < 0.0) throw Error(ErrorCode::NegativeEntry, "profile entry is negative");
    }
  VarianceProfile p;
  p.symmetric_ = symmetric;
  if (!symmetric) {
    p.b_ = m;
    return p;
  }
  if (m.rows() != m.cols())
    throw Error(ErrorCode::NonSquareSymmetric, "symmetric profile must be square");
  if (exactly_symmetric(m)) {
    p.b_ = m;
  } else if (strict_lower_zero(m) || strict_upper_zero(m)) {
    // Only one triangle was supplied; mirror it.
    p.b_ = m + m.transpose();
    p.b_.diagonal() = m.diagonal();
  } else {
    throw Error(ErrorCode::AsymmetricEntries, "symmetric profile has b_ij != b_ji");
  }
  return p;
}

VarianceProfile new_profile(const RealTable& t, bool symmetric) {
  Matrix m(t.rows(), t.cols());
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t j = 0; j < t.cols(); ++j) m(i, j) = t(i, j);
  return new_profile(m, symmetric);
}

RealTable to_table(const VarianceProfile& p) {
  RealTable t(p.rows(), p.cols());
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) t(i, j) = p(i, j);
  return t;
}

VarianceProfile VarianceProfile::scaled(double c) const {
  if (!std::isfinite(c) || c < 0.0) throw Error(ErrorCode::BadParams, "scale must be finite and >= 0");
  VarianceProfile out = *this;
  out.b_ *= c;
  return out;
}

VarianceProfile VarianceProfile::transposed() const {
  VarianceProfile out = *this;
  out.b_ = b_.transpose();
  return out;
}

VarianceProfile VarianceProfile::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != rows()) throw Error(ErrorCode::ShapeMismatch, "permutation length differs from rows");
  VarianceProfile out = *this;
  for (std::size_t k = 0; k < perm.size(); ++k) {
    if (symmetric_) {
      for (std::size_t l = 0; l < perm.size(); ++l) out.b_(k, l) = b_(perm[k], perm[l]);
    } else {
      out.b_.row(k) = b_.row(perm[k]);
    }
  }
  return out;
}

VarianceProfile VarianceProfile::off_diagonal() const {
  VarianceProfile out = *this;
  const auto d = std::min(out.b_.rows(), out.b_.cols());
  for (Eigen::Index i = 0; i < d; ++i) out.b_(i, i) = 0.0;
  return out;
}

std::vector<double> VarianceProfile::row_max() const {
  std::vector<double> out(rows(), 0.0);
  for (std::size_t i = 0; i < rows(); ++i)
    if (cols() > 0) out[i] = b_.row(i).maxCoeff();
  return out;
}

std::vector<double> VarianceProfile::row_norms() const {
  std::vector<double> out(rows(), 0.0);
  for (std::size_t i = 0; i < rows(); ++i) out[i] = b_.row(i).norm();
  return out;
}

RearrangedProfile rearrange_decreasing(const VarianceProfile& p) {
  if (!p.symmetric()) throw Error(ErrorCode::NotSymmetric, "rearrangement needs a symmetric profile");
  const auto rm = p.row_max();
  std::vector<std::size_t> perm(p.rows());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return rm[a] > rm[b]; });
  RearrangedProfile r{p, perm, {}};
  r.rowmax.reserve(perm.size());
  for (auto i : perm) r.rowmax.push_back(rm[i]);
  return r;
}

double lp_norm(std::span<const double> v, PNorm p) {
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  if (p.is_infinite() || scale == 0.0) return scale;
  const double q = p.value();
  double acc = 0.0;
  if (q == 2.0) {
    for (double x : v) acc += (x / scale) * (x / scale);
    return scale * std::sqrt(acc);
  }
  for (double x : v) acc += std::pow(std::abs(x) / scale, q);
  return scale * std::pow(acc, 1.0 / q);
}

double mixed_norm(const Matrix& m, PNorm p) {
  std::vector<double> rn(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) rn[i] = m.row(i).norm();
  return lp_norm(rn, p);
}

Vector symmetric_eigenvalues(const Matrix& m) {
  if (m.size() == 0) return Vector();
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::ConvergenceFailure, "eigenvalue solver did not converge");
  return es.eigenvalues();
}

Vector singular_values(const Matrix& m) {
  if (m.size() == 0) return Vector();
  if (exactly_symmetric(m)) {
    Vector s = symmetric_eigenvalues(m).cwiseAbs();
    std::sort(s.data(), s.data() + s.size(), std::greater<>());
    return s;
  }
  const Vector ev = symmetric_eigenvalues(bipartite_dilation(m));
  const Eigen::Index k = std::min(m.rows(), m.cols());
  Vector s(k);
  for (Eigen::Index i = 0; i < k; ++i) s(i) = std::max(0.0, ev(ev.size() - 1 - i));
  return s;
}

double schatten_from_singular_values(const Vector& s, PNorm p) {
  return lp_norm(std::span<const double>(s.data(), static_cast<std::size_t>(s.size())), p);
}

double schatten_norm(const Matrix& m, PNorm p) { return schatten_from_singular_values(singular_values(m), p); }

std::size_t numerical_rank(const Matrix& m, double rel_tol) {
  const Vector s = singular_values(m);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++r;
  return r;
}

Matrix bipartite_dilation(const Matrix& x) {
  const auto n = x.rows(), m = x.cols();
  Matrix d = Matrix::Zero(n + m, n + m);
  d.topRightCorner(n, m) = x;
  d.bottomLeftCorner(m, n) = x.transpose();
  return d;
}

}  // namespace nhrm
