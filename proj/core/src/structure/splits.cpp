#include <algorithm>
#include <cmath>

#include "nhrm/error.hpp"
#include "nhrm/structure/decomposition.hpp"

namespace nhrm::structure {

UVWSplit split_UVW(const Matrix& m, const DecompositionPlan& plan) {
  const std::size_t n = plan.perm.size();
  if (static_cast<std::size_t>(m.rows()) != n || static_cast<std::size_t>(m.cols()) != n)
    throw Error(ErrorCode::ShapeMismatch, "matrix and plan differ in size");
  UVWSplit s;
  s.U = Matrix::Zero(m.rows(), m.cols());
  s.V = s.U;
  s.W = s.U;
  const auto& part = plan.partition;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      switch (part.classify(static_cast<std::size_t>(i) + 1, static_cast<std::size_t>(j) + 1)) {
        case CellClass::E1: s.U(i, j) = m(i, j); break;
        case CellClass::E2: s.V(i, j) = m(i, j); break;
        case CellClass::E3: s.W(i, j) = m(i, j); break;
      }
    }
  s.u_blocks = part.e1_blocks();
  s.v_blocks = part.e2_blocks();
  return s;
}

YZSplit split_YZ(const Matrix& m, PNorm p) {
  if (p.is_infinite() || p.value() < 2.0) throw Error(ErrorCode::BadP, "split needs finite p >= 2");
  if (m.rows() != m.cols()) throw Error(ErrorCode::ShapeMismatch, "split needs a square matrix");
  const std::size_t n = static_cast<std::size_t>(m.rows());
  YZSplit s;
  const double e = std::exp(p.value());
  s.cutoff = e > static_cast<double>(n) ? n + 1 : static_cast<std::size_t>(std::ceil(e));
  s.rank_bound = std::min(n, 2 * (s.cutoff - 1));
  s.Y = m;
  s.Z = Matrix::Zero(m.rows(), m.cols());
  if (s.cutoff <= n) {
    const auto off = static_cast<Eigen::Index>(s.cutoff - 1);
    const auto len = static_cast<Eigen::Index>(n) - off;
    s.Z.bottomRightCorner(len, len) = m.bottomRightCorner(len, len);
    s.Y.bottomRightCorner(len, len).setZero();
  }
  return s;
}

}  // namespace nhrm::structure
