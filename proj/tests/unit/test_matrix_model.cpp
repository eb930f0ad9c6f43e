#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/SVD>
#include <gtest/gtest.h>

#include "nhrm/error.hpp"
#include "nhrm/matrix_model.hpp"
#include "nhrm/pnorm.hpp"

namespace nhrm {
namespace {

Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Io;
}

const PNorm kInf = PNorm::infinity();

TEST(PNormTest, ParsesAndRejects) {
  EXPECT_TRUE(PNorm::parse("inf").is_infinite());
  EXPECT_TRUE(PNorm::parse("∞").is_infinite());
  EXPECT_DOUBLE_EQ(PNorm::parse("2.5").value(), 2.5);
  EXPECT_EQ(code_of([] { PNorm::finite(0.5); }), ErrorCode::BadP);
  EXPECT_EQ(code_of([] { PNorm::finite(std::nan("")); }), ErrorCode::BadP);
  EXPECT_EQ(code_of([] { PNorm::parse("abc"); }), ErrorCode::BadP);
  EXPECT_EQ(PNorm::finite(4).to_string(), "4");
  EXPECT_EQ(kInf.to_string(), "inf");
}

TEST(ProfileTest, ConstructionAndValidation) {
  const auto sym = new_profile(mat({{0, 1}, {1, 0}}), true);
  EXPECT_EQ(sym.rows(), 2u);
  EXPECT_TRUE(sym.symmetric());
  const auto rect = new_profile(mat({{1, 2}, {3, 4}, {5, 6}}), false);
  EXPECT_EQ(rect.rows(), 3u);
  EXPECT_EQ(rect.cols(), 2u);
  EXPECT_EQ(code_of([] { new_profile(mat({{-1}}), false); }), ErrorCode::NegativeEntry);
  EXPECT_EQ(code_of([] { new_profile(mat({{INFINITY}}), false); }), ErrorCode::NonFiniteEntry);
  EXPECT_EQ(code_of([] { new_profile(mat({{1, 2}}), true); }), ErrorCode::NonSquareSymmetric);
  EXPECT_EQ(code_of([] { new_profile(mat({{0, 1}, {2, 0}}), true); }), ErrorCode::AsymmetricEntries);
}

TEST(ProfileTest, MirrorsUpperTriangle) {
  const auto p = new_profile(mat({{1, 2, 3}, {0, 4, 5}, {0, 0, 6}}), true);
  EXPECT_EQ(p(1, 0), 2.0);
  EXPECT_EQ(p(2, 0), 3.0);
  EXPECT_EQ(p(2, 1), 5.0);
  EXPECT_EQ(p(1, 1), 4.0);
}

TEST(RearrangeTest, Examples) {
  auto r = rearrange_decreasing(new_profile(mat({{0, 1}, {1, 0}}), true));
  EXPECT_EQ(r.perm, (std::vector<std::size_t>{0, 1}));
  r = rearrange_decreasing(new_profile(mat({{1, 0, 0}, {0, 3, 0}, {0, 0, 2}}), true));
  EXPECT_EQ(r.perm, (std::vector<std::size_t>{1, 2, 0}));
  EXPECT_EQ(r.rowmax, (std::vector<double>{3, 2, 1}));
  EXPECT_EQ(code_of([] { rearrange_decreasing(new_profile(mat({{1, 2}}), false)); }),
            ErrorCode::NotSymmetric);
}

// Oracle: among all permutations sorting rowmax nonincreasingly, the
// lexicographically smallest one is the stable sort.
TEST(RearrangeTest, MatchesPermutationSearchOracle) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> val(0, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 4;
    Matrix m = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = val(rng);
    const auto prof = new_profile(m, true);
    const auto r = rearrange_decreasing(prof);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::size_t> best;
    do {
      bool ok = true;
      for (int i = 0; i + 1 < n; ++i)
        ok = ok && m.row(perm[i]).maxCoeff() >= m.row(perm[i + 1]).maxCoeff();
      if (ok) {
        best = perm;
        break;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_EQ(r.perm, best);
  }
}

TEST(RearrangeTest, StableTies) {
  // row maxima (5, 5, 7)
  const auto r = rearrange_decreasing(new_profile(mat({{5, 0, 0}, {0, 5, 0}, {0, 0, 7}}), true));
  EXPECT_EQ(r.perm, (std::vector<std::size_t>{2, 0, 1}));
}

TEST(NormTest, MixedNormExamples) {
  EXPECT_DOUBLE_EQ(mixed_norm(mat({{3, 4}, {0, 0}}), kInf), 5.0);
  EXPECT_DOUBLE_EQ(mixed_norm(mat({{3, 4}, {0, 0}}), PNorm::finite(2)), 5.0);
  EXPECT_NEAR(mixed_norm(Matrix::Identity(3, 3), PNorm::finite(4)), std::pow(3.0, 0.25), 1e-15);
}

TEST(NormTest, SchattenExamples) {
  const Matrix d = Vector(Eigen::Vector3d(1, -2, 3)).asDiagonal();
  EXPECT_NEAR(schatten_norm(d, PNorm::finite(2)), std::sqrt(14.0), 1e-14);
  EXPECT_NEAR(schatten_norm(d, kInf), 3.0, 1e-14);
  EXPECT_NEAR(schatten_norm(mat({{0, 1}, {1, 0}}), PNorm::finite(4)), std::pow(2.0, 0.25), 1e-14);
}

// Singular values against Eigen's Jacobi SVD, a different algorithm.
TEST(NormTest, SingularValuesMatchJacobiSvd) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 30; ++trial) {
    const int r = 1 + trial % 6, c = 1 + (trial * 7) % 5;
    Matrix m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = g(rng);
    if (trial % 3 == 0 && r == c) m = (m + m.transpose()).eval();
    const Vector ours = singular_values(m);
    const Vector ref = Eigen::JacobiSVD<Matrix>(m).singularValues();
    ASSERT_EQ(ours.size(), ref.size());
    for (Eigen::Index i = 0; i < ref.size(); ++i) EXPECT_NEAR(ours(i), ref(i), 1e-10 * ref(0));
  }
}

TEST(NormTest, SchattenDominatesMixedAndOperatorNorm) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 40; ++trial) {
    const int r = 1 + trial % 7, c = 1 + (trial * 3) % 6;
    Matrix m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = g(rng) * (j % 2 ? 0.3 : 2.0);
    const double sinf = schatten_norm(m, kInf);
    for (double p : {2.0, 2.5, 3.0, 4.0, 8.0}) {
      const double sp = schatten_norm(m, PNorm::finite(p));
      EXPECT_GE(sp, mixed_norm(m, PNorm::finite(p)) * (1 - 1e-12));
      EXPECT_GE(sp, sinf * (1 - 1e-12));
    }
    EXPECT_GE(sinf, mixed_norm(m, kInf) * (1 - 1e-12));
  }
}

TEST(DilationTest, Examples) {
  const Matrix d1 = bipartite_dilation(mat({{1}}));
  EXPECT_EQ(d1, mat({{0, 1}, {1, 0}}));
  EXPECT_NEAR(schatten_norm(bipartite_dilation(mat({{3, 4}})), kInf), 5.0, 1e-13);
}

TEST(DilationTest, PowerIdentities) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    Matrix x(3, 2);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 2; ++j) x(i, j) = g(rng);
    const Matrix d = bipartite_dilation(x);
    for (double p : {2.0, 3.0, 4.0}) {
      const PNorm pn = PNorm::finite(p);
      EXPECT_NEAR(std::pow(schatten_norm(d, pn), p), 2 * std::pow(schatten_norm(x, pn), p),
                  1e-9 * std::pow(schatten_norm(d, pn), p));
      const double want = std::pow(mixed_norm(x, pn), p) + std::pow(mixed_norm(x.transpose(), pn), p);
      EXPECT_NEAR(std::pow(mixed_norm(d, pn), p), want, 1e-9 * want);
    }
  }
}

TEST(NormTest, LpNormHandlesScaleExtremes) {
  const std::vector<double> tiny{1e-200, 1e-200}, huge{1e200, 1e200};
  EXPECT_NEAR(lp_norm(tiny, PNorm::finite(4)) / 1e-200, std::pow(2.0, 0.25), 1e-14);
  EXPECT_NEAR(lp_norm(huge, PNorm::finite(3)) / 1e200, std::cbrt(2.0), 1e-14);
  EXPECT_EQ(lp_norm(std::vector<double>{}, kInf), 0.0);
}

}  // namespace
}  // namespace nhrm
