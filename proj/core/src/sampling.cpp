#include <charconv>
#include <cmath>
#include <numbers>
#include <random>

#include "nhrm/error.hpp"
#include "nhrm/matrix_model.hpp"
#include "nhrm/random.hpp"

namespace nhrm {

namespace {

// Draws one standardized value per independent cell (lower triangle for
// symmetric profiles, column by column) and scales it by b_ij.
template <class Draw>
Matrix fill(const VarianceProfile& p, std::uint64_t seed, Draw&& draw) {
  Engine rng = make_engine(seed);
  const auto r = static_cast<Eigen::Index>(p.rows());
  const auto c = static_cast<Eigen::Index>(p.cols());
  Matrix x(r, c);
  const Matrix& b = p.b();
  if (p.symmetric()) {
    for (Eigen::Index j = 0; j < c; ++j)
      for (Eigen::Index i = j; i < r; ++i) {
        const double h = draw(rng);
        const double v = b(i, j) == 0.0 ? 0.0 : b(i, j) * h;
        x(i, j) = v;
        x(j, i) = v;
      }
  } else {
    for (Eigen::Index j = 0; j < c; ++j)
      for (Eigen::Index i = 0; i < r; ++i) {
        const double h = draw(rng);
        x(i, j) = b(i, j) == 0.0 ? 0.0 : b(i, j) * h;
      }
  }
  return x;
}

std::string shortest(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, ptr);
}

MatrixSample wrap(Matrix x, ModelKind kind, double param, std::uint64_t seed) {
  return MatrixSample{std::move(x), kind, param, seed};
}

// Positive (a)-stable variable with Laplace transform exp(-s^a), 0 < a < 1 (Kanter).
double positive_stable(Engine& rng, double a) {
  std::uniform_real_distribution<double> uni(0.0, std::numbers::pi);
  std::exponential_distribution<double> ex(1.0);
  double v = uni(rng);
  while (v == 0.0) v = uni(rng);
  const double w = ex(rng);
  const double left = std::sin(a * v) / std::pow(std::sin(v), 1.0 / a);
  const double right = std::pow(std::sin((1.0 - a) * v) / w, (1.0 - a) / a);
  return left * right;
}

}  // namespace

EntryModel EntryModel::heavy(double beta) {
  if (!(beta >= 0.5) || !std::isfinite(beta)) throw Error(ErrorCode::BadBeta, "beta must be >= 1/2");
  return EntryModel{ModelKind::Heavy, beta, nullptr};
}

EntryModel EntryModel::stable(double alpha) {
  if (!(alpha > 1.0 && alpha <= 2.0)) throw Error(ErrorCode::BadAlpha, "alpha must lie in (1, 2]");
  return EntryModel{ModelKind::Stable, alpha, nullptr};
}

EntryModel EntryModel::bounded(VarianceProfile sup) {
  return EntryModel{ModelKind::Bounded, 0.0, std::make_shared<const VarianceProfile>(std::move(sup))};
}

std::string EntryModel::tag() const {
  switch (kind) {
    case ModelKind::Gaussian: return "gaussian";
    case ModelKind::Bounded: return "bounded";
    case ModelKind::Heavy: return "heavy(beta=" + shortest(parameter) + ")";
    case ModelKind::Stable: return "stable(alpha=" + shortest(parameter) + ")";
  }
  return "unknown";
}

MatrixSample sample_gaussian(const VarianceProfile& p, std::uint64_t seed) {
  std::normal_distribution<double> g(0.0, 1.0);
  return wrap(fill(p, seed, [&](Engine& rng) { return g(rng); }), ModelKind::Gaussian, 0.0, seed);
}

MatrixSample sample_bounded(const VarianceProfile& var, const VarianceProfile& sup, std::uint64_t seed) {
  if (var.rows() != sup.rows() || var.cols() != sup.cols() || var.symmetric() != sup.symmetric())
    throw Error(ErrorCode::ShapeMismatch, "var and sup profiles differ in shape");
  const Matrix& v = var.b();
  const Matrix& s = sup.b();
  for (Eigen::Index j = 0; j < v.cols(); ++j)
    for (Eigen::Index i = 0; i < v.rows(); ++i)
      if (v(i, j) > s(i, j)) throw Error(ErrorCode::InfeasibleBound, "var exceeds sup");

  // Entry = c (delta - q) with delta ~ Bernoulli(q): mean 0, variance v^2,
  // values {-v^2/s, s}.
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  Engine rng = make_engine(seed);
  const auto r = v.rows(), c = v.cols();
  Matrix x(r, c);
  auto draw = [&](Eigen::Index i, Eigen::Index j) {
    const double u = uni(rng);
    const double sv = s(i, j), vv = v(i, j);
    if (sv == 0.0 || vv == 0.0) return 0.0;
    const double q = vv * vv / (sv * sv + vv * vv);
    return u < q ? sv : -vv * vv / sv;
  };
  if (var.symmetric()) {
    for (Eigen::Index j = 0; j < c; ++j)
      for (Eigen::Index i = j; i < r; ++i) x(i, j) = x(j, i) = draw(i, j);
  } else {
    for (Eigen::Index j = 0; j < c; ++j)
      for (Eigen::Index i = 0; i < r; ++i) x(i, j) = draw(i, j);
  }
  return wrap(std::move(x), ModelKind::Bounded, 0.0, seed);
}

MatrixSample sample_heavy(const VarianceProfile& p, double beta, std::uint64_t seed) {
  if (!(beta >= 0.5) || !std::isfinite(beta)) throw Error(ErrorCode::BadBeta, "beta must be >= 1/2");
  std::exponential_distribution<double> ex(1.0);
  std::uniform_int_distribution<int> coin(0, 1);
  auto draw = [&](Engine& rng) {
    const double sign = coin(rng) ? 1.0 : -1.0;
    const double e = ex(rng);
    return sign * (beta == 0.5 ? std::sqrt(e) : std::pow(e, beta));
  };
  return wrap(fill(p, seed, draw), ModelKind::Heavy, beta, seed);
}

MatrixSample sample_stable(const VarianceProfile& p, double alpha, std::uint64_t seed) {
  if (!(alpha > 1.0 && alpha <= 2.0)) throw Error(ErrorCode::BadAlpha, "alpha must lie in (1, 2]");
  std::normal_distribution<double> g(0.0, 1.0);
  if (alpha == 2.0)
    return wrap(fill(p, seed, [&](Engine& rng) { return g(rng); }), ModelKind::Stable, alpha, seed);
  // Gaussian mixture: sqrt(S) g with S positive (alpha/2)-stable. The
  // characteristic function is exp(-|t|^alpha / 2^(alpha/2)), which tends to
  // the standard Gaussian as alpha -> 2.
  const double a = alpha / 2.0;
  auto draw = [&](Engine& rng) {
    const double s = positive_stable(rng, a);
    return std::sqrt(s) * g(rng);
  };
  return wrap(fill(p, seed, draw), ModelKind::Stable, alpha, seed);
}

MatrixSample sample(const VarianceProfile& p, const EntryModel& model, std::uint64_t seed) {
  switch (model.kind) {
    case ModelKind::Gaussian: return sample_gaussian(p, seed);
    case ModelKind::Bounded:
      if (!model.sup) throw Error(ErrorCode::BadParams, "bounded model needs a sup profile");
      return sample_bounded(p, *model.sup, seed);
    case ModelKind::Heavy: return sample_heavy(p, model.parameter, seed);
    case ModelKind::Stable: return sample_stable(p, model.parameter, seed);
  }
  throw Error(ErrorCode::BadParams, "unknown model");
}

}  // namespace nhrm
