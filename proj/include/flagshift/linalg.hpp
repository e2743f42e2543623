#ifndef FLAGSHIFT_LINALG_HPP
#define FLAGSHIFT_LINALG_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

namespace flagshift {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Default relative singular-value threshold shared by every rank decision.
inline constexpr double kRankRel = 1e-8;

/// Outcome of a numerical rank decision.
///
/// Singular values below `threshold` count as zero. The decision is
/// `borderline` when some singular value lies within a factor 10 of the
/// threshold on either side; callers resample the point in that case.
struct RankInfo {
  int rank = 0;
  double threshold = 0.0;
  bool borderline = false;
  std::vector<double> singular_values;
  std::vector<double> near_threshold;
};

/// Rank of `a` with threshold rel * max(sigma_max, scale).
///
/// `scale` lets callers fix an absolute reference magnitude, which matters
/// when the matrix itself may vanish (e.g. a bivector restricted to an
/// isotropic subspace).
inline RankInfo numerical_rank(const Matrix& a, double rel = kRankRel, double scale = 0.0) {
  RankInfo info;
  if (a.rows() == 0 || a.cols() == 0) return info;
  Eigen::JacobiSVD<Matrix> svd(a);
  const Vector& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  info.threshold = rel * std::max(smax, scale);
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    info.singular_values.push_back(s(k));
    if (s(k) > info.threshold) ++info.rank;
    if (info.threshold > 0.0 && s(k) > info.threshold / 10.0 && s(k) < info.threshold * 10.0) {
      info.borderline = true;
      info.near_threshold.push_back(s(k));
    }
  }
  return info;
}

/// Orthonormal basis (as columns) of the null space of `a`.
inline Matrix null_space(const Matrix& a, double rel = kRankRel, double scale = 0.0,
                         RankInfo* info_out = nullptr) {
  const Eigen::Index n = a.cols();
  if (a.rows() == 0) {
    if (info_out) *info_out = RankInfo{};
    return Matrix::Identity(n, n);
  }
  // Pad to a square-or-tall matrix so the full V carries the whole null space.
  Matrix padded = a;
  if (a.rows() < n) {
    padded = Matrix::Zero(n, n);
    padded.topRows(a.rows()) = a;
  }
  Eigen::JacobiSVD<Matrix> svd(padded, Eigen::ComputeFullV);
  RankInfo info = numerical_rank(a, rel, scale);
  if (info_out) *info_out = info;
  return svd.matrixV().rightCols(n - info.rank);
}

/// Orthonormal basis (as columns) of the column span of `a`.
inline Matrix column_span(const Matrix& a, double rel = kRankRel, double scale = 0.0,
                          RankInfo* info_out = nullptr) {
  if (a.cols() == 0 || a.rows() == 0) {
    if (info_out) *info_out = RankInfo{};
    return Matrix(a.rows(), 0);
  }
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
  RankInfo info = numerical_rank(a, rel, scale);
  if (info_out) *info_out = info;
  return svd.matrixU().leftCols(info.rank);
}

/// Largest principal angle (radians) between the column spans of two
/// orthonormal bases. Spans of different dimension are pi/2 apart. Uses the
/// sine form |(I - Qa Qa^T) Qb|_2, which stays accurate near zero.
inline double max_principal_angle(const Matrix& qa, const Matrix& qb) {
  if (qa.cols() != qb.cols()) return M_PI / 2.0;
  if (qa.cols() == 0) return 0.0;
  const Matrix residual = qb - qa * (qa.transpose() * qb);
  Eigen::JacobiSVD<Matrix> svd(residual);
  return std::asin(std::clamp(svd.singularValues()(0), 0.0, 1.0));
}

/// Relative distance of `v` from the span of the orthonormal columns of `q`.
inline double distance_from_span(const Matrix& q, const Vector& v) {
  const double nv = v.norm();
  if (nv == 0.0) return 0.0;
  if (q.cols() == 0) return 1.0;
  return (v - q * (q.transpose() * v)).norm() / nv;
}

}  // namespace flagshift

#endif
