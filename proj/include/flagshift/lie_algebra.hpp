#ifndef FLAGSHIFT_LIE_ALGEBRA_HPP
#define FLAGSHIFT_LIE_ALGEBRA_HPP

#include "flagshift/errors.hpp"
#include "flagshift/linalg.hpp"

#include <Eigen/Dense>

#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace flagshift {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// An element of a Lie algebra, as coordinates in the algebra's basis.
using Element = Vector;

/// Matrix exponential by scaling and squaring with a [6/6] Pade approximant.
///
/// The argument is scaled to 1-norm <= 1/2, where the [6/6] truncation error
/// is below double precision.
inline CMatrix expm(const CMatrix& a) {
  const Eigen::Index n = a.rows();
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  const CMatrix x = a / std::ldexp(1.0, squarings);

  constexpr int kOrder = 6;
  CMatrix num = CMatrix::Identity(n, n);
  CMatrix den = CMatrix::Identity(n, n);
  CMatrix power = CMatrix::Identity(n, n);
  double c = 1.0;
  for (int k = 1; k <= kOrder; ++k) {
    c *= static_cast<double>(kOrder - k + 1) / static_cast<double>(k * (2 * kOrder - k + 1));
    power = power * x;
    num += c * power;
    den += (k % 2 == 0 ? c : -c) * power;
  }
  CMatrix result = den.partialPivLu().solve(num);
  for (int k = 0; k < squarings; ++k) result = result * result;
  return result;
}

/// A compact simple Lie algebra with its exact structure data.
///
/// Only su(m) is constructed. The basis is e = -(i/2) lambda over the
/// generalized Gell-Mann matrices lambda, ordered as (symmetric,
/// antisymmetric) off-diagonal pairs followed by the diagonal generators, so
/// that su(2) gets e_a = -(i/2) sigma_a and [e1, e2] = e3.
///
/// The pairing <x, y> is the negative Killing form -tr(ad_x ad_y), computed
/// from the structure constants. Instances are immutable.
class LieAlgebra {
 public:
  static std::shared_ptr<const LieAlgebra> build(std::string_view family, int m) {
    if (family != "su") throw ConfigError("unsupported algebra family '" + std::string(family) + "'");
    if (m < 2) throw ConfigError("su(m) requires m >= 2, got " + std::to_string(m));
    return std::shared_ptr<const LieAlgebra>(new LieAlgebra(m));
  }

  /// Parses names such as "su2", "su(3)" or "su:4".
  static std::shared_ptr<const LieAlgebra> build(std::string_view name) {
    std::string digits;
    std::string family;
    for (char ch : name) {
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        digits += ch;
      } else if (std::isalpha(static_cast<unsigned char>(ch))) {
        if (!digits.empty()) throw ConfigError("malformed algebra name '" + std::string(name) + "'");
        family += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      }
    }
    if (digits.empty() || digits.size() > 3) throw ConfigError("malformed algebra name '" + std::string(name) + "'");
    return build(family, std::stoi(digits));
  }

  const std::string& family() const { return family_; }
  std::string name() const { return family_ + std::to_string(m_); }
  int m() const { return m_; }
  int dim() const { return dim_; }
  int rank() const { return m_ - 1; }

  const CMatrix& basis(int a) const { return basis_[static_cast<std::size_t>(a)]; }

  /// c[i][j][k] with [e_i, e_j] = sum_k c[i][j][k] e_k.
  double structure_constant(int i, int j, int k) const { return ad_basis_[static_cast<std::size_t>(i)](k, j); }

  /// Matrix of ad_{e_i} acting on coordinates.
  const Matrix& ad_basis(int i) const { return ad_basis_[static_cast<std::size_t>(i)]; }

  const Matrix& gram() const { return gram_; }
  const Matrix& gram_inverse() const { return gram_inv_; }

  Element zero() const { return Element::Zero(dim_); }
  Element unit(int a) const {
    Element e = zero();
    e(a) = 1.0;
    return e;
  }

  void check(const Element& x) const {
    if (x.size() != dim_)
      throw UsageError("element of dimension " + std::to_string(x.size()) + " used with " + name() +
                       " (dimension " + std::to_string(dim_) + ")");
  }

  /// ad_x as a dim x dim matrix.
  Matrix ad(const Element& x) const {
    check(x);
    Matrix out = Matrix::Zero(dim_, dim_);
    for (int i = 0; i < dim_; ++i)
      if (x(i) != 0.0) out += x(i) * ad_basis_[static_cast<std::size_t>(i)];
    return out;
  }

  Element bracket(const Element& x, const Element& y) const {
    check(y);
    return ad(x) * y;
  }

  double pair(const Element& x, const Element& y) const {
    check(x);
    check(y);
    return x.dot(gram_ * y);
  }

  double norm(const Element& x) const { return std::sqrt(std::max(0.0, pair(x, x))); }

  /// Image in the defining representation.
  CMatrix to_matrix(const Element& x) const {
    check(x);
    CMatrix out = CMatrix::Zero(m_, m_);
    for (int a = 0; a < dim_; ++a) out += x(a) * basis_[static_cast<std::size_t>(a)];
    return out;
  }

  /// Coordinates of an anti-Hermitian traceless matrix. The basis is
  /// orthogonal for the trace form, so each coordinate is one trace.
  Element from_matrix(const CMatrix& mat) const {
    Element out(dim_);
    for (int a = 0; a < dim_; ++a)
      out(a) = (mat * basis_[static_cast<std::size_t>(a)]).trace().real() / trace_norms_(a);
    return out;
  }

  /// Ad_{exp(y)} x, by conjugation in the defining representation.
  Element adjoint_action(const Element& y, const Element& x) const {
    const CMatrix ym = to_matrix(y);
    return from_matrix(expm(ym) * to_matrix(x) * expm(-ym));
  }

  /// Degree of the alpha-th basic invariant (alpha = 1..rank).
  int invariant_degree(int alpha) const {
    check_alpha(alpha);
    return alpha + 1;
  }

  /// f^alpha(x) = tr(X^d) for X = rho(x), d = alpha + 1: the real part for
  /// even d and the imaginary part for odd d (tr X^d is real, respectively
  /// imaginary, on anti-Hermitian X).
  double invariant(int alpha, const Element& x) const {
    const int d = invariant_degree(alpha);
    const CMatrix xm = to_matrix(x);
    CMatrix p = xm;
    for (int k = 1; k < d; ++k) p = p * xm;
    return real_part(d, p.trace());
  }

  /// Gradient of f^alpha with respect to <.,.>: G^{-1} w with
  /// w_b = d * tr(X^{d-1} e_b), taking the same real/imaginary part as f.
  Element invariant_gradient(int alpha, const Element& x) const {
    const int d = invariant_degree(alpha);
    const CMatrix xm = to_matrix(x);
    CMatrix p = CMatrix::Identity(m_, m_);
    for (int k = 1; k < d; ++k) p = p * xm;
    Vector w(dim_);
    for (int b = 0; b < dim_; ++b)
      w(b) = d * real_part(d, (p * basis_[static_cast<std::size_t>(b)]).trace());
    return gram_inv_ * w;
  }

  /// Dimension of the centralizer of x, via the numerical rank of ad_x.
  int isotropy_dim(const Element& x, double rel = kRankRel) const {
    return dim_ - numerical_rank(ad(x), rel).rank;
  }

 private:
  explicit LieAlgebra(int m) : family_("su"), m_(m), dim_(m * m - 1) {
    const Complex half_i(0.0, -0.5);
    auto push = [&](const CMatrix& lambda) { basis_.push_back(half_i * lambda); };
    for (int j = 0; j < m; ++j) {
      for (int k = j + 1; k < m; ++k) {
        CMatrix sym = CMatrix::Zero(m, m);
        sym(j, k) = 1.0;
        sym(k, j) = 1.0;
        push(sym);
        CMatrix asym = CMatrix::Zero(m, m);
        asym(j, k) = Complex(0.0, -1.0);
        asym(k, j) = Complex(0.0, 1.0);
        push(asym);
      }
    }
    for (int l = 1; l < m; ++l) {
      CMatrix diag = CMatrix::Zero(m, m);
      const double c = std::sqrt(2.0 / (l * (l + 1.0)));
      for (int j = 0; j < l; ++j) diag(j, j) = c;
      diag(l, l) = -c * l;
      push(diag);
    }

    trace_norms_.resize(dim_);
    for (int a = 0; a < dim_; ++a) {
      const auto& b = basis_[static_cast<std::size_t>(a)];
      trace_norms_(a) = (b * b).trace().real();
    }

    ad_basis_.assign(static_cast<std::size_t>(dim_), Matrix::Zero(dim_, dim_));
    for (int i = 0; i < dim_; ++i) {
      for (int j = 0; j < dim_; ++j) {
        const auto& bi = basis_[static_cast<std::size_t>(i)];
        const auto& bj = basis_[static_cast<std::size_t>(j)];
        ad_basis_[static_cast<std::size_t>(i)].col(j) = from_matrix(bi * bj - bj * bi);
      }
    }

    gram_ = Matrix::Zero(dim_, dim_);
    for (int a = 0; a < dim_; ++a)
      for (int b = 0; b < dim_; ++b)
        gram_(a, b) = -(ad_basis_[static_cast<std::size_t>(a)] * ad_basis_[static_cast<std::size_t>(b)]).trace();
    gram_inv_ = gram_.inverse();
  }

  void check_alpha(int alpha) const {
    if (alpha < 1 || alpha > rank())
      throw UsageError("invariant index " + std::to_string(alpha) + " outside 1.." + std::to_string(rank()));
  }

  static double real_part(int degree, Complex z) { return degree % 2 == 0 ? z.real() : z.imag(); }

  std::string family_;
  int m_;
  int dim_;
  std::vector<CMatrix> basis_;
  Vector trace_norms_;
  std::vector<Matrix> ad_basis_;
  Matrix gram_;
  Matrix gram_inv_;
};

using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

/// splitmix64 step; used to derive independent per-trial seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic Gaussian vector of length `size`, standard deviation `scale`.
inline Vector gaussian_vector(std::uint64_t seed, Eigen::Index size, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, scale);
  Vector out(size);
  for (Eigen::Index k = 0; k < size; ++k) out(k) = dist(rng);
  return out;
}

inline Element random_element(const LieAlgebra& algebra, std::uint64_t seed, double scale = 1.0) {
  if (!(scale > 0.0)) throw UsageError("random_element: scale must be positive");
  return gaussian_vector(seed, algebra.dim(), scale);
}

}  // namespace flagshift

#endif
