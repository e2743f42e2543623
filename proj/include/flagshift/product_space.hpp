#ifndef FLAGSHIFT_PRODUCT_SPACE_HPP
#define FLAGSHIFT_PRODUCT_SPACE_HPP

#include "flagshift/errors.hpp"
#include "flagshift/lie_algebra.hpp"
#include "flagshift/linalg.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace flagshift {

/// An element (x_1, ..., x_n) of g = k^n, stored as a dim k x n matrix whose
/// column i is the block x_{i+1}. Points of h and v are ProductElements too.
struct ProductElement {
  Matrix blocks;

  int n() const { return static_cast<int>(blocks.cols()); }
  auto block(int i) { return blocks.col(i); }
  auto block(int i) const { return blocks.col(i); }

  /// Concatenated coordinates (x_1; ...; x_n).
  Vector flat() const { return Eigen::Map<const Vector>(blocks.data(), blocks.size()); }

  ProductElement& operator+=(const ProductElement& o) {
    blocks += o.blocks;
    return *this;
  }
  ProductElement& operator-=(const ProductElement& o) {
    blocks -= o.blocks;
    return *this;
  }
  ProductElement& operator*=(double s) {
    blocks *= s;
    return *this;
  }
  friend ProductElement operator+(ProductElement a, const ProductElement& b) { return a += b; }
  friend ProductElement operator-(ProductElement a, const ProductElement& b) { return a -= b; }
  friend ProductElement operator*(double s, ProductElement a) { return a *= s; }
};

/// A unit direction nu in R^n labelling the module k_nu = {(nu_1 xi, ..., nu_n xi)}.
struct ModuleDirection {
  Vector nu;
};

/// Unit vector nu^j = (1, ..., 1, -j, 0, ..., 0) / sqrt(j^2 + j), j = 1..n-1.
/// The family nu^1..nu^{n-1} is an orthonormal basis of the hyperplane
/// orthogonal to (1, ..., 1).
inline ModuleDirection module_direction(int j, int n) {
  if (j < 1 || j > n - 1)
    throw UsageError("module index " + std::to_string(j) + " outside 1.." + std::to_string(n - 1));
  Vector nu = Vector::Zero(n);
  nu.head(j).setOnes();
  nu(j) = -static_cast<double>(j);
  nu /= std::sqrt(static_cast<double>(j) * j + j);
  return {nu};
}

inline ModuleDirection diagonal_direction(int n) { return {Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)))}; }

/// Block-diagonal isotropy data of a point of g.
struct ProductIsotropy {
  std::vector<int> block_dims;  // dim k_{x_i}
  int diagonal_dim = 0;         // dim h_x = dim of the intersection of the k_{x_i}
};

/// g = k^n with the diagonal subalgebra h and its orthogonal complement v.
///
/// n = 1 is accepted and stands for k itself; h and v are then k and {0}.
class ProductSpace {
 public:
  ProductSpace(AlgebraPtr base, int n) : base_(std::move(base)), n_(n) {
    if (!base_) throw UsageError("ProductSpace requires an algebra");
    if (n < 1) throw ConfigError("number of factors must be positive, got " + std::to_string(n));
  }

  const LieAlgebra& base() const { return *base_; }
  const AlgebraPtr& base_ptr() const { return base_; }
  int n() const { return n_; }
  int d() const { return base_->dim(); }
  int dim_g() const { return n_ * d(); }
  int dim_h() const { return d(); }
  int dim_v() const { return (n_ - 1) * d(); }

  ProductElement zero() const { return {Matrix::Zero(d(), n_)}; }

  ProductElement from_blocks(const std::vector<Element>& blocks) const {
    if (static_cast<int>(blocks.size()) != n_)
      throw UsageError("expected " + std::to_string(n_) + " blocks, got " + std::to_string(blocks.size()));
    ProductElement out = zero();
    for (int i = 0; i < n_; ++i) {
      base_->check(blocks[static_cast<std::size_t>(i)]);
      out.block(i) = blocks[static_cast<std::size_t>(i)];
    }
    return out;
  }

  ProductElement from_flat(const Vector& flat) const {
    if (flat.size() != dim_g()) throw UsageError("flat vector has wrong length");
    return {Eigen::Map<const Matrix>(flat.data(), d(), n_)};
  }

  void check(const ProductElement& x) const {
    if (x.blocks.rows() != d() || x.blocks.cols() != n_)
      throw UsageError("product element shape " + std::to_string(x.blocks.rows()) + "x" +
                       std::to_string(x.blocks.cols()) + " does not match " + base_->name() + "^" +
                       std::to_string(n_));
  }

  /// x_i for 0-based i.
  Element proj_factor(int i, const ProductElement& x) const {
    check(x);
    if (i < 0 || i >= n_) throw UsageError("factor index " + std::to_string(i) + " out of range");
    return x.block(i);
  }

  /// mu(x) = x_1 + ... + x_n.
  Element momentum(const ProductElement& x) const {
    check(x);
    return x.blocks.rowwise().sum();
  }

  ProductElement proj_h(const ProductElement& x) const {
    const Element avg = momentum(x) / static_cast<double>(n_);
    return {avg.replicate(1, n_)};
  }

  ProductElement proj_v(const ProductElement& x) const { return x - proj_h(x); }

  /// Orthogonal projection onto k_nu: (nu_1 s, ..., nu_n s) with s = sum nu_i x_i.
  ProductElement proj_module(const ModuleDirection& dir, const ProductElement& x) const {
    check(x);
    if (dir.nu.size() != n_) throw UsageError("module direction has wrong length");
    const Element s = x.blocks * dir.nu;
    return {s * dir.nu.transpose()};
  }

  double pair_g(const ProductElement& x, const ProductElement& y) const {
    check(x);
    check(y);
    return (x.blocks.cwiseProduct(base_->gram() * y.blocks)).sum();
  }

  double norm_g(const ProductElement& x) const { return std::sqrt(std::max(0.0, pair_g(x, x))); }

  bool in_v(const ProductElement& x, double tol = 1e-10) const {
    return base_->norm(momentum(x)) <= tol * (1.0 + norm_g(x));
  }

  /// Blockwise bracket ([x_1, y_1], ..., [x_n, y_n]).
  ProductElement bracket(const ProductElement& x, const ProductElement& y) const {
    check(x);
    check(y);
    ProductElement out = zero();
    for (int i = 0; i < n_; ++i) out.block(i) = base_->bracket(x.block(i), y.block(i));
    return out;
  }

  /// Ad_h x for the diagonal h = (exp y, ..., exp y).
  ProductElement diagonal_adjoint_action(const Element& y, const ProductElement& x) const {
    check(x);
    const CMatrix ym = base_->to_matrix(y);
    const CMatrix g = expm(ym);
    const CMatrix ginv = expm(-ym);
    ProductElement out = zero();
    for (int i = 0; i < n_; ++i) out.block(i) = base_->from_matrix(g * base_->to_matrix(x.block(i)) * ginv);
    return out;
  }

  int isotropy_dim(const Element& x, double rel = kRankRel) const { return base_->isotropy_dim(x, rel); }

  /// Per-block centralizer dimensions and dim h_x (kernel of the stacked
  /// ad_{x_i}, i.e. the common centralizer).
  ProductIsotropy product_isotropy_dims(const ProductElement& x, double rel = kRankRel) const {
    check(x);
    ProductIsotropy out;
    Matrix stacked(d() * n_, d());
    for (int i = 0; i < n_; ++i) {
      const Matrix ad = base_->ad(x.block(i));
      out.block_dims.push_back(d() - numerical_rank(ad, rel).rank);
      stacked.middleRows(i * d(), d()) = ad;
    }
    out.diagonal_dim = d() - numerical_rank(stacked, rel).rank;
    return out;
  }

  ProductElement random_element(std::uint64_t seed, double scale = 1.0) const {
    if (!(scale > 0.0)) throw UsageError("random_element: scale must be positive");
    return from_flat(gaussian_vector(seed, dim_g(), scale));
  }

  /// Random point of v, obtained by projecting a Gaussian sample.
  ProductElement random_v_element(std::uint64_t seed, double scale = 1.0) const {
    return proj_v(random_element(seed, scale));
  }

  /// Embeds an element of k into block i (0-based).
  ProductElement embed(int i, const Element& x) const {
    ProductElement out = zero();
    out.block(i) = x;
    return out;
  }

  /// (x, ..., x).
  ProductElement diagonal(const Element& x) const { return {x.replicate(1, n_)}; }

 private:
  AlgebraPtr base_;
  int n_;
};

}  // namespace flagshift

#endif
