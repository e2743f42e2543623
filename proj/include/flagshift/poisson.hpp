#ifndef FLAGSHIFT_POISSON_HPP
#define FLAGSHIFT_POISSON_HPP

#include "flagshift/errors.hpp"
#include "flagshift/families.hpp"
#include "flagshift/linalg.hpp"
#include "flagshift/product_space.hpp"

#include <cmath>
#include <vector>

namespace flagshift {

/// Weights a_i of the bivector a_1 lambda_{x_1} x ... x a_n lambda_{x_n}.
struct PencilWeights {
  Vector a;

  static PencilWeights ones(int n) { return {Vector::Ones(n)}; }
};

inline void check_weights(const ProductSpace& space, const PencilWeights& w) {
  if (w.a.size() != space.n()) throw UsageError("pencil weights must have length n");
  for (Eigen::Index i = 0; i < w.a.size(); ++i)
    if (w.a(i) == 0.0) throw UsageError("pencil weight a_" + std::to_string(i + 1) + " is zero");
}

/// -sum_i a_i <x_i, [xi_i, eta_i]>.
inline double bivector_value(const ProductSpace& space, const ProductElement& x, const ProductElement& xi,
                             const ProductElement& eta, const Vector& weights) {
  const auto& k = space.base();
  double out = 0.0;
  for (int i = 0; i < space.n(); ++i) out -= weights(i) * k.pair(x.block(i), k.bracket(xi.block(i), eta.block(i)));
  return out;
}

inline double bivector_value(const ProductSpace& space, const ProductElement& x, const ProductElement& xi,
                             const ProductElement& eta) {
  return bivector_value(space, x, xi, eta, Vector::Ones(space.n()));
}

/// The bivector as a dim g x dim g matrix L with Lambda_x(xi, eta) = xi^T L eta
/// in flat coordinates.
inline Matrix bivector_matrix(const ProductSpace& space, const ProductElement& x, const Vector& weights) {
  space.check(x);
  const auto& k = space.base();
  const int d = space.d();
  Matrix out = Matrix::Zero(space.dim_g(), space.dim_g());
  for (int i = 0; i < space.n(); ++i) {
    // -<x_i, [e_a, e_b]> = -sum_c c[a][b][c] (G x_i)_c
    const Vector gx = k.gram() * Vector(x.block(i));
    auto blk = out.block(i * d, i * d, d, d);
    for (int a = 0; a < d; ++a) blk.row(a) = -(gx.transpose() * k.ad_basis(a));
    blk *= weights(i);
  }
  return out;
}

inline Matrix bivector_matrix(const ProductSpace& space, const ProductElement& x) {
  return bivector_matrix(space, x, Vector::Ones(space.n()));
}

/// Lie-Poisson bracket {f, g}(x) = -sum_i <x_i, [grad_i f, grad_i g]>.
inline double lp_bracket(const ProductSpace& space, const FamilyMember& f, const FamilyMember& g,
                         const ProductElement& x) {
  if (f.domain != Domain::g || g.domain != Domain::g) throw UsageError("lp_bracket expects members on g");
  return bivector_value(space, x, f.grad(x), g.grad(x));
}

/// Restricted bracket on v: -<x, [grad f, grad g]> with v-gradients.
inline double v_bracket(const ProductSpace& space, const FamilyMember& f, const FamilyMember& g,
                        const ProductElement& x) {
  if (f.domain != Domain::v || g.domain != Domain::v) throw UsageError("v_bracket expects members on v");
  if (!space.in_v(x)) throw UsageError("v_bracket evaluated at a point outside v");
  return bivector_value(space, x, f.grad(x), g.grad(x));
}

/// Bracket of the bivector a_1 lambda_{x_1} x ... x a_n lambda_{x_n}.
inline double pencil_bracket(const ProductSpace& space, const PencilWeights& w, const FamilyMember& f,
                             const FamilyMember& g, const ProductElement& x) {
  check_weights(space, w);
  return bivector_value(space, x, f.grad(x), g.grad(x), w.a);
}

/// Any of the brackets above, dispatched on the members' domain.
inline double bracket(const ProductSpace& space, const FamilyMember& f, const FamilyMember& g,
                      const ProductElement& x) {
  return f.domain == Domain::v ? v_bracket(space, f, g, x) : lp_bracket(space, f, g, x);
}

/// |{f, g}| / (|grad f| |grad g| |x|), zero when either gradient vanishes.
inline double normalized_bracket(const ProductSpace& space, const ProductElement& x, const ProductElement& gf,
                                 const ProductElement& gg, const Vector& weights) {
  const double scale = space.norm_g(gf) * space.norm_g(gg) * space.norm_g(x);
  if (scale == 0.0) return 0.0;
  return std::abs(bivector_value(space, x, gf, gg, weights)) / scale;
}

struct BivectorMatrix {
  ProductElement base_point;
  std::vector<ProductElement> generators;
  Matrix matrix;
};

/// M_ab = Lambda_x(xi_a, xi_b) on a list of generators.
inline BivectorMatrix bivector_on_span(const ProductSpace& space, const ProductElement& x,
                                       const std::vector<ProductElement>& generators) {
  if (generators.empty()) throw UsageError("bivector_on_span needs at least one generator");
  Matrix gen(space.dim_g(), static_cast<Eigen::Index>(generators.size()));
  for (std::size_t a = 0; a < generators.size(); ++a) gen.col(static_cast<Eigen::Index>(a)) = generators[a].flat();
  Matrix m = gen.transpose() * bivector_matrix(space, x) * gen;
  m = 0.5 * (m - m.transpose()).eval();
  return {x, generators, m};
}

/// Linear map xi -> (sum_i xi_i ; sum_i [x_i, xi_i]); its kernel is j_x.
inline Matrix j_constraint_matrix(const ProductSpace& space, const ProductElement& x) {
  const int d = space.d();
  Matrix c = Matrix::Zero(2 * d, space.dim_g());
  for (int i = 0; i < space.n(); ++i) {
    c.block(0, i * d, d, d).setIdentity();
    c.block(d, i * d, d, d) = space.base().ad(x.block(i));
  }
  return c;
}

/// Orthonormal basis of j_x = {eta in v : sum_i [x_i, eta_i] = 0}.
inline Matrix j_basis(const ProductSpace& space, const ProductElement& x, double rel = kRankRel,
                      RankInfo* info = nullptr) {
  return null_space(j_constraint_matrix(space, x), rel, 0.0, info);
}

/// Orthonormal basis of ([x, h]^perp) cap v: eta with sum_i eta_i = 0 and
/// <eta, ([x_1, e_b], ..., [x_n, e_b])>_g = 0 for every basis e_b.
inline Matrix j_basis_orthogonal_form(const ProductSpace& space, const ProductElement& x, double rel = kRankRel,
                                      RankInfo* info = nullptr) {
  const int d = space.d();
  Matrix c = Matrix::Zero(2 * d, space.dim_g());
  for (int i = 0; i < space.n(); ++i) c.block(0, i * d, d, d).setIdentity();
  for (int b = 0; b < d; ++b) {
    ProductElement dir = space.zero();
    for (int i = 0; i < space.n(); ++i) dir.block(i) = space.base().bracket(x.block(i), space.base().unit(b));
    dir.blocks = space.base().gram() * dir.blocks;
    c.row(d + b) = dir.flat().transpose();
  }
  return null_space(c, rel, 0.0, info);
}

/// Orthonormal basis of pr_v(k_{x_1} + ... + k_{x_n}).
inline Matrix projected_isotropy_basis(const ProductSpace& space, const ProductElement& x, double rel = kRankRel) {
  std::vector<Vector> cols;
  for (int i = 0; i < space.n(); ++i) {
    const Matrix ker = null_space(space.base().ad(x.block(i)), rel);
    for (Eigen::Index c = 0; c < ker.cols(); ++c) cols.push_back(space.proj_v(space.embed(i, ker.col(c))).flat());
  }
  Matrix m(space.dim_g(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) m.col(static_cast<Eigen::Index>(c)) = cols[c];
  return column_span(m, rel);
}

/// Kernel of the restricted bivector on j_x, computed two ways.
struct RestrictedKernel {
  int j_dim = 0;
  Matrix via_bivector;   // null space of M on j_x
  Matrix via_isotropy;   // pr_v of the centralizers
  double max_angle = 0.0;
  bool agree = false;
  bool borderline = false;
};

inline RestrictedKernel kernel_of_restricted_bivector(const ProductSpace& space, const ProductElement& x,
                                                      double rel = kRankRel, double angle_tol = 1e-6) {
  if (!space.in_v(x)) throw UsageError("kernel_of_restricted_bivector expects a point of v");
  RestrictedKernel out;
  RankInfo jinfo;
  const Matrix j = j_basis(space, x, rel, &jinfo);
  out.j_dim = static_cast<int>(j.cols());
  const Matrix l = bivector_matrix(space, x);
  const double scale = l.norm();
  Matrix m = j.transpose() * l * j;
  RankInfo minfo;
  const Matrix ker = null_space(m, rel, scale, &minfo);
  out.via_bivector = j * ker;
  out.via_isotropy = projected_isotropy_basis(space, x, rel);
  out.max_angle = max_principal_angle(out.via_bivector, out.via_isotropy);
  out.agree = out.via_bivector.cols() == out.via_isotropy.cols() && out.max_angle <= angle_tol;
  out.borderline = jinfo.borderline || minfo.borderline;
  return out;
}

}  // namespace flagshift

#endif
