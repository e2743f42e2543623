#ifndef FLAGSHIFT_FAMILIES_HPP
#define FLAGSHIFT_FAMILIES_HPP

#include "flagshift/errors.hpp"
#include "flagshift/lie_algebra.hpp"
#include "flagshift/product_space.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace flagshift {

enum class Domain { g, v };

inline const char* to_string(Domain d) { return d == Domain::g ? "g" : "v"; }

/// A scalar function on g (or on v) with its <.,.>_g-gradient.
///
/// Members on domain v return gradients projected onto v.
struct FamilyMember {
  std::string id;
  Domain domain = Domain::g;
  std::function<double(const ProductElement&)> eval;
  std::function<ProductElement(const ProductElement&)> grad;
};

struct PolynomialFamily {
  std::string name;
  Domain domain = Domain::g;
  std::vector<FamilyMember> members;
  std::vector<std::string> warnings;

  std::size_t size() const { return members.size(); }
  const FamilyMember& operator[](std::size_t k) const { return members[k]; }
};

namespace detail {

/// Inverse of the Vandermonde matrix V_{jk} = j^k on nodes t = 0..deg.
/// Row k of the inverse maps node values to the t^k coefficient.
inline const Matrix& vandermonde_inverse(int deg) {
  static std::map<int, Matrix> cache;
  static std::mutex guard;
  std::lock_guard<std::mutex> lock(guard);
  auto it = cache.find(deg);
  if (it != cache.end()) return it->second;
  Matrix v(deg + 1, deg + 1);
  for (int j = 0; j <= deg; ++j)
    for (int k = 0; k <= deg; ++k) v(j, k) = std::pow(static_cast<double>(j), k);
  return cache.emplace(deg, v.fullPivLu().inverse()).first->second;
}

}  // namespace detail

/// The polynomial t -> f^alpha(sum_i (base_i + t slope_i) x_i + t shift).
///
/// Every family here is a set of t-coefficients (or of fixed-weight
/// evaluations) of such a pencil. Coefficients are extracted by evaluating at
/// t = 0..deg and solving the Vandermonde system; the result is exact for the
/// polynomial in t up to round-off.
class InvariantPencil {
 public:
  InvariantPencil(std::shared_ptr<const ProductSpace> space, int alpha, Vector base, Vector slope, Element shift)
      : space_(std::move(space)), alpha_(alpha), base_(std::move(base)), slope_(std::move(slope)),
        shift_(std::move(shift)) {
    const int n = space_->n();
    if (base_.size() != n || slope_.size() != n) throw UsageError("pencil weights must have length n");
    if (shift_.size() == 0) shift_ = space_->base().zero();
    space_->base().check(shift_);
    degree_ = space_->base().invariant_degree(alpha_);
  }

  int degree() const { return degree_; }
  int alpha() const { return alpha_; }

  Element argument(const ProductElement& x, double t) const {
    return x.blocks * (base_ + t * slope_) + t * shift_;
  }

  double value(const ProductElement& x, double t) const { return space_->base().invariant(alpha_, argument(x, t)); }

  /// Gradient of x -> value(x, t): block i is (base_i + t slope_i) grad f(argument).
  ProductElement gradient(const ProductElement& x, double t) const {
    const Element g = space_->base().invariant_gradient(alpha_, argument(x, t));
    return {g * (base_ + t * slope_).transpose()};
  }

  /// Coefficients c_0..c_deg of value(x, t) = sum_k c_k t^k.
  Vector coefficients(const ProductElement& x) const {
    Vector nodes(degree_ + 1);
    for (int j = 0; j <= degree_; ++j) nodes(j) = value(x, j);
    return detail::vandermonde_inverse(degree_) * nodes;
  }

  double coefficient(int k, const ProductElement& x) const {
    check_k(k);
    const Matrix& vinv = detail::vandermonde_inverse(degree_);
    double out = 0.0;
    for (int j = 0; j <= degree_; ++j)
      if (vinv(k, j) != 0.0) out += vinv(k, j) * value(x, j);
    return out;
  }

  ProductElement coefficient_gradient(int k, const ProductElement& x) const {
    check_k(k);
    const Matrix& vinv = detail::vandermonde_inverse(degree_);
    ProductElement out = space_->zero();
    for (int j = 0; j <= degree_; ++j)
      if (vinv(k, j) != 0.0) out += vinv(k, j) * gradient(x, j);
    return out;
  }

 private:
  void check_k(int k) const {
    if (k < 0 || k > degree_) throw UsageError("coefficient index outside 0..deg");
  }

  std::shared_ptr<const ProductSpace> space_;
  int alpha_;
  Vector base_;
  Vector slope_;
  Element shift_;
  int degree_ = 0;
};

/// Member given by the t^k coefficient of a pencil.
inline FamilyMember pencil_coefficient_member(std::string id, std::shared_ptr<const InvariantPencil> pencil, int k) {
  FamilyMember m;
  m.id = std::move(id);
  m.domain = Domain::g;
  m.eval = [pencil, k](const ProductElement& x) { return pencil->coefficient(k, x); };
  m.grad = [pencil, k](const ProductElement& x) { return pencil->coefficient_gradient(k, x); };
  return m;
}

/// Member x -> f^alpha(sum_i w_i x_i).
inline FamilyMember weighted_invariant_member(std::string id, std::shared_ptr<const ProductSpace> space, int alpha,
                                              Vector weights) {
  space->base().invariant_degree(alpha);
  if (weights.size() != space->n()) throw UsageError("weights must have length n");
  FamilyMember m;
  m.id = std::move(id);
  m.domain = Domain::g;
  m.eval = [space, alpha, weights](const ProductElement& x) {
    return space->base().invariant(alpha, Element(x.blocks * weights));
  };
  m.grad = [space, alpha, weights](const ProductElement& x) {
    const Element g = space->base().invariant_gradient(alpha, Element(x.blocks * weights));
    return ProductElement{g * weights.transpose()};
  };
  return m;
}

inline std::shared_ptr<const ProductSpace> share(const ProductSpace& space) {
  return std::make_shared<const ProductSpace>(space);
}

/// Casimirs f^alpha_i = f^alpha o pr_{k_i}: n * rank members.
inline PolynomialFamily casimir_family(const ProductSpace& space) {
  auto sp = share(space);
  PolynomialFamily fam{"Z", Domain::g, {}, {}};
  for (int i = 0; i < space.n(); ++i) {
    for (int alpha = 1; alpha <= space.base().rank(); ++alpha) {
      Vector w = Vector::Zero(space.n());
      w(i) = 1.0;
      fam.members.push_back(weighted_invariant_member(
          "Z[i=" + std::to_string(i + 1) + ";alpha=" + std::to_string(alpha) + "]", sp, alpha, w));
    }
  }
  return fam;
}

/// Flag-shift family B = B_1 + ... + B_{n-1} + Z: the t-coefficients
/// f^alpha_{i,k} of f^alpha(x_1 + ... + x_i + t x_{i+1}), k = 0..deg, plus
/// all Casimirs.
inline PolynomialFamily flag_shift_family(const ProductSpace& space) {
  if (space.n() < 2) throw ConfigError("flag_shift_family requires n >= 2");
  auto sp = share(space);
  PolynomialFamily fam{"B", Domain::g, {}, {}};
  for (int i = 1; i <= space.n() - 1; ++i) {
    Vector base = Vector::Zero(space.n());
    base.head(i).setOnes();
    Vector slope = Vector::Zero(space.n());
    slope(i) = 1.0;
    for (int alpha = 1; alpha <= space.base().rank(); ++alpha) {
      auto pencil = std::make_shared<const InvariantPencil>(sp, alpha, base, slope, Element());
      for (int k = 0; k <= pencil->degree(); ++k)
        fam.members.push_back(pencil_coefficient_member(
            "B[i=" + std::to_string(i) + ";alpha=" + std::to_string(alpha) + ";k=" + std::to_string(k) + "]",
            pencil, k));
    }
  }
  auto z = casimir_family(space);
  for (auto& m : z.members) fam.members.push_back(std::move(m));
  return fam;
}

/// Argument-shift coefficients f^alpha_{a,k} of f^alpha(sum_i w_i x_i + t a).
///
/// With w = e_j this is the Mishchenko-Fomenko family on factor j; with
/// w = (1, ..., 1) it is the shift family pulled back by mu.
inline PolynomialFamily shift_family(const ProductSpace& space, const Element& a, const Vector& weights,
                                     std::string name) {
  space.base().check(a);
  auto sp = share(space);
  PolynomialFamily fam{std::move(name), Domain::g, {}, {}};
  const int iso = space.isotropy_dim(a);
  if (iso != space.base().rank()) {
    std::ostringstream msg;
    msg << "shift vector is not regular (isotropy dim " << iso << " != rank " << space.base().rank()
        << "); commutativity holds but completeness may fail";
    fam.warnings.push_back(msg.str());
  }
  for (int alpha = 1; alpha <= space.base().rank(); ++alpha) {
    auto pencil = std::make_shared<const InvariantPencil>(sp, alpha, weights, Vector::Zero(space.n()), a);
    for (int k = 0; k <= pencil->degree(); ++k)
      fam.members.push_back(pencil_coefficient_member(
          fam.name + "[alpha=" + std::to_string(alpha) + ";k=" + std::to_string(k) + "]", pencil, k));
  }
  return fam;
}

/// Mishchenko-Fomenko family A on k itself (a one-factor space).
inline PolynomialFamily mf_shift_family(const Element& a, const AlgebraPtr& algebra) {
  return shift_family(ProductSpace(algebra, 1), a, Vector::Ones(1), "A");
}

/// Shift family of the momentum: coefficients of f^alpha(mu(x) + t a).
inline PolynomialFamily momentum_shift_family(const ProductSpace& space, const Element& a) {
  return shift_family(space, a, Vector::Ones(space.n()), "muA");
}

/// Argument shifts on every factor: coefficients of f^alpha(x_i + t a_i).
inline PolynomialFamily block_shift_family(const ProductSpace& space, const std::vector<Element>& shifts) {
  if (static_cast<int>(shifts.size()) != space.n()) throw UsageError("need one shift vector per factor");
  PolynomialFamily fam{"Ablocks", Domain::g, {}, {}};
  for (int i = 0; i < space.n(); ++i) {
    Vector w = Vector::Zero(space.n());
    w(i) = 1.0;
    auto part = shift_family(space, shifts[static_cast<std::size_t>(i)], w, "A" + std::to_string(i + 1));
    for (auto& m : part.members) fam.members.push_back(std::move(m));
    for (auto& w2 : part.warnings) fam.warnings.push_back(std::move(w2));
  }
  return fam;
}

/// Seeded regular shift vector: Gaussian samples, resampled up to 5 times
/// until isotropy_dim == rank.
inline Element generic_shift(const LieAlgebra& algebra, std::uint64_t seed) {
  for (int attempt = 0; attempt <= 5; ++attempt) {
    Element a = random_element(algebra, mix_seed(seed, 1000 + static_cast<std::uint64_t>(attempt)));
    if (algebra.isotropy_dim(a) == algebra.rank()) return a;
  }
  throw GenericityError("no regular shift vector found after 5 resamples");
}

/// Linear coordinates <mu(x), e_a>; gradient (e_a, ..., e_a).
inline PolynomialFamily momentum_coordinates(const ProductSpace& space) {
  auto sp = share(space);
  PolynomialFamily fam{"mu", Domain::g, {}, {}};
  for (int a = 0; a < space.d(); ++a) {
    FamilyMember m;
    m.id = "mu[" + std::to_string(a + 1) + "]";
    m.eval = [sp, a](const ProductElement& x) { return sp->base().pair(sp->momentum(x), sp->base().unit(a)); };
    m.grad = [sp, a](const ProductElement& x) {
      sp->check(x);
      return sp->diagonal(sp->base().unit(a));
    };
    fam.members.push_back(std::move(m));
  }
  return fam;
}

/// Linear coordinates <x_i, e_a> on one factor (0-based i). Not commutative;
/// used as a control.
inline PolynomialFamily coordinate_family(const ProductSpace& space, int i) {
  auto sp = share(space);
  PolynomialFamily fam{"coord" + std::to_string(i + 1), Domain::g, {}, {}};
  for (int a = 0; a < space.d(); ++a) {
    FamilyMember m;
    m.id = "x" + std::to_string(i + 1) + "[" + std::to_string(a + 1) + "]";
    m.eval = [sp, i, a](const ProductElement& x) { return sp->base().pair(sp->proj_factor(i, x), sp->base().unit(a)); };
    m.grad = [sp, i, a](const ProductElement& x) {
      sp->check(x);
      return sp->embed(i, sp->base().unit(a));
    };
    fam.members.push_back(std::move(m));
  }
  return fam;
}

/// Restriction to v: same values, gradients projected with proj_v. The
/// restriction of B is named F.
inline PolynomialFamily restrict_family(const ProductSpace& space, const PolynomialFamily& fam) {
  if (fam.domain != Domain::g) throw UsageError("restrict_family expects a family on g");
  auto sp = share(space);
  PolynomialFamily out{fam.name == "B" ? std::string("F") : fam.name + "|v", Domain::v, {}, fam.warnings};
  for (const auto& m : fam.members) {
    FamilyMember r;
    r.id = m.id + "|v";
    r.domain = Domain::v;
    r.eval = m.eval;
    r.grad = [sp, g = m.grad](const ProductElement& x) { return sp->proj_v(g(x)); };
    out.members.push_back(std::move(r));
  }
  return out;
}

/// Spectral node (t1, t2) of the Gaudin family.
struct SpectralNode {
  double t1 = 1.0;
  double t2 = 0.0;
};

inline std::vector<SpectralNode> default_gaudin_grid() { return {{1, 0}, {1, 0.5}, {1, 1}, {1, 2}, {1, 3}}; }

/// Default grid extended by nodes (1, 4), (1, 5), ... up to `count` nodes.
inline std::vector<SpectralNode> gaudin_grid(std::size_t count) {
  auto grid = default_gaudin_grid();
  for (double s = 4.0; grid.size() < count; s += 1.0) grid.push_back({1.0, s});
  return grid;
}

/// Gaudin family P: f^alpha(x_1/(t1 + a_1 t2) + ... + x_n/(t1 + a_n t2)) for
/// every grid node and every alpha.
inline PolynomialFamily gaudin_family(const ProductSpace& space, const Vector& a,
                                      const std::vector<SpectralNode>& grid) {
  if (a.size() != space.n()) throw ConfigError("gaudin weights must have length n");
  if (grid.empty()) throw ConfigError("gaudin grid is empty");
  auto sp = share(space);
  PolynomialFamily fam{"P", Domain::g, {}, {}};
  for (std::size_t node = 0; node < grid.size(); ++node) {
    const auto [t1, t2] = grid[node];
    std::ostringstream tag;
    tag << "t1=" << t1 << ";t2=" << t2;
    if (t1 * t1 + t2 * t2 == 0.0) throw ConfigError("gaudin grid node (" + tag.str() + ") has t1^2 + t2^2 = 0");
    Vector w(space.n());
    for (int i = 0; i < space.n(); ++i) {
      const double den = t1 + a(i) * t2;
      if (std::abs(den) < 1e-12)
        throw ConfigError("gaudin grid node (" + tag.str() + ") hits the pole t1 + a_" + std::to_string(i + 1) +
                          " t2 = 0");
      w(i) = 1.0 / den;
    }
    for (int alpha = 1; alpha <= space.base().rank(); ++alpha)
      fam.members.push_back(
          weighted_invariant_member("P[" + tag.str() + ";alpha=" + std::to_string(alpha) + "]", sp, alpha, w));
  }
  return fam;
}

/// Pointwise product of two members (Leibniz checks).
inline FamilyMember product_member(const FamilyMember& f, const FamilyMember& g) {
  FamilyMember m;
  m.id = "(" + f.id + ")*(" + g.id + ")";
  m.domain = f.domain;
  m.eval = [fe = f.eval, ge = g.eval](const ProductElement& x) { return fe(x) * ge(x); };
  m.grad = [f, g](const ProductElement& x) { return f.eval(x) * g.grad(x) + g.eval(x) * f.grad(x); };
  return m;
}

inline PolynomialFamily concat(std::string name, std::initializer_list<const PolynomialFamily*> parts) {
  PolynomialFamily out{std::move(name), Domain::g, {}, {}};
  bool first = true;
  for (const auto* p : parts) {
    if (first) out.domain = p->domain;
    if (p->domain != out.domain) throw UsageError("concat: mixed domains");
    first = false;
    out.members.insert(out.members.end(), p->members.begin(), p->members.end());
    out.warnings.insert(out.warnings.end(), p->warnings.begin(), p->warnings.end());
  }
  return out;
}

/// Max relative deviation between the analytic gradient and central finite
/// differences of step `step` along every coordinate direction.
inline double member_grad_check(const ProductSpace& space, const FamilyMember& member, const ProductElement& x,
                                double step = 1e-5) {
  if (!(step > 0.0)) throw UsageError("member_grad_check: step must be positive");
  const Vector flat = x.flat();
  Vector dirderiv(flat.size());
  for (Eigen::Index j = 0; j < flat.size(); ++j) {
    Vector plus = flat;
    Vector minus = flat;
    plus(j) += step;
    minus(j) -= step;
    dirderiv(j) = (member.eval(space.from_flat(plus)) - member.eval(space.from_flat(minus))) / (2.0 * step);
  }
  // Coordinate derivatives are G-weighted gradient coordinates.
  ProductElement fd = space.from_flat(dirderiv);
  fd.blocks = space.base().gram_inverse() * fd.blocks;
  if (member.domain == Domain::v) fd = space.proj_v(fd);
  const Vector analytic = member.grad(x).flat();
  // Floor |f(x)| / max(1, |x|) so members constant in x do not divide round-off by itself.
  const double floor = std::abs(member.eval(x)) / std::max(1.0, flat.lpNorm<Eigen::Infinity>());
  const double scale = std::max({analytic.lpNorm<Eigen::Infinity>(), fd.flat().lpNorm<Eigen::Infinity>(), floor});
  if (scale < 1e-300) return 0.0;
  return (analytic - fd.flat()).lpNorm<Eigen::Infinity>() / scale;
}

}  // namespace flagshift

#endif
