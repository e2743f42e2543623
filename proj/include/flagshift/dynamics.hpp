#ifndef FLAGSHIFT_DYNAMICS_HPP
#define FLAGSHIFT_DYNAMICS_HPP

#include "flagshift/errors.hpp"
#include "flagshift/families.hpp"
#include "flagshift/product_space.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace flagshift {

enum class HamiltonianKind { normal, novi, gaudin, einstein, coordinate_square };

inline const char* to_string(HamiltonianKind k) {
  switch (k) {
    case HamiltonianKind::normal: return "normal";
    case HamiltonianKind::novi: return "novi";
    case HamiltonianKind::gaudin: return "gaudin";
    case HamiltonianKind::einstein: return "einstein";
    case HamiltonianKind::coordinate_square: return "coordinate_square";
  }
  return "?";
}

/// Einstein point p = n^{1/(n-1)}, q = p^{-(n-2)}.
struct EinsteinParameters {
  double p;
  double q;
};

inline EinsteinParameters einstein_parameters(int n) {
  if (n < 3) throw ConfigError("einstein parameters need n >= 3, got " + std::to_string(n));
  const double p = std::pow(static_cast<double>(n), 1.0 / (n - 1));
  return {p, std::pow(p, -(n - 2.0))};
}

/// A quadratic Hamiltonian on g = k^n together with its gradient.
///
///   normal            1/2 <x, x>
///   novi              sum_{i<n} 1/2 |s_i (x_1 + ... + x_i) + t_i x_{i+1}|^2
///   gaudin            1/2 |x_1/a_1 + ... + x_n/a_n|^2
///   einstein          closed form of the (p, q, s) metric on g
///   coordinate_square <x_1, e_1>^2, not Ad_H-invariant (control)
class HamiltonianSpec {
 public:
  static HamiltonianSpec normal(int n) {
    HamiltonianSpec h(HamiltonianKind::normal, n);
    return h;
  }

  static HamiltonianSpec novi(const Vector& s, const Vector& t) {
    if (s.size() != t.size() || s.size() < 1) throw ConfigError("novi: s and t need n-1 entries each");
    HamiltonianSpec h(HamiltonianKind::novi, static_cast<int>(s.size()) + 1);
    h.s_ = s;
    h.t_ = t;
    const double lam = h.novi_min_eigenvalue_on_v();
    if (!(lam > 1e-12))
      throw ConfigError("novi: parameters do not give a positive definite metric on v (min eigenvalue " +
                        std::to_string(lam) + ")");
    return h;
  }

  static HamiltonianSpec gaudin(const Vector& a) {
    if (a.size() < 2) throw ConfigError("gaudin: need at least two weights");
    for (Eigen::Index i = 0; i < a.size(); ++i)
      if (a(i) == 0.0) throw ConfigError("gaudin: weight a_" + std::to_string(i + 1) + " is zero");
    HamiltonianSpec h(HamiltonianKind::gaudin, static_cast<int>(a.size()));
    h.a_ = a;
    return h;
  }

  static HamiltonianSpec einstein(int n, double p, double q, double s) {
    if (n < 3) throw ConfigError("einstein metric needs n >= 3");
    if (!(p > 0.0 && q > 0.0 && s > 0.0)) throw ConfigError("einstein: p, q, s must be positive");
    HamiltonianSpec h(HamiltonianKind::einstein, n);
    h.p_ = p;
    h.q_ = q;
    h.se_ = s;
    const double nn = n;
    h.u_coef_ = s / nn - p / (nn - 1.0) + q / (nn * nn - nn);
    h.v_coef_ = s / nn - q / nn;
    return h;
  }

  static HamiltonianSpec coordinate_square(int n) { return HamiltonianSpec(HamiltonianKind::coordinate_square, n); }

  HamiltonianKind kind() const { return kind_; }
  int n() const { return n_; }
  const Vector& s() const { return s_; }
  const Vector& t() const { return t_; }
  const Vector& a() const { return a_; }
  double p() const { return p_; }
  double q() const { return q_; }
  double s_param() const { return se_; }
  double u_coef() const { return u_coef_; }
  double v_coef() const { return v_coef_; }

  /// Smallest eigenvalue of the novi block Hessian restricted to the
  /// hyperplane sum = 0, i.e. of h_{s,t} on v in Killing-orthonormal units.
  double novi_min_eigenvalue_on_v() const {
    Matrix hess = Matrix::Zero(n_, n_);
    for (int i = 0; i < n_ - 1; ++i) {
      Vector w = Vector::Zero(n_);
      w.head(i + 1).setConstant(s_(i));
      w(i + 1) = t_(i);
      hess += w * w.transpose();
    }
    Matrix basis(n_, n_ - 1);
    for (int j = 1; j < n_; ++j) basis.col(j - 1) = module_direction(j, n_).nu;
    const Matrix restricted = basis.transpose() * hess * basis;
    return Eigen::SelfAdjointEigenSolver<Matrix>(restricted).eigenvalues().minCoeff();
  }

  double value(const ProductSpace& space, const ProductElement& x) const {
    check(space, x);
    const auto& k = space.base();
    switch (kind_) {
      case HamiltonianKind::normal:
        return 0.5 * space.pair_g(x, x);
      case HamiltonianKind::novi: {
        double out = 0.0;
        Element partial = k.zero();
        for (int i = 0; i < n_ - 1; ++i) {
          partial += x.block(i);
          const Element y = s_(i) * partial + t_(i) * Element(x.block(i + 1));
          out += 0.5 * k.pair(y, y);
        }
        return out;
      }
      case HamiltonianKind::gaudin: {
        const Element w = x.blocks * a_.cwiseInverse();
        return 0.5 * k.pair(w, w);
      }
      case HamiltonianKind::einstein: {
        const double nn = n_;
        const Element mu = space.momentum(x);
        const Element xn = x.block(n_ - 1);
        double head = 0.0;
        for (int i = 0; i < n_ - 1; ++i) head += k.pair(x.block(i), x.block(i));
        return 0.5 * p_ * head + 0.5 * (q_ * nn / (nn - 1.0) - p_ / (nn - 1.0)) * k.pair(xn, xn) +
               0.5 * u_coef_ * k.pair(mu, mu) + (p_ - q_) / (nn - 1.0) * k.pair(mu, xn);
      }
      case HamiltonianKind::coordinate_square: {
        const double c = k.pair(x.block(0), k.unit(0));
        return c * c;
      }
    }
    return 0.0;
  }

  ProductElement gradient(const ProductSpace& space, const ProductElement& x) const {
    check(space, x);
    const auto& k = space.base();
    ProductElement g = space.zero();
    switch (kind_) {
      case HamiltonianKind::normal:
        return x;
      case HamiltonianKind::novi: {
        // x_j enters Y_i = s_i S_i + t_i x_{i+1} through S_i (i >= j) and as x_{i+1} (i = j - 1).
        Element partial = k.zero();
        for (int i = 0; i < n_ - 1; ++i) {
          partial += x.block(i);
          const Element y = s_(i) * partial + t_(i) * Element(x.block(i + 1));
          for (int j = 0; j <= i; ++j) g.block(j) += s_(i) * y;
          g.block(i + 1) += t_(i) * y;
        }
        return g;
      }
      case HamiltonianKind::gaudin: {
        const Element w = x.blocks * a_.cwiseInverse();
        for (int i = 0; i < n_; ++i) g.block(i) = w / a_(i);
        return g;
      }
      case HamiltonianKind::einstein: {
        const double nn = n_;
        const Element mu = space.momentum(x);
        const Element xn = x.block(n_ - 1);
        const double cross = (p_ - q_) / (nn - 1.0);
        for (int i = 0; i < n_ - 1; ++i) g.block(i) = p_ * Element(x.block(i)) + u_coef_ * mu + cross * xn;
        g.block(n_ - 1) = (q_ * nn / (nn - 1.0) - p_ / (nn - 1.0)) * xn + u_coef_ * mu + cross * (mu + xn);
        return g;
      }
      case HamiltonianKind::coordinate_square: {
        const double c = k.pair(x.block(0), k.unit(0));
        g.block(0) = 2.0 * c * k.unit(0);
        return g;
      }
    }
    return g;
  }

  /// The Hamiltonian as a family member on g.
  FamilyMember as_member(const ProductSpace& space) const {
    auto sp = share(space);
    FamilyMember m;
    m.id = "energy";
    m.eval = [sp, h = *this](const ProductElement& x) { return h.value(*sp, x); };
    m.grad = [sp, h = *this](const ProductElement& x) { return h.gradient(*sp, x); };
    return m;
  }

 private:
  HamiltonianSpec(HamiltonianKind kind, int n) : kind_(kind), n_(n) {}

  void check(const ProductSpace& space, const ProductElement& x) const {
    if (space.n() != n_)
      throw UsageError(std::string(to_string(kind_)) + " Hamiltonian built for n = " + std::to_string(n_) +
                       ", used with n = " + std::to_string(space.n()));
    space.check(x);
  }

  HamiltonianKind kind_;
  int n_;
  Vector s_, t_, a_;
  double p_ = 1.0, q_ = 1.0, se_ = 1.0;
  double u_coef_ = 0.0, v_coef_ = 0.0;
};

/// The (p, q, s) Hamiltonian evaluated from projections,
/// s/2 |pr_h x|^2 + p/2 |x - pr_h x - pr_{v_{n-1}} x|^2 + q/2 |pr_{v_{n-1}} x|^2.
inline double einstein_hamiltonian_projection_form(const ProductSpace& space, double p, double q, double s,
                                                   const ProductElement& x) {
  const ProductElement xh = space.proj_h(x);
  const ProductElement xlast = space.proj_module(module_direction(space.n() - 1, space.n()), x);
  const ProductElement rest = x - xh - xlast;
  return 0.5 * s * space.pair_g(xh, xh) + 0.5 * p * space.pair_g(rest, rest) + 0.5 * q * space.pair_g(xlast, xlast);
}

/// (projection form, closed form) of the (p, q, s) Hamiltonian.
inline std::pair<double, double> einstein_hamiltonian_two_ways(const ProductSpace& space, double p, double q,
                                                               double s, const ProductElement& x) {
  const auto h = HamiltonianSpec::einstein(space.n(), p, q, s);
  return {einstein_hamiltonian_projection_form(space, p, q, s, x), h.value(space, x)};
}

/// Euler field x_i' = [x_i, grad_{x_i} h].
inline ProductElement euler_field(const ProductSpace& space, const HamiltonianSpec& h, const ProductElement& x) {
  return space.bracket(x, h.gradient(space, x));
}

/// x_i' = sum_j [x_i, x_j] / (a_i a_j).
inline ProductElement gaudin_field(const ProductSpace& space, const Vector& a, const ProductElement& x) {
  space.check(x);
  if (a.size() != space.n()) throw UsageError("gaudin_field: weights must have length n");
  ProductElement out = space.zero();
  for (int i = 0; i < space.n(); ++i) {
    if (a(i) == 0.0) throw UsageError("gaudin_field: weight a_" + std::to_string(i + 1) + " is zero");
    for (int j = 0; j < space.n(); ++j)
      if (j != i) out.block(i) += space.base().bracket(x.block(i), x.block(j)) / (a(i) * a(j));
  }
  return out;
}

/// sum_i [grad_i h, x_i]; zero for Ad_H-invariant Hamiltonians.
inline Element ad_h_invariance_defect(const ProductSpace& space, const HamiltonianSpec& h, const ProductElement& x) {
  return space.momentum(space.bracket(h.gradient(space, x), x));
}

struct FlowSpec {
  HamiltonianSpec hamiltonian;
  ProductElement initial;
  double t_end = 10.0;
  double dt = 1e-3;
  int stride = 10;
  std::vector<FamilyMember> monitors;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<ProductElement> states;
  std::vector<std::string> monitor_ids;
  std::vector<std::vector<double>> monitor_series;  // [monitor][sample]
  std::vector<double> drift;                        // per monitor

  const ProductElement& final_state() const { return states.back(); }
};

/// Raised when the state stops being finite.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double last_time)
      : std::runtime_error(what), last_valid_time(last_time) {}
  double last_valid_time;
};

/// max |f(t) - f(0)| / (1 + |f(0)|).
inline double relative_drift(const std::vector<double>& series) {
  if (series.empty()) return 0.0;
  double worst = 0.0;
  for (double v : series) worst = std::max(worst, std::abs(v - series.front()));
  return worst / (1.0 + std::abs(series.front()));
}

/// Fixed-step classical RK4. States are recorded every `stride` steps and at
/// t_end; monitors are evaluated on the recorded states.
inline Trajectory integrate(const ProductSpace& space, const FlowSpec& flow) {
  if (!(flow.dt > 0.0) || !(flow.t_end > 0.0)) throw ConfigError("integrate: dt and t_end must be positive");
  if (flow.stride < 1) throw ConfigError("integrate: stride must be >= 1");
  space.check(flow.initial);
  const auto steps = static_cast<long long>(std::ceil(flow.t_end / flow.dt - 1e-9));
  const double h = flow.t_end / static_cast<double>(steps);

  Trajectory traj;
  for (const auto& m : flow.monitors) traj.monitor_ids.push_back(m.id);
  traj.monitor_series.resize(flow.monitors.size());
  auto record = [&](double t, const ProductElement& x) {
    traj.times.push_back(t);
    traj.states.push_back(x);
    for (std::size_t k = 0; k < flow.monitors.size(); ++k) traj.monitor_series[k].push_back(flow.monitors[k].eval(x));
  };

  auto field = [&](const ProductElement& x) { return euler_field(space, flow.hamiltonian, x); };
  ProductElement x = flow.initial;
  record(0.0, x);
  for (long long step = 1; step <= steps; ++step) {
    const ProductElement k1 = field(x);
    const ProductElement k2 = field(x + (0.5 * h) * k1);
    const ProductElement k3 = field(x + (0.5 * h) * k2);
    const ProductElement k4 = field(x + h * k3);
    ProductElement next = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!next.blocks.allFinite()) {
      std::ostringstream msg;
      msg << "non-finite state at step " << step << "; last valid time " << (step - 1) * h;
      throw IntegrationError(msg.str(), static_cast<double>(step - 1) * h);
    }
    x = std::move(next);
    if (step % flow.stride == 0 || step == steps) record(static_cast<double>(step) * h, x);
  }
  for (const auto& series : traj.monitor_series) traj.drift.push_back(relative_drift(series));
  return traj;
}

/// Max over the recorded states of |<mu(x(t)) - mu(x(0)), e_a>| over a.
inline double momentum_conservation_check(const ProductSpace& space, const Trajectory& traj) {
  double worst = 0.0;
  const Element mu0 = space.momentum(traj.states.front());
  for (const auto& x : traj.states) {
    const Element diff = space.momentum(x) - mu0;
    const Element coords = space.base().gram() * diff;
    worst = std::max(worst, coords.lpNorm<Eigen::Infinity>());
  }
  return worst;
}

/// Closed-form solution on v of the Einstein flow:
/// x_k(t) = Ad_{exp(t xi)} x_k(0) for k < n, x_n(t) = x_n(0), with
/// xi = (v - u)(x_1(0) + ... + x_{n-1}(0)).
inline ProductElement enr_closed_form(const ProductSpace& space, const HamiltonianSpec& h, const ProductElement& x0,
                                      double t) {
  if (h.kind() != HamiltonianKind::einstein) throw UsageError("enr_closed_form needs an einstein Hamiltonian");
  if (!space.in_v(x0)) throw UsageError("enr_closed_form: initial point is not in v");
  const auto& k = space.base();
  Element head = k.zero();
  for (int i = 0; i < space.n() - 1; ++i) head += x0.block(i);
  const CMatrix y = k.to_matrix(Element(t * (h.v_coef() - h.u_coef()) * head));
  const CMatrix g = expm(y);
  const CMatrix ginv = expm(-y);
  ProductElement out = x0;
  for (int i = 0; i < space.n() - 1; ++i) out.block(i) = k.from_matrix(g * k.to_matrix(x0.block(i)) * ginv);
  return out;
}

/// Shortest round-trip decimal form of a double.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// CSV: t, b<i>_<a> for every block coordinate, monitor:<id> for every monitor.
inline void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  if (traj.states.empty()) return;
  const auto& x0 = traj.states.front();
  out << "t";
  for (int i = 0; i < x0.n(); ++i)
    for (Eigen::Index a = 0; a < x0.blocks.rows(); ++a) out << ",b" << (i + 1) << "_" << (a + 1);
  for (const auto& id : traj.monitor_ids) out << ",monitor:" << id;
  out << "\n";
  for (std::size_t r = 0; r < traj.states.size(); ++r) {
    out << format_double(traj.times[r]);
    const auto& x = traj.states[r];
    for (int i = 0; i < x.n(); ++i)
      for (Eigen::Index a = 0; a < x.blocks.rows(); ++a) out << "," << format_double(x.blocks(a, i));
    for (const auto& series : traj.monitor_series) out << "," << format_double(series[r]);
    out << "\n";
  }
}

}  // namespace flagshift

#endif
