#ifndef FLAGSHIFT_CERTIFY_HPP
#define FLAGSHIFT_CERTIFY_HPP

#include "flagshift/dynamics.hpp"
#include "flagshift/errors.hpp"
#include "flagshift/families.hpp"
#include "flagshift/linalg.hpp"
#include "flagshift/poisson.hpp"
#include "flagshift/product_space.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace flagshift {

using Json = nlohmann::ordered_json;

struct CertifyOptions {
  int trials = 7;
  std::uint64_t seed = 42;
  double rank_rel = kRankRel;
  double bracket_rel = 1e-9;
  double invariance_tol = 1e-9;
  double angle_tol = 1e-6;
  int max_retries = 5;
};

/// One trial of a certificate: where it was evaluated and what it saw.
struct Witness {
  int trial = 0;
  std::uint64_t point_seed = 0;
  int retries = 0;
  double measured = 0.0;
  double residual = 0.0;
  std::vector<double> near_threshold;
};

struct CertificateReport {
  std::string claim_id;
  std::string algebra;
  int n = 0;
  std::uint64_t seed = 0;
  int trials = 0;
  bool integral = false;
  double formula_value = 0.0;
  double measured_value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::vector<Witness> witnesses;
  std::vector<std::string> notes;
};

inline Json number_json(double v, bool integral) {
  if (integral && std::isfinite(v)) return Json(static_cast<std::int64_t>(std::llround(v)));
  return Json(v);
}

inline Json to_json(const CertificateReport& r) {
  Json j;
  j["claim_id"] = r.claim_id;
  j["algebra"] = r.algebra;
  j["n"] = r.n;
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["formula_value"] = number_json(r.formula_value, r.integral);
  j["measured_value"] = number_json(r.measured_value, r.integral);
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  Json ws = Json::array();
  for (const auto& w : r.witnesses) {
    Json jw;
    jw["trial"] = w.trial;
    jw["point_seed"] = w.point_seed;
    jw["retries"] = w.retries;
    jw["measured"] = number_json(w.measured, r.integral);
    jw["residual"] = w.residual;
    jw["near_threshold"] = w.near_threshold;
    ws.push_back(std::move(jw));
  }
  j["witnesses"] = std::move(ws);
  j["notes"] = r.notes;
  return j;
}

inline CertificateReport report_from_json(const Json& j) {
  CertificateReport r;
  r.claim_id = j.at("claim_id").get<std::string>();
  r.algebra = j.value("algebra", std::string());
  r.n = j.value("n", 0);
  r.seed = j.value("seed", std::uint64_t{0});
  r.trials = j.value("trials", 0);
  r.integral = j.at("formula_value").is_number_integer();
  r.formula_value = j.at("formula_value").get<double>();
  r.measured_value = j.at("measured_value").get<double>();
  r.tolerance = j.value("tolerance", 0.0);
  r.pass = j.at("pass").get<bool>();
  if (j.contains("notes")) r.notes = j.at("notes").get<std::vector<std::string>>();
  if (j.contains("witnesses")) {
    for (const auto& jw : j.at("witnesses")) {
      Witness w;
      w.trial = jw.value("trial", 0);
      w.point_seed = jw.value("point_seed", std::uint64_t{0});
      w.retries = jw.value("retries", 0);
      w.measured = jw.value("measured", 0.0);
      w.residual = jw.value("residual", 0.0);
      if (jw.contains("near_threshold")) w.near_threshold = jw.at("near_threshold").get<std::vector<double>>();
      r.witnesses.push_back(std::move(w));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Closed-form targets in terms of (n, dim K, rank K).

inline int target_lemma1_ddim(int n, int dim, int) { return (n - 2) * dim; }
inline int target_lemma1_dind(int n, int, int rank) { return n * rank; }
inline int target_casimir(int n, int, int rank) { return n * rank; }
inline int target_mf(int, int dim, int rank) { return (dim + rank) / 2; }
inline int target_ddim_b(int n, int dim, int rank) { return ((n - 1) * dim + (n + 1) * rank) / 2; }
inline int target_ddim_f(int n, int dim, int rank) { return ((n - 2) * dim + n * rank) / 2; }
inline int target_completeness_sum(int n, int dim, int rank) { return n * dim + n * rank; }

// ---------------------------------------------------------------------------
// Generic points.

/// Regularity gates: every block regular (isotropy = rank), trivial common
/// centralizer when n >= 2, and no singular value within a factor 10 of the
/// rank threshold.
inline bool passes_generic_gates(const ProductSpace& space, const ProductElement& x, double rel) {
  const int d = space.d();
  Matrix stacked(d * space.n(), d);
  for (int i = 0; i < space.n(); ++i) {
    const Matrix ad = space.base().ad(x.block(i));
    const RankInfo info = numerical_rank(ad, rel);
    if (info.borderline || d - info.rank != space.base().rank()) return false;
    stacked.middleRows(i * d, d) = ad;
  }
  if (space.n() >= 2) {
    const RankInfo info = numerical_rank(stacked, rel);
    if (info.borderline || info.rank != d) return false;
  }
  return true;
}

inline std::uint64_t trial_seed(std::uint64_t seed, int trial, int attempt) {
  return mix_seed(mix_seed(seed, static_cast<std::uint64_t>(trial)), static_cast<std::uint64_t>(attempt) + 7919);
}

inline ProductElement sample_point(const ProductSpace& space, Domain domain, std::uint64_t seed) {
  return domain == Domain::v ? space.random_v_element(seed) : space.random_element(seed);
}

/// Result of one measurement at one point.
struct TrialMeasurement {
  double value = 0.0;
  double residual = 0.0;
  bool borderline = false;
  std::vector<double> near_threshold;
};

/// Runs `measure` at `opts.trials` generic points, resampling a trial when the
/// point fails the gates or the measurement itself is borderline.
template <class Measure>
std::vector<Witness> run_generic_trials(const ProductSpace& space, Domain domain, const CertifyOptions& opts,
                                        Measure&& measure) {
  std::vector<Witness> out;
  for (int trial = 0; trial < opts.trials; ++trial) {
    bool done = false;
    for (int attempt = 0; attempt <= opts.max_retries && !done; ++attempt) {
      const std::uint64_t ps = trial_seed(opts.seed, trial, attempt);
      const ProductElement x = sample_point(space, domain, ps);
      if (!passes_generic_gates(space, x, opts.rank_rel)) continue;
      TrialMeasurement tm = measure(x, ps);
      if (tm.borderline) continue;
      out.push_back({trial, ps, attempt, tm.value, tm.residual, std::move(tm.near_threshold)});
      done = true;
    }
    if (!done)
      throw GenericityError("trial " + std::to_string(trial) + ": no generic point after " +
                            std::to_string(opts.max_retries) + " resamples");
  }
  return out;
}

/// Modal value of the integer measurements; `agree` is false on any spread.
struct DimensionEstimate {
  int modal = 0;
  bool agree = true;
  std::vector<Witness> witnesses;
};

inline DimensionEstimate summarize_integer(std::vector<Witness> ws) {
  DimensionEstimate est;
  std::map<long long, int> counts;
  for (const auto& w : ws) ++counts[std::llround(w.measured)];
  int best = -1;
  for (const auto& [v, c] : counts)
    if (c > best) {
      best = c;
      est.modal = static_cast<int>(v);
    }
  est.agree = counts.size() <= 1;
  est.witnesses = std::move(ws);
  return est;
}

/// Flat gradient matrix (one column per member), columns scaled to unit norm;
/// vanishing gradients are dropped.
inline Matrix gradient_matrix(const PolynomialFamily& fam, const ProductElement& x) {
  std::vector<Vector> cols;
  double largest = 0.0;
  for (const auto& m : fam.members) {
    cols.push_back(m.grad(x).flat());
    largest = std::max(largest, cols.back().norm());
  }
  Matrix out(x.blocks.size(), 0);
  for (const auto& c : cols) {
    const double nc = c.norm();
    if (nc <= 1e-13 * largest || nc == 0.0) continue;
    out.conservativeResize(Eigen::NoChange, out.cols() + 1);
    out.col(out.cols() - 1) = c / nc;
  }
  return out;
}

inline TrialMeasurement measure_ddim(const PolynomialFamily& fam, const ProductElement& x, double rel) {
  const RankInfo info = numerical_rank(gradient_matrix(fam, x), rel);
  return {static_cast<double>(info.rank), 0.0, info.borderline, info.near_threshold};
}

/// dim F_x and dim ker(Lambda restricted to F_x) at one point.
struct SpanIndex {
  int span_dim = 0;
  int kernel_dim = 0;
  bool borderline = false;
  std::vector<double> near_threshold;
};

inline SpanIndex measure_span_index(const ProductSpace& space, const PolynomialFamily& fam, const ProductElement& x,
                                    double rel) {
  SpanIndex out;
  RankInfo sinfo;
  const Matrix q = column_span(gradient_matrix(fam, x), rel, 0.0, &sinfo);
  out.span_dim = static_cast<int>(q.cols());
  const Matrix l = bivector_matrix(space, x);
  RankInfo minfo = numerical_rank(q.transpose() * l * q, rel, l.norm());
  out.kernel_dim = out.span_dim - minfo.rank;
  out.borderline = sinfo.borderline || minfo.borderline;
  out.near_threshold = sinfo.near_threshold;
  out.near_threshold.insert(out.near_threshold.end(), minfo.near_threshold.begin(), minfo.near_threshold.end());
  return out;
}

inline DimensionEstimate estimate_ddim(const ProductSpace& space, const PolynomialFamily& fam,
                                       const CertifyOptions& opts) {
  if (opts.trials < 3) throw ConfigError("estimate_ddim needs at least 3 trials");
  return summarize_integer(run_generic_trials(space, fam.domain, opts, [&](const ProductElement& x, std::uint64_t) {
    return measure_ddim(fam, x, opts.rank_rel);
  }));
}

inline DimensionEstimate estimate_dind(const ProductSpace& space, const PolynomialFamily& fam,
                                       const CertifyOptions& opts) {
  if (opts.trials < 3) throw ConfigError("estimate_dind needs at least 3 trials");
  return summarize_integer(run_generic_trials(space, fam.domain, opts, [&](const ProductElement& x, std::uint64_t) {
    const SpanIndex si = measure_span_index(space, fam, x, opts.rank_rel);
    return TrialMeasurement{static_cast<double>(si.kernel_dim), 0.0, si.borderline, si.near_threshold};
  }));
}

inline CertificateReport make_report(const std::string& claim, const ProductSpace& space, const CertifyOptions& opts) {
  CertificateReport r;
  r.claim_id = claim;
  r.algebra = space.base().name();
  r.n = space.n();
  r.seed = opts.seed;
  r.trials = opts.trials;
  return r;
}

/// Integer certificate: every trial must measure exactly `target`.
inline CertificateReport integer_report(const std::string& claim, const ProductSpace& space,
                                        const CertifyOptions& opts, int target, const DimensionEstimate& est) {
  CertificateReport r = make_report(claim, space, opts);
  r.integral = true;
  r.formula_value = target;
  r.measured_value = est.modal;
  r.tolerance = opts.rank_rel;
  r.witnesses = est.witnesses;
  r.pass = est.agree;
  for (const auto& w : est.witnesses) r.pass = r.pass && std::llround(w.measured) == target;
  if (!est.agree) r.notes.push_back("measured ranks disagree across trials");
  return r;
}

/// Real-valued certificate: pass iff the worst residual is <= tol.
inline CertificateReport residual_report(const std::string& claim, const ProductSpace& space,
                                         const CertifyOptions& opts, double tol, std::vector<Witness> ws) {
  CertificateReport r = make_report(claim, space, opts);
  r.formula_value = 0.0;
  r.tolerance = tol;
  for (const auto& w : ws) r.measured_value = std::max(r.measured_value, w.residual);
  r.pass = r.measured_value <= tol;
  r.witnesses = std::move(ws);
  return r;
}

// ---------------------------------------------------------------------------
// Certificates.

/// ddim compared with a closed-form target.
inline CertificateReport verify_completeness(const std::string& claim, const ProductSpace& space,
                                             const PolynomialFamily& fam, int target, const CertifyOptions& opts) {
  CertificateReport r = integer_report(claim, space, opts, target, estimate_ddim(space, fam, opts));
  for (const auto& w : fam.warnings) r.notes.push_back(w);
  return r;
}

/// dim F_x + dim ker(Lambda|F_x) compared with `target` at every trial.
inline CertificateReport verify_completeness_sum(const std::string& claim, const ProductSpace& space,
                                                 const PolynomialFamily& fam, int target,
                                                 const CertifyOptions& opts) {
  auto ws = run_generic_trials(space, fam.domain, opts, [&](const ProductElement& x, std::uint64_t) {
    const SpanIndex si = measure_span_index(space, fam, x, opts.rank_rel);
    return TrialMeasurement{static_cast<double>(si.span_dim + si.kernel_dim), 0.0, si.borderline,
                            si.near_threshold};
  });
  CertificateReport r = integer_report(claim, space, opts, target, summarize_integer(std::move(ws)));
  for (const auto& w : fam.warnings) r.notes.push_back(w);
  return r;
}

/// Max normalized bracket over all member pairs.
inline CertificateReport check_involutive(const std::string& claim, const ProductSpace& space,
                                          const PolynomialFamily& fam, const CertifyOptions& opts,
                                          const Vector& weights = Vector()) {
  const Vector w = weights.size() == 0 ? Vector(Vector::Ones(space.n())) : weights;
  if (w.size() != space.n()) throw UsageError("check_involutive: weights must have length n");
  auto ws = run_generic_trials(space, fam.domain, opts, [&](const ProductElement& x, std::uint64_t) {
    std::vector<ProductElement> grads;
    double largest = 0.0;
    for (const auto& m : fam.members) {
      grads.push_back(m.grad(x));
      largest = std::max(largest, space.norm_g(grads.back()));
    }
    // Constant members (round-off gradients) commute with everything; same floor as gradient_matrix.
    std::erase_if(grads, [&](const ProductElement& g) { return space.norm_g(g) <= 1e-13 * largest; });
    double worst = 0.0;
    for (std::size_t a = 0; a < grads.size(); ++a)
      for (std::size_t b = a + 1; b < grads.size(); ++b)
        worst = std::max(worst, normalized_bracket(space, x, grads[a], grads[b], w));
    return TrialMeasurement{worst, worst, false, {}};
  });
  return residual_report(claim, space, opts, opts.bracket_rel, std::move(ws));
}

/// Max |f(Ad_h x) - f(x)| / (1 + |f(x)|) over members and random diagonal h.
inline CertificateReport check_ad_invariance(const std::string& claim, const ProductSpace& space,
                                             const PolynomialFamily& fam, const CertifyOptions& opts) {
  auto ws = run_generic_trials(space, fam.domain, opts, [&](const ProductElement& x, std::uint64_t ps) {
    const Element y = random_element(space.base(), mix_seed(ps, 31337));
    const ProductElement hx = space.diagonal_adjoint_action(y, x);
    double worst = 0.0;
    for (const auto& m : fam.members) {
      const double f0 = m.eval(x);
      worst = std::max(worst, std::abs(m.eval(hx) - f0) / (1.0 + std::abs(f0)));
    }
    return TrialMeasurement{worst, worst, false, {}};
  });
  return residual_report(claim, space, opts, opts.invariance_tol, std::move(ws));
}

/// Dimension of j_x and of the kernel of the restricted bivector, against
/// (n - 2) dim K and n rank K.
inline std::vector<CertificateReport> verify_lemma1(const ProductSpace& space, const CertifyOptions& opts) {
  if (space.n() < 2) throw ConfigError("lemma1 needs n >= 2");
  const int n = space.n(), dim = space.d(), rank = space.base().rank();
  std::vector<Witness> jw, kw;
  auto angles = run_generic_trials(space, Domain::v, opts, [&](const ProductElement& x, std::uint64_t ps) {
    const RestrictedKernel rk = kernel_of_restricted_bivector(space, x, opts.rank_rel, opts.angle_tol);
    jw.push_back({0, ps, 0, static_cast<double>(rk.j_dim), 0.0, {}});
    kw.push_back({0, ps, 0, static_cast<double>(rk.via_bivector.cols()), rk.max_angle, {}});
    return TrialMeasurement{rk.max_angle, rk.max_angle, rk.borderline, {}};
  });
  // Keep only the measurements taken at accepted points.
  auto accepted = [&](std::vector<Witness>& raw) {
    std::vector<Witness> out;
    for (const auto& a : angles)
      for (const auto& w : raw)
        if (w.point_seed == a.point_seed) {
          out.push_back(w);
          out.back().trial = a.trial;
          out.back().retries = a.retries;
          break;
        }
    return out;
  };
  std::vector<CertificateReport> out;
  out.push_back(integer_report("lemma1.ddim", space, opts, target_lemma1_ddim(n, dim, rank),
                               summarize_integer(accepted(jw))));
  out.push_back(integer_report("lemma1.dind", space, opts, target_lemma1_dind(n, dim, rank),
                               summarize_integer(accepted(kw))));
  CertificateReport two = residual_report("lemma1.kernel_two_ways", space, opts, opts.angle_tol, angles);
  for (const auto& w : accepted(kw))
    if (std::llround(w.measured) != target_lemma1_dind(n, dim, rank)) two.pass = false;
  out.push_back(std::move(two));
  return out;
}

/// Both characterizations of j_x agree, and every gradient of `fam` (a family
/// on v) lies in j_x with pr_h([x, eta]) = 0.
inline CertificateReport verify_span_inclusion(const std::string& claim, const ProductSpace& space,
                                               const PolynomialFamily& fam, const CertifyOptions& opts) {
  if (fam.domain != Domain::v) throw UsageError("verify_span_inclusion expects a family on v");
  bool dims_ok = true;
  auto ws = run_generic_trials(space, Domain::v, opts, [&](const ProductElement& x, std::uint64_t) {
    RankInfo ia, ib;
    const Matrix ja = j_basis(space, x, opts.rank_rel, &ia);
    const Matrix jb = j_basis_orthogonal_form(space, x, opts.rank_rel, &ib);
    double worst = max_principal_angle(ja, jb);
    if (ja.cols() != jb.cols()) dims_ok = false;
    for (const auto& m : fam.members) {
      const ProductElement g = m.grad(x);
      const double gn = space.norm_g(g);
      if (gn == 0.0) continue;
      worst = std::max(worst, distance_from_span(ja, g.flat()));
      const ProductElement hb = space.proj_h(space.bracket(x, g));
      worst = std::max(worst, space.norm_g(hb) / (gn * space.norm_g(x)));
    }
    return TrialMeasurement{static_cast<double>(ja.cols()), worst, ia.borderline || ib.borderline, {}};
  });
  CertificateReport r = residual_report(claim, space, opts, opts.angle_tol, std::move(ws));
  if (!dims_ok) {
    r.pass = false;
    r.notes.push_back("the two characterizations of j_x have different dimensions");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Claims registry.

/// Default Gaudin weights a_i = i.
inline Vector default_gaudin_weights(int n) { return Vector::LinSpaced(n, 1.0, static_cast<double>(n)); }

struct Claim {
  std::string group;
  std::string id;
  std::string description;
  std::function<std::vector<CertificateReport>(const ProductSpace&, const CertifyOptions&)> run;
};

inline std::vector<Claim> claims_registry() {
  using Reports = std::vector<CertificateReport>;
  std::vector<Claim> reg;
  auto dims = [](const ProductSpace& s) { return std::tuple{s.n(), s.d(), s.base().rank()}; };

  reg.push_back({"lemma1", "lemma1", "ddim and dind of the invariant algebra on v; kernel computed two ways",
                 [](const ProductSpace& s, const CertifyOptions& o) { return verify_lemma1(s, o); }});
  reg.push_back({"lemma1", "lemma1.span", "two characterizations of j_x agree; gradients of F lie in j_x",
                 [](const ProductSpace& s, const CertifyOptions& o) {
                   return Reports{verify_span_inclusion("lemma1.span", s, restrict_family(s, flag_shift_family(s)), o)};
                 }});
  reg.push_back({"casimir", "casimir", "Casimirs Z: ddim = dind = n rank K",
                 [dims](const ProductSpace& s, const CertifyOptions& o) {
                   const auto [n, d, r] = dims(s);
                   const auto z = casimir_family(s);
                   return Reports{verify_completeness("casimir.ddim", s, z, target_casimir(n, d, r), o),
                                  integer_report("casimir.dind", s, o, target_casimir(n, d, r), estimate_dind(s, z, o))};
                 }});
  reg.push_back({"thm2i", "thm2i", "B is commutative and Ad_H-invariant; ddim B attains its lower bound",
                 [dims](const ProductSpace& s, const CertifyOptions& o) {
                   const auto [n, d, r] = dims(s);
                   const auto b = flag_shift_family(s);
                   return Reports{check_involutive("thm2i.involutive", s, b, o),
                                  check_ad_invariance("thm2i.ad_invariant", s, b, o),
                                  verify_completeness("thm2.ddimB", s, b, target_ddim_b(n, d, r), o)};
                 }});
  reg.push_back({"thm2ii", "thm2ii", "B + mu-coordinates + shift of mu is complete on g",
                 [dims](const ProductSpace& s, const CertifyOptions& o) {
                   const auto [n, d, r] = dims(s);
                   const auto b = flag_shift_family(s);
                   const auto mu = momentum_coordinates(s);
                   const auto a = momentum_shift_family(s, generic_shift(s.base(), o.seed));
                   const auto all = concat("B+mu+muA", {&b, &mu, &a});
                   return Reports{
                       verify_completeness_sum("thm2ii.completeness", s, all, target_completeness_sum(n, d, r), o)};
                 }});
  reg.push_back({"thm3", "thm3", "F = B|v is commutative under the restricted bracket and complete",
                 [dims](const ProductSpace& s, const CertifyOptions& o) {
                   const auto [n, d, r] = dims(s);
                   const auto f = restrict_family(s, flag_shift_family(s));
                   return Reports{verify_completeness("thm3.ddimF", s, f, target_ddim_f(n, d, r), o),
                                  check_involutive("thm3.involutive", s, f, o),
                                  integer_report("thm3.dindF", s, o, target_ddim_f(n, d, r), estimate_dind(s, f, o))};
                 }});
  reg.push_back({"gaudin", "gaudin", "Gaudin family: field identity, commutativity under both bivectors, ddim on v",
                 [dims](const ProductSpace& s, const CertifyOptions& o) {
                   const auto [n, d, r] = dims(s);
                   const Vector a = default_gaudin_weights(n);
                   // One node is |mu|^2-like and vanishes on v; size the grid so the rest can reach the target.
                   const auto nodes = static_cast<std::size_t>(std::max(5, target_ddim_f(n, d, r) / r + 2));
                   const auto p = gaudin_family(s, a, gaudin_grid(nodes));
                   const auto h = HamiltonianSpec::gaudin(a);
                   auto field_ws = run_generic_trials(s, Domain::g, o, [&](const ProductElement& x, std::uint64_t) {
                     const ProductElement diff = euler_field(s, h, x) - gaudin_field(s, a, x);
                     const double res = diff.blocks.lpNorm<Eigen::Infinity>() /
                                        std::max(1.0, x.blocks.lpNorm<Eigen::Infinity>() * x.blocks.lpNorm<Eigen::Infinity>());
                     return TrialMeasurement{res, res, false, {}};
                   });
                   return Reports{residual_report("gaudin.field_identity", s, o, 1e-11, std::move(field_ws)),
                                  check_involutive("gaudin.involutive_lp", s, p, o),
                                  check_involutive("gaudin.involutive_pencil", s, p, o, a),
                                  verify_completeness("gaudin.ddimP_v", s, restrict_family(s, p),
                                                      target_ddim_f(n, d, r), o)};
                 }});
  return reg;
}

inline std::vector<std::string> claim_groups() { return {"lemma1", "casimir", "thm2i", "thm2ii", "thm3", "gaudin"}; }

/// Runs every registered claim whose group is in `groups`, in registry order.
inline std::vector<CertificateReport> run_claims(const ProductSpace& space, const std::vector<std::string>& groups,
                                                 const CertifyOptions& opts) {
  const auto known = claim_groups();
  for (const auto& g : groups)
    if (std::find(known.begin(), known.end(), g) == known.end()) throw ConfigError("unknown claim group '" + g + "'");
  std::vector<CertificateReport> out;
  for (const auto& claim : claims_registry()) {
    if (std::find(groups.begin(), groups.end(), claim.group) == groups.end()) continue;
    auto reports = claim.run(space, opts);
    out.insert(out.end(), std::make_move_iterator(reports.begin()), std::make_move_iterator(reports.end()));
  }
  return out;
}

inline bool all_pass(const std::vector<CertificateReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
}

}  // namespace flagshift

#endif
