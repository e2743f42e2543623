// Acceptance gate: one line per criterion, exit status 0 iff all pass.

#include "flagshift/cli.hpp"
#include "flagshift/flagshift.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace flagshift;

namespace {

struct Instance {
  const char* alg;
  int n;
};

const std::vector<Instance> kInstances{{"su2", 3}, {"su2", 4}, {"su3", 3}};

ProductSpace make(const Instance& in) { return ProductSpace(LieAlgebra::build(in.alg), in.n); }

std::string tag(const Instance& in) { return std::string(in.alg) + "/n" + std::to_string(in.n); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [x]");
  }
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.expect(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) o.expect(false, "over time budget");
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %-28s %7.3f s (budget %g s)  %s\n", o.pass ? "PASS" : "FAIL", id, title, secs, budget_s,
              o.detail.str().c_str());
  std::fflush(stdout);
}

std::string fmt(double v) { return format_double(v); }

}  // namespace

int main() {
  CertifyOptions opts;  // seed 42, 7 trials, rank_rel 1e-8, bracket_rel 1e-9

  criterion(1, "invariant span ddim/dind", 5.0, [&](Outcome& o) {
    const int want[3][2] = {{3, 3}, {6, 4}, {8, 6}};
    for (std::size_t k = 0; k < kInstances.size(); ++k) {
      const auto sp = make(kInstances[k]);
      const auto rs = verify_lemma1(sp, opts);
      const bool ok = rs[0].pass && rs[1].pass && rs[0].measured_value == want[k][0] &&
                      rs[1].measured_value == want[k][1] && rs[0].witnesses.size() == 7;
      o.expect(ok, tag(kInstances[k]) + " (" + fmt(rs[0].measured_value) + "," + fmt(rs[1].measured_value) + ")");
    }
  });

  criterion(2, "B involutive", 10.0, [&](Outcome& o) {
    CertifyOptions ten = opts;
    ten.trials = 10;
    for (const auto& in : kInstances) {
      const auto sp = make(in);
      const auto r = check_involutive("B", sp, flag_shift_family(sp), ten);
      o.expect(r.pass && r.measured_value <= 1e-9 && r.witnesses.size() == 10,
               tag(in) + " max " + fmt(r.measured_value));
    }
  });

  criterion(3, "completeness sum on g", 10.0, [&](Outcome& o) {
    const int want[3] = {12, 16, 30};
    for (std::size_t k = 0; k < kInstances.size(); ++k) {
      const auto sp = make(kInstances[k]);
      const auto b = flag_shift_family(sp);
      const auto mu = momentum_coordinates(sp);
      const auto a = momentum_shift_family(sp, generic_shift(sp.base(), opts.seed));
      const auto r = verify_completeness_sum("sum", sp, concat("B+mu+muA", {&b, &mu, &a}), want[k], opts);
      o.expect(r.pass && r.measured_value == want[k], tag(kInstances[k]) + " " + fmt(r.measured_value));
    }
  });

  criterion(4, "F complete and involutive", 10.0, [&](Outcome& o) {
    const int want[3] = {3, 5, 7};
    for (std::size_t k = 0; k < kInstances.size(); ++k) {
      const auto sp = make(kInstances[k]);
      const auto f = restrict_family(sp, flag_shift_family(sp));
      const auto d = verify_completeness("F", sp, f, want[k], opts);
      const auto inv = check_involutive("F", sp, f, opts);
      o.expect(d.pass && d.measured_value == want[k] && inv.pass && inv.measured_value <= 1e-9,
               tag(kInstances[k]) + " ddim " + fmt(d.measured_value) + " res " + fmt(inv.measured_value));
    }
  });

  criterion(5, "ddim B", 5.0, [&](Outcome& o) {
    const int want[3] = {5, 7, 12};
    for (std::size_t k = 0; k < kInstances.size(); ++k) {
      const auto sp = make(kInstances[k]);
      const auto r = verify_completeness("B", sp, flag_shift_family(sp), want[k], opts);
      o.expect(r.pass && r.measured_value == want[k], tag(kInstances[k]) + " " + fmt(r.measured_value));
    }
  });

  criterion(6, "Hamiltonian two forms", 1.0, [&](Outcome& o) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> param(0.1, 4.0);
    double worst = 0.0;
    int points = 0;
    for (const char* alg : {"su2", "su3"})
      for (int n : {3, 4}) {
        const ProductSpace sp(LieAlgebra::build(alg), n);
        for (int trip = 0; trip < 5; ++trip) {
          const double p = param(rng), q = param(rng), s = param(rng);
          for (int k = 0; k < 100; ++k, ++points) {
            const auto [eh, eh2] = einstein_hamiltonian_two_ways(sp, p, q, s, sp.random_element(rng()));
            worst = std::max(worst, std::abs(eh - eh2) / (1.0 + std::abs(eh)));
          }
        }
      }
    o.expect(worst <= 1e-12, std::to_string(points) + " points, max rel " + fmt(worst));
  });

  const ProductSpace su2n3(LieAlgebra::build("su2"), 3);
  const EinsteinParameters ep = einstein_parameters(3);
  const HamiltonianSpec einstein = HamiltonianSpec::einstein(3, ep.p, ep.q, ep.p);
  const ProductElement x0 = su2n3.random_v_element(mix_seed(opts.seed, 77));

  criterion(7, "Einstein flow conservation", 5.0, [&](Outcome& o) {
    o.expect(std::abs(ep.p - std::sqrt(3.0)) < 1e-15 && std::abs(ep.q - 1.0 / std::sqrt(3.0)) < 1e-15,
             "(p,q) = (" + fmt(ep.p) + "," + fmt(ep.q) + ")");
    FlowSpec flow{einstein, x0, 10.0, 1e-3, 10, flag_shift_family(su2n3).members};
    flow.monitors.push_back(einstein.as_member(su2n3));
    const Trajectory tr = integrate(su2n3, flow);
    double drift = 0.0, mu = 0.0;
    for (double d : tr.drift) drift = std::max(drift, d);
    for (const auto& x : tr.states) mu = std::max(mu, su2n3.base().norm(su2n3.momentum(x)));
    o.expect(drift <= 1e-7, std::to_string(tr.drift.size()) + " monitors, max drift " + fmt(drift));
    o.expect(mu <= 1e-9, "max |mu| " + fmt(mu));
  });

  criterion(8, "closed-form reduced flow", 5.0, [&](Outcome& o) {
    const Trajectory tr = integrate(su2n3, {einstein, x0, 10.0, 1e-3, 100, {}});
    double worst = 0.0;
    int samples = 0;
    for (std::size_t r = 1; r < tr.states.size(); ++r, ++samples)
      worst = std::max(worst, su2n3.norm_g(tr.states[r] - enr_closed_form(su2n3, einstein, x0, tr.times[r])));
    o.expect(samples == 100 && worst <= 1e-7, std::to_string(samples) + " samples, max " + fmt(worst));
    o.expect(su2n3.norm_g(tr.final_state() - x0) > 1e-2, "nontrivial motion");

    const HamiltonianSpec flat = HamiltonianSpec::einstein(3, 1.0, 1.0, 1.0);
    const Trajectory still = integrate(su2n3, {flat, x0, 10.0, 1e-3, 100, {}});
    double move = 0.0;
    for (std::size_t r = 0; r < still.states.size(); ++r) {
      move = std::max(move, su2n3.norm_g(still.states[r] - x0));
      move = std::max(move, su2n3.norm_g(enr_closed_form(su2n3, flat, x0, still.times[r]) - x0));
    }
    o.expect(std::abs(flat.u_coef() - flat.v_coef()) <= 1e-15 && move <= 1e-12, "u = v constant to " + fmt(move));
  });

  criterion(9, "Gaudin system", 10.0, [&](Outcome& o) {
    Vector a(3);
    a << 1.0, 2.0, 3.0;
    const HamiltonianSpec h = HamiltonianSpec::gaudin(a);
    CertifyOptions ten = opts;
    ten.trials = 10;
    auto ws = run_generic_trials(su2n3, Domain::g, ten, [&](const ProductElement& x, std::uint64_t) {
      const ProductElement diff = euler_field(su2n3, h, x) - gaudin_field(su2n3, a, x);
      const double scale = std::max(1.0, x.blocks.lpNorm<Eigen::Infinity>() * x.blocks.lpNorm<Eigen::Infinity>());
      const double res = diff.blocks.lpNorm<Eigen::Infinity>() / scale;
      return TrialMeasurement{res, res, false, {}};
    });
    double field = 0.0;
    for (const auto& w : ws) field = std::max(field, w.residual);
    o.expect(ws.size() == 10 && field <= 1e-11, "field identity " + fmt(field));

    const auto p = gaudin_family(su2n3, a, default_gaudin_grid());
    const auto lp = check_involutive("P", su2n3, p, opts);
    const auto pencil = check_involutive("P", su2n3, p, opts, a);
    o.expect(lp.pass && pencil.pass, "involutive " + fmt(lp.measured_value) + " / " + fmt(pencil.measured_value));

    FlowSpec flow{h, su2n3.random_element(mix_seed(opts.seed, 78)), 10.0, 1e-3, 10, {}};
    const double mu = momentum_conservation_check(su2n3, integrate(su2n3, flow));
    o.expect(mu <= 1e-8, "mu drift " + fmt(mu));

    const auto d = verify_completeness("P|v", su2n3, restrict_family(su2n3, p), 3, opts);
    o.expect(d.pass && d.measured_value == 3, "ddim P|v " + fmt(d.measured_value));
  });

  criterion(10, "reproducible JSON", 1.0, [&](Outcome& o) {
    auto once = [] {
      std::ostringstream out, err;
      const int code = cli::run({"certify", "--algebra", "su2", "--n", "3", "--claims", "lemma1,thm3", "--seed", "42"},
                                out, err);
      Json doc = Json::parse(out.str());
      const bool had = doc.contains("timestamp");
      doc.erase("timestamp");
      return std::tuple{code, had, doc.dump(2)};
    };
    const auto [c1, t1, j1] = once();
    const auto [c2, t2, j2] = once();
    o.expect(c1 == 0 && c2 == 0 && t1 && t2, "exit codes " + std::to_string(c1) + "," + std::to_string(c2));
    o.expect(j1 == j2, std::to_string(j1.size()) + " bytes identical");
  });

  std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
