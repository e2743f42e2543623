// Integrates the Einstein-metric geodesic flow on su(2)^3 from a point of v
// and compares with the closed-form solution.

#include "flagshift/flagshift.hpp"

#include <iostream>

int main() {
  using namespace flagshift;
  const ProductSpace space(LieAlgebra::build("su2"), 3);
  const EinsteinParameters ep = einstein_parameters(3);
  const HamiltonianSpec h = HamiltonianSpec::einstein(3, ep.p, ep.q, ep.p);
  const ProductElement x0 = space.random_v_element(7);

  const PolynomialFamily b = flag_shift_family(space);
  FlowSpec flow{h, x0, 10.0, 1e-3, 100, b.members};
  flow.monitors.push_back(h.as_member(space));
  const Trajectory tr = integrate(space, flow);

  double worst = 0.0;
  for (std::size_t r = 0; r < tr.states.size(); ++r)
    worst = std::max(worst, space.norm_g(tr.states[r] - enr_closed_form(space, h, x0, tr.times[r])));

  std::cout << "p = " << ep.p << ", q = " << ep.q << ", u = " << h.u_coef() << ", v = " << h.v_coef() << "\n";
  for (std::size_t k = 0; k < tr.drift.size(); ++k) std::cout << tr.monitor_ids[k] << "  drift " << tr.drift[k] << "\n";
  std::cout << "closed-form residual " << worst << "\n";
  std::cout << "|mu(x(t_end))| " << space.base().norm(space.momentum(tr.final_state())) << "\n";
}
