// Certifies the dimension claims for su(3)^3 and prints the reports.

#include "flagshift/flagshift.hpp"

#include <iostream>

int main() {
  using namespace flagshift;
  const ProductSpace space(LieAlgebra::build("su3"), 3);
  CertifyOptions opts;
  const auto reports = run_claims(space, {"lemma1", "thm2i", "thm3"}, opts);
  for (const auto& r : reports)
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.claim_id << "  formula " << r.formula_value << "  measured "
              << r.measured_value << "\n";
  return all_pass(reports) ? 0 : 1;
}
