#include "flagshift/families.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace flagshift;

namespace {

ProductSpace space(const char* alg, int n) { return ProductSpace(LieAlgebra::build(alg), n); }

// Euclidean coordinates of su(2): f^1(x) = -|x|^2 / 2.
double dot(const ProductElement& x, int i, int j) { return Vector(x.block(i)).dot(Vector(x.block(j))); }

const FamilyMember& by_id(const PolynomialFamily& fam, const std::string& id) {
  for (const auto& m : fam.members)
    if (m.id == id) return m;
  throw std::runtime_error("no member " + id);
}

}  // namespace

TEST(Families, FlagShiftCoefficientsOnSu2) {
  const auto sp = space("su2", 3);
  const auto b = flag_shift_family(sp);
  const ProductElement x = sp.random_element(17);
  EXPECT_NEAR(by_id(b, "B[i=1;alpha=1;k=0]").eval(x), -0.5 * dot(x, 0, 0), 1e-12);
  EXPECT_NEAR(by_id(b, "B[i=1;alpha=1;k=1]").eval(x), -dot(x, 0, 1), 1e-12);
  EXPECT_NEAR(by_id(b, "B[i=1;alpha=1;k=2]").eval(x), -0.5 * dot(x, 1, 1), 1e-12);
  // f(x_1 + x_2 + t x_3): k = 1 is -<x_1 + x_2, x_3>.
  EXPECT_NEAR(by_id(b, "B[i=2;alpha=1;k=1]").eval(x), -(dot(x, 0, 2) + dot(x, 1, 2)), 1e-12);
  EXPECT_NEAR(by_id(b, "Z[i=3;alpha=1]").eval(x), -0.5 * dot(x, 2, 2), 1e-12);
}

TEST(Families, MemberCounts) {
  // (n - 1) pencils per alpha with deg + 1 coefficients, plus n * rank Casimirs.
  EXPECT_EQ(flag_shift_family(space("su2", 3)).size(), 2u * 3u + 3u);
  EXPECT_EQ(flag_shift_family(space("su2", 4)).size(), 3u * 3u + 4u);
  EXPECT_EQ(flag_shift_family(space("su3", 3)).size(), 2u * (3u + 4u) + 6u);
  EXPECT_EQ(casimir_family(space("su3", 3)).size(), 6u);
  EXPECT_EQ(momentum_coordinates(space("su3", 2)).size(), 8u);
}

TEST(Families, IdsAreUniqueAndCsvSafe) {
  const auto sp = space("su3", 3);
  const auto b = flag_shift_family(sp);
  const auto p = gaudin_family(sp, Vector::LinSpaced(3, 1, 3), default_gaudin_grid());
  std::set<std::string> seen;
  for (const auto* fam : {&b, &p})
    for (const auto& m : fam->members) {
      EXPECT_TRUE(seen.insert(m.id).second) << m.id;
      EXPECT_EQ(m.id.find(','), std::string::npos) << m.id;
    }
}

TEST(Families, PencilCoefficientsReassembleThePolynomial) {
  const auto sp = space("su3", 3);
  auto shared = share(sp);
  Vector base(3), slope(3);
  base << 1.0, 0.5, 0.0;
  slope << 0.0, 1.0, -2.0;
  const Element shift = random_element(sp.base(), 3);
  const InvariantPencil pencil(shared, 2, base, slope, shift);
  const ProductElement x = sp.random_element(4);
  const Vector c = pencil.coefficients(x);
  ASSERT_EQ(c.size(), 4);
  for (double t : {-1.3, 0.4, 2.2}) {
    double poly = 0.0;
    for (int k = 3; k >= 0; --k) poly = poly * t + c(k);
    EXPECT_NEAR(poly, pencil.value(x, t), 1e-10 * (1.0 + std::abs(poly)));
  }
  EXPECT_THROW(pencil.coefficient(4, x), UsageError);
}

class GradientSweep : public ::testing::TestWithParam<const char*> {};

TEST_P(GradientSweep, AllFamiliesMatchFiniteDifferences) {
  const auto sp = space(GetParam(), 3);
  const auto b = flag_shift_family(sp);
  const auto f = restrict_family(sp, b);
  const auto mu = momentum_coordinates(sp);
  const auto mua = momentum_shift_family(sp, generic_shift(sp.base(), 5));
  const auto p = gaudin_family(sp, Vector::LinSpaced(3, 1, 3), default_gaudin_grid());
  const auto ctrl = coordinate_family(sp, 0);
  const ProductElement x = sp.random_element(9);
  const ProductElement xv = sp.random_v_element(9);
  for (const auto* fam : {&b, &mu, &mua, &p, &ctrl})
    for (const auto& m : fam->members) EXPECT_LE(member_grad_check(sp, m, x), 1e-6) << m.id;
  for (const auto& m : f.members) EXPECT_LE(member_grad_check(sp, m, xv), 1e-6) << m.id;
}

INSTANTIATE_TEST_SUITE_P(Algebras, GradientSweep, ::testing::Values("su2", "su3"));

TEST(Families, LeibnizRuleForProducts) {
  const auto sp = space("su3", 2);
  const auto b = flag_shift_family(sp);
  const ProductElement x = sp.random_element(3);
  const FamilyMember pm = product_member(b[1], b[4]);
  EXPECT_NEAR(pm.eval(x), b[1].eval(x) * b[4].eval(x), 1e-12);
  const ProductElement want = b[4].eval(x) * b[1].grad(x) + b[1].eval(x) * b[4].grad(x);
  EXPECT_LE(sp.norm_g(pm.grad(x) - want), 1e-12 * (1.0 + sp.norm_g(want)));
  EXPECT_LE(member_grad_check(sp, pm, x), 1e-6);
}

TEST(Families, RestrictedGradientsLieInV) {
  const auto sp = space("su2", 4);
  const auto f = restrict_family(sp, flag_shift_family(sp));
  EXPECT_EQ(f.name, "F");
  EXPECT_EQ(f.domain, Domain::v);
  const ProductElement x = sp.random_v_element(2);
  for (const auto& m : f.members) EXPECT_TRUE(sp.in_v(m.grad(x))) << m.id;
  EXPECT_THROW(restrict_family(sp, f), UsageError);
}

TEST(Families, GaudinMembersAreWeightedInvariants) {
  const auto sp = space("su2", 3);
  Vector a(3);
  a << 1.0, 2.0, 3.0;
  const auto p = gaudin_family(sp, a, {{1.0, 0.5}});
  ASSERT_EQ(p.size(), 1u);
  const ProductElement x = sp.random_element(6);
  const Element y = x.block(0) / 1.5 + x.block(1) / 2.0 + x.block(2) / 2.5;
  EXPECT_NEAR(p[0].eval(x), sp.base().invariant(1, y), 1e-12);
  EXPECT_EQ(p[0].id, "P[t1=1;t2=0.5;alpha=1]");
}

TEST(Families, GaudinGridErrors) {
  const auto sp = space("su2", 3);
  Vector a(3);
  a << 1.0, -1.0, 2.0;
  EXPECT_THROW(gaudin_family(sp, a, {{1.0, 1.0}}), ConfigError);
  EXPECT_THROW(gaudin_family(sp, Vector::Ones(3), {{0.0, 0.0}}), ConfigError);
  EXPECT_THROW(gaudin_family(sp, Vector::Ones(2), default_gaudin_grid()), ConfigError);
  EXPECT_THROW(gaudin_family(sp, Vector::Ones(3), {}), ConfigError);
  try {
    gaudin_family(sp, a, {{1.0, 1.0}});
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("t1=1;t2=1"), std::string::npos);
  }
}

TEST(Families, GaudinGridExtension) {
  const auto g = gaudin_grid(7);
  ASSERT_EQ(g.size(), 7u);
  EXPECT_EQ(g[5].t2, 4.0);
  EXPECT_EQ(g[6].t2, 5.0);
  EXPECT_EQ(gaudin_grid(3).size(), 5u);
}

TEST(Families, ShiftWarnsOnSingularVector) {
  const auto sp = space("su3", 2);
  EXPECT_TRUE(momentum_shift_family(sp, generic_shift(sp.base(), 1)).warnings.empty());
  EXPECT_FALSE(momentum_shift_family(sp, sp.base().zero()).warnings.empty());
  const auto a = mf_shift_family(generic_shift(sp.base(), 2), sp.base_ptr());
  EXPECT_EQ(a.size(), 3u + 4u);
}

TEST(Families, GenericShiftIsRegularAndDeterministic) {
  const auto k = LieAlgebra::build("su3");
  const Element a = generic_shift(*k, 11);
  EXPECT_EQ(k->isotropy_dim(a), 2);
  EXPECT_EQ(a, generic_shift(*k, 11));
}

TEST(Families, CasimirsDependOnOneFactor) {
  const auto sp = space("su3", 3);
  const auto z = casimir_family(sp);
  const ProductElement x = sp.random_element(1);
  const ProductElement g = z[3].grad(x);  // Z[i=2;alpha=2]
  EXPECT_EQ(z[3].id, "Z[i=2;alpha=2]");
  EXPECT_EQ(Vector(g.block(0)).norm(), 0.0);
  EXPECT_EQ(Vector(g.block(2)).norm(), 0.0);
  EXPECT_GT(Vector(g.block(1)).norm(), 0.0);
}

TEST(Families, ErrorPaths) {
  const auto sp = space("su2", 3);
  EXPECT_THROW(flag_shift_family(space("su2", 1)), ConfigError);
  EXPECT_THROW(block_shift_family(sp, {sp.base().unit(0)}), UsageError);
  EXPECT_THROW(InvariantPencil(share(sp), 1, Vector::Ones(2), Vector::Ones(3), Element()), UsageError);
  EXPECT_THROW(InvariantPencil(share(sp), 2, Vector::Ones(3), Vector::Ones(3), Element()), UsageError);
  EXPECT_THROW(member_grad_check(sp, casimir_family(sp)[0], sp.zero(), 0.0), UsageError);
}
