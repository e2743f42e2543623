#include "flagshift/product_space.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>

using namespace flagshift;

namespace {

ProductSpace su2n(int n) { return ProductSpace(LieAlgebra::build("su2"), n); }

}  // namespace

TEST(ProductSpace, Dimensions) {
  const auto sp = ProductSpace(LieAlgebra::build("su3"), 4);
  EXPECT_EQ(sp.dim_g(), 32);
  EXPECT_EQ(sp.dim_h(), 8);
  EXPECT_EQ(sp.dim_v(), 24);
}

TEST(ProductSpace, MomentumIsBlockSum) {
  const auto sp = su2n(3);
  const auto& k = sp.base();
  const ProductElement x = sp.from_blocks({k.unit(0), k.unit(1), 2.0 * k.unit(0)});
  EXPECT_LE((sp.momentum(x) - (3.0 * k.unit(0) + k.unit(1))).norm(), 1e-15);
}

TEST(ProductSpace, ProjectionsSplitTheSpace) {
  const auto sp = su2n(4);
  const ProductElement x = sp.random_element(3);
  const ProductElement xh = sp.proj_h(x), xv = sp.proj_v(x);
  EXPECT_LE(sp.norm_g(xh + xv - x), 1e-14);
  EXPECT_NEAR(sp.pair_g(xh, xv), 0.0, 1e-13);
  EXPECT_LE(sp.base().norm(sp.momentum(xv)), 1e-13);
  EXPECT_TRUE(sp.in_v(xv));
  EXPECT_FALSE(sp.in_v(x));
  // proj_h is the diagonal embedding of mu / n.
  EXPECT_LE(sp.norm_g(xh - sp.diagonal(sp.momentum(x) / 4.0)), 1e-14);
  EXPECT_LE(sp.norm_g(sp.proj_h(xh) - xh), 1e-14);
}

TEST(ProductSpace, ModuleDirectionsAreOrthonormal) {
  const int n = 5;
  Matrix nu(n, n);
  for (int j = 1; j < n; ++j) nu.col(j - 1) = module_direction(j, n).nu;
  nu.col(n - 1) = diagonal_direction(n).nu;
  EXPECT_LE((nu.transpose() * nu - Matrix::Identity(n, n)).norm(), 1e-14);
  // nu^2 for n = 3 is (1, 1, -2) / sqrt(6).
  const Vector want = Vector::Map(std::array<double, 3>{1.0, 1.0, -2.0}.data(), 3) / std::sqrt(6.0);
  EXPECT_LE((module_direction(2, 3).nu - want).norm(), 1e-15);
  EXPECT_THROW(module_direction(0, 3), UsageError);
  EXPECT_THROW(module_direction(3, 3), UsageError);
}

TEST(ProductSpace, ModuleProjectionsDecomposeV) {
  const auto sp = su2n(4);
  const ProductElement x = sp.random_element(8);
  ProductElement sum = sp.proj_h(x);
  for (int j = 1; j < 4; ++j) {
    const ProductElement pj = sp.proj_module(module_direction(j, 4), x);
    EXPECT_LE(sp.norm_g(sp.proj_module(module_direction(j, 4), pj) - pj), 1e-13);
    sum += pj;
  }
  EXPECT_LE(sp.norm_g(sum - x), 1e-13);
}

TEST(ProductSpace, BracketIsBlockwise) {
  const auto sp = su2n(3);
  const ProductElement x = sp.random_element(1), y = sp.random_element(2);
  const ProductElement b = sp.bracket(x, y);
  for (int i = 0; i < 3; ++i)
    EXPECT_LE((b.block(i) - sp.base().bracket(x.block(i), y.block(i))).norm(), 1e-15);
}

TEST(ProductSpace, DiagonalActionPreservesMomentumOrbitAndV) {
  const auto sp = ProductSpace(LieAlgebra::build("su3"), 3);
  const ProductElement x = sp.random_v_element(5);
  const Element y = random_element(sp.base(), 6);
  const ProductElement hx = sp.diagonal_adjoint_action(y, x);
  EXPECT_TRUE(sp.in_v(hx));
  EXPECT_NEAR(sp.norm_g(hx), sp.norm_g(x), 1e-12);
}

TEST(ProductSpace, IsotropyOfGenericAndDiagonalPoints) {
  const auto sp = ProductSpace(LieAlgebra::build("su3"), 3);
  const ProductIsotropy gen = sp.product_isotropy_dims(sp.random_element(2));
  for (int d : gen.block_dims) EXPECT_EQ(d, 2);
  EXPECT_EQ(gen.diagonal_dim, 0);
  const ProductIsotropy diag = sp.product_isotropy_dims(sp.diagonal(random_element(sp.base(), 3)));
  EXPECT_EQ(diag.diagonal_dim, 2);
}

TEST(ProductSpace, EmbedAndFlatRoundTrip) {
  const auto sp = su2n(3);
  const ProductElement e = sp.embed(1, sp.base().unit(2));
  EXPECT_EQ(sp.proj_factor(1, e), sp.base().unit(2));
  EXPECT_EQ(sp.proj_factor(0, e), sp.base().zero());
  const ProductElement x = sp.random_element(4);
  EXPECT_EQ(sp.from_flat(x.flat()).blocks, x.blocks);
  EXPECT_EQ(sp.random_element(4).blocks, x.blocks);
}

TEST(ProductSpace, Errors) {
  EXPECT_THROW(ProductSpace(LieAlgebra::build("su2"), 0), std::exception);
  const auto sp = su2n(3);
  EXPECT_THROW(sp.check(su2n(2).zero()), UsageError);
  EXPECT_THROW(sp.proj_factor(3, sp.zero()), UsageError);
  EXPECT_THROW(sp.from_flat(Vector::Zero(4)), UsageError);
}
