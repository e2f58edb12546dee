#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <random>

#include "oracle/linear_algebra.hpp"
#include "test_support.hpp"
#include "theta_forge/groebner.hpp"

namespace theta_forge {
namespace {

using testing::M;
using testing::P;

Submodule ideal(const RingPtr& R, const std::vector<std::string>& gens) {
  PolyMatrix m(R, 1, gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j) m(0, j) = P(R, gens[j]);
  return Submodule(FreeModule::free(R, 1), m);
}

std::vector<std::string> basis_strings(const Submodule& gb) {
  std::vector<std::string> out;
  PolyMatrix b = gb.basis_matrix();
  for (std::size_t j = 0; j < b.cols(); ++j) {
    std::string s;
    for (std::size_t i = 0; i < b.rows(); ++i) s += (i ? "," : "") + b(i, j).to_string();
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST(GroebnerBasis, HandComputedIdeal) {
  auto R = testing::qq({"x", "y"});
  auto gb = groebner_basis(ideal(R, {"x^2 + y^2", "x*y"}));
  // S(x^2+y^2, xy) = y*(x^2+y^2) - x*(xy) = y^3, and everything else reduces to 0.
  std::vector<std::string> expected{"x*y", "x^2 + y^2", "y^3"};
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(basis_strings(gb), expected);
}

TEST(GroebnerBasis, SingleGenerator) {
  auto R = testing::qq({"x", "y"});
  EXPECT_EQ(basis_strings(groebner_basis(ideal(R, {"x"}))), std::vector<std::string>{"x"});
}

TEST(GroebnerBasis, UnitIdeal) {
  auto R = testing::qq({"x", "y"});
  EXPECT_EQ(basis_strings(groebner_basis(ideal(R, {"x", "1 + x"}))), std::vector<std::string>{"1"});
}

TEST(GroebnerBasis, RejectsIntegers) {
  auto R = testing::zz({"x"});
  EXPECT_THROW(groebner_basis(ideal(R, {"2*x"})), Error);
}

TEST(GroebnerBasis, IndependentOfGeneratorOrder) {
  std::mt19937 rng(21);
  auto R = testing::qq({"x", "y", "z"});
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<Polynomial> gens;
    for (int k = 0; k < 3; ++k) gens.push_back(testing::random_homogeneous(R, rng, 2, 3, 3));
    gens.push_back(P(R, "x^3"));
    gens.push_back(P(R, "y^3"));
    gens.push_back(P(R, "z^3"));
    PolyMatrix a(R, 1, gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j) a(0, j) = gens[j];
    std::shuffle(gens.begin(), gens.end(), rng);
    PolyMatrix b(R, 1, gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j) b(0, j) = gens[j];
    EXPECT_EQ(basis_strings(groebner_basis(Submodule(FreeModule::free(R, 1), a))),
              basis_strings(groebner_basis(Submodule(FreeModule::free(R, 1), b))));
  }
}

TEST(NormalForm, Examples) {
  auto R = testing::qq({"x", "y"});
  auto gb = groebner_basis(ideal(R, {"x^2 + y^2", "x*y", "y^3"}));
  EXPECT_TRUE(normal_form(P(R, "x^3"), gb).is_zero());
  EXPECT_EQ(normal_form(P(R, "y^2"), gb), P(R, "y^2"));
  EXPECT_TRUE(normal_form(P(R, "0"), gb).is_zero());
  EXPECT_EQ(normal_form(P(R, "x^2"), gb), P(R, "-y^2"));
}

TEST(NormalForm, MembershipCertificatesAndIdempotence) {
  std::mt19937 rng(5);
  auto R = testing::qq({"x", "y", "z"});
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Polynomial> g;
    for (int k = 0; k < 3; ++k) g.push_back(testing::random_poly(R, rng, 2, 3, 4));
    PolyMatrix gm(R, 1, 3);
    for (int k = 0; k < 3; ++k) gm(0, static_cast<std::size_t>(k)) = g[static_cast<std::size_t>(k)];
    Submodule I(FreeModule::free(R, 1), gm);
    Polynomial member(R);
    for (const auto& gi : g) member += gi * testing::random_poly(R, rng, 2, 3, 4);
    EXPECT_TRUE(normal_form(member, I).is_zero());
    Polynomial v = testing::random_poly(R, rng, 3, 5, 4);
    Polynomial nf = normal_form(v, I);
    EXPECT_EQ(normal_form(nf, I), nf);
    // v - nf is a member: adding it to the generators does not change the basis
    EXPECT_TRUE(normal_form(v - nf, I).is_zero());
  }
}

TEST(NormalForm, ModuleElements) {
  auto R = testing::qq({"x", "y"});
  Submodule s(FreeModule::free(R, 2), M(R, {{"x", "y"}, {"y", "0"}}));
  // x*(x,y) - ... : (x^2, xy) is x*col0; check a combination
  std::vector<Polynomial> v{P(R, "x^2 + y^2"), P(R, "x*y")};
  EXPECT_TRUE(is_zero_vector(normal_form(v, s)));
  EXPECT_FALSE(contains(s, std::vector<Polynomial>{P(R, "1"), P(R, "0")}));
}

TEST(Syzygy, KoszulRow) {
  auto R = testing::qq({"x", "y"});
  PolyMatrix m = M(R, {{"x", "y"}});
  PolyMatrix s = syzygy(m);
  ASSERT_EQ(s.cols(), 1u);
  EXPECT_TRUE((m * s).is_zero());
  // (y, -x) generates; check both directions by membership.
  Submodule ks(FreeModule::free(R, 2), s);
  EXPECT_TRUE(contains(ks, std::vector<Polynomial>{P(R, "y"), P(R, "-x")}));
  EXPECT_TRUE(contains(Submodule(FreeModule::free(R, 2), M(R, {{"y"}, {"-x"}})), s));
}

TEST(Syzygy, IdentityHasTrivialKernel) {
  auto R = testing::qq({"x", "y"});
  EXPECT_EQ(syzygy(PolyMatrix::identity(R, 2)).cols(), 0u);
}

TEST(Syzygy, CommonFactorDividesOut) {
  auto R = testing::qq({"x", "y"});
  PolyMatrix m = M(R, {{"x^2", "x*y"}});
  PolyMatrix s = syzygy(m);
  EXPECT_TRUE((m * s).is_zero());
  Submodule ks(FreeModule::free(R, 2), s);
  EXPECT_TRUE(contains(ks, std::vector<Polynomial>{P(R, "y"), P(R, "-x")}));
  EXPECT_TRUE(contains(Submodule(FreeModule::free(R, 2), M(R, {{"y"}, {"-x"}})), s));
}

TEST(Syzygy, RandomRowsContainKoszulElements) {
  std::mt19937 rng(9);
  auto R = testing::qq({"x", "y", "z"});
  for (int trial = 0; trial < 10; ++trial) {
    PolyMatrix m(R, 1, 3);
    for (std::size_t j = 0; j < 3; ++j) m(0, j) = testing::random_homogeneous(R, rng, 1 + trial % 2, 3, 3);
    PolyMatrix s = syzygy(m);
    EXPECT_TRUE((m * s).is_zero());
    Submodule ks(FreeModule::free(R, 3), s);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j) {
        std::vector<Polynomial> k(3, Polynomial(R));
        k[i] = m(0, j);
        k[j] = -m(0, i);
        EXPECT_TRUE(contains(ks, k));
      }
  }
}

TEST(Syzygy, RandomMatricesComposeToZero) {
  std::mt19937 rng(19);
  auto R = testing::gf(7, {"x", "y", "z"});
  for (int trial = 0; trial < 6; ++trial) {
    PolyMatrix m(R, 2, 3);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = testing::random_homogeneous(R, rng, 1, 2, 3);
    PolyMatrix s = syzygy(m);
    EXPECT_TRUE((m * s).is_zero());
    // the adjugate-style kernel vector (2x2 minors with signs) is in the kernel
    std::vector<Polynomial> minors{m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1), m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2),
                                   m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)};
    EXPECT_TRUE(contains(Submodule(FreeModule::free(R, 3), s), minors));
  }
}

TEST(KDimension, Examples) {
  auto R = testing::qq({"x", "y"});
  EXPECT_EQ(k_dimension(ideal(R, {"x^2", "y^2"})), KDim::finite(4));
  EXPECT_EQ(k_dimension(ideal(R, {"x"})), KDim::inf());
  auto F = FreeModule::free(R, 2);
  EXPECT_EQ(k_dimension(Submodule::whole(F), Submodule::whole(F)), KDim::finite(0));
  EXPECT_EQ(k_dimension(Submodule::whole(F)), KDim::finite(0));
  EXPECT_EQ(k_dimension(Submodule::zero(F)), KDim::inf());
}

TEST(KDimension, Subquotient) {
  auto R = testing::qq({"x", "y"});
  // (x, y) / (x^2, xy, y^2) has basis x, y.
  EXPECT_EQ(k_dimension(ideal(R, {"x", "y"}), ideal(R, {"x^2", "x*y", "y^2"})), KDim::finite(2));
  // (x) / (x^2) is infinite (x*y^k survive).
  EXPECT_EQ(k_dimension(ideal(R, {"x"}), ideal(R, {"x^2"})), KDim::inf());
}

TEST(KDimension, RequiresField) {
  auto R = testing::zz({"x"});
  try {
    k_dimension(ideal(R, {"x"}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::COEFF_DOMAIN_NOT_FIELD);
  }
}

TEST(KDimension, AgreesWithLinearAlgebraOracle) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 12; ++trial) {
    auto R = testing::qq({"x", "y", "z"});
    std::uniform_int_distribution<int> e(1, 4);
    std::vector<Polynomial> gens{P(R, "x^" + std::to_string(e(rng))), P(R, "y^" + std::to_string(e(rng))),
                                 P(R, "z^" + std::to_string(e(rng)))};
    gens.push_back(testing::random_homogeneous(R, rng, 2, 2, 3));
    PolyMatrix m(R, 1, gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j) m(0, j) = gens[j];
    std::size_t expected = 0;
    for (int d = 0; d <= 12; ++d) expected += oracle::quotient_dim_in_degree(gens, d);
    EXPECT_EQ(k_dimension(Submodule(FreeModule::free(R, 1), m)), KDim::finite(expected));
  }
}

TEST(StandardMonomials, Enumerates) {
  auto R = testing::qq({"x", "y"});
  auto sm = standard_monomials(ideal(R, {"x^2", "y^2"}));
  std::vector<std::string> names;
  for (const auto& m : sm) names.push_back(R->monomial_string(m));
  EXPECT_EQ(names, (std::vector<std::string>{"1", "y", "x", "x*y"}));
}

TEST(Cache, SharesBasesAcrossCalls) {
  auto R = testing::qq({"u", "v"});
  auto I = ideal(R, {"u^3 + v^3", "u*v^2"});
  groebner_basis(I);
  std::size_t hits = GroebnerCache::instance().hits();
  groebner_basis(I);
  EXPECT_GT(GroebnerCache::instance().hits(), hits);
}

TEST(Cache, DiskLayerRoundTrip) {
  auto dir = std::filesystem::temp_directory_path() / "theta_forge_cache_test";
  std::filesystem::remove_all(dir);
  auto& cache = GroebnerCache::instance();
  cache.set_disk_dir(dir.string());
  auto R = testing::qq({"s", "t", "w"});
  auto I = ideal(R, {"s^2 - t*w", "t^3 + 2/3*s*w^2", "w^4"});
  auto first = groebner_basis(I).basis_matrix();
  EXPECT_FALSE(std::filesystem::is_empty(dir));
  cache.clear();
  std::size_t hits = cache.hits();
  auto second = groebner_basis(I).basis_matrix();
  EXPECT_EQ(cache.hits(), hits + 1);
  EXPECT_EQ(first, second);
  cache.set_disk_dir("");
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace theta_forge
