#include <gtest/gtest.h>

#include "corpus.hpp"
#include "oracle/graded_homology.hpp"
#include "theta_forge/stable_homology.hpp"

using namespace theta_forge;
using namespace theta_forge::testing;

namespace {

using Dims = std::vector<std::uint64_t>;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::SYNTAX_ERROR;
}

PresentedModule quotient(const RingPtr& R, const std::string& f, const std::vector<std::string>& gens) {
  return {FreeModule::free(R, 1), M(R, {gens}), P(R, f)};
}

}  // namespace

TEST(TorDims, NodeResidue) {
  auto e = node_entry(CoeffDomain::rationals());
  const auto& x = e.mfs[0].second;
  EXPECT_EQ(tor_dims(x, cokernel(x), 4).dims, (Dims{1, 0, 1, 0}));
  EXPECT_EQ(ext_dims(x, cokernel(x), 4).dims, (Dims{0, 1, 0, 1}));
}

TEST(TorDims, QuadricAgainstCoordinateQuotient) {
  auto e = quadric_entry(CoeffDomain::rationals());
  auto R = e.f.ring_ptr();
  auto N = quotient(R, "x1*y1 + x2*y2", {"y1", "y2"});
  const auto& mfB = e.mfs[1].second;  // stably B/(x1,x2)
  EXPECT_EQ(tor_dims(mfB, N, 4).dims, (Dims{0, 1, 0, 1}));
  const auto& mfA = e.mfs[0].second;
  EXPECT_EQ(ext_dims(mfA, N, 4).dims, (Dims{1, 0, 1, 0}));
}

TEST(TorDims, FreeSecondArgumentVanishes) {
  for (const auto& e : standard_corpus())
    for (const auto& [name, mf] : e.mfs) {
      EXPECT_EQ(tor_dims(mf, cokernel(free_mf(e.f)), 4).dims, (Dims{0, 0, 0, 0})) << e.name << ":" << name;
      EXPECT_EQ(ext_dims(mf, cokernel(free_mf(e.f)), 4).dims, (Dims{0, 0, 0, 0})) << e.name << ":" << name;
    }
}

TEST(TorDims, Errors) {
  auto e = node_entry(CoeffDomain::rationals());
  const auto& x = e.mfs[0].second;
  EXPECT_EQ(code_of([&] { tor_dims(x, cokernel(x), 1); }), ErrorCode::SPEC_MALFORMED);
  auto other = quadric_entry(CoeffDomain::rationals());
  EXPECT_EQ(code_of([&] { tor_dims(x, cokernel(other.mfs[0].second), 2); }), ErrorCode::F_MISMATCH);
  // non-isolated: f = x^2 in k[x,y]
  auto R = qq({"x", "y"});
  auto nx = validate_mf(M(R, {{"x"}}), M(R, {{"x"}}), P(R, "x^2"));
  EXPECT_EQ(code_of([&] { tor_dims(nx, cokernel(nx), 2); }), ErrorCode::NONFINITE_TOR);
  EXPECT_EQ(code_of([&] { ext_dims(nx, cokernel(nx), 2); }), ErrorCode::NONFINITE_EXT);
}

TEST(TorDims, MatchesGradedOracleOnSmallCases) {
  auto Q = CoeffDomain::rationals();
  std::vector<CorpusEntry> small = {node_entry(Q), binary_quadric_entry(Q), cusp_cubic_entry(Q), a1_surface_entry(Q)};
  for (const auto& e : small)
    for (const auto& [mname, mf] : e.mfs)
      for (const auto& [nname, nf] : e.mfs) {
        auto N = cokernel(nf);
        auto tor = tor_dims(mf, N, 2);
        auto ext = ext_dims(mf, N, 2);
        SCOPED_TRACE(e.name + ":" + mname + "," + nname);
        EXPECT_EQ(tor.at(1), oracle::tor_oracle(mf, N, 1, -8, 10).total);
        EXPECT_EQ(tor.at(2), oracle::tor_oracle(mf, N, 2, -8, 10).total);
        EXPECT_EQ(ext.at(1), oracle::ext_oracle(mf, N, 1, -14, 6).total);
        EXPECT_EQ(ext.at(2), oracle::ext_oracle(mf, N, 2, -14, 6).total);
      }
}

TEST(TorDims, QuadricMatchesGradedOracle) {
  auto e = quadric_entry(CoeffDomain::rationals());
  auto N = quotient(e.f.ring_ptr(), "x1*y1 + x2*y2", {"y1", "y2"});
  for (const auto& [name, mf] : e.mfs) {
    SCOPED_TRACE(name);
    auto tor = tor_dims(mf, N, 2);
    auto ext = ext_dims(mf, N, 2);
    EXPECT_EQ(tor.at(1), oracle::tor_oracle(mf, N, 1, -2, 5).total);
    EXPECT_EQ(tor.at(2), oracle::tor_oracle(mf, N, 2, -2, 5).total);
    EXPECT_EQ(ext.at(1), oracle::ext_oracle(mf, N, 1, -5, 2).total);
    EXPECT_EQ(ext.at(2), oracle::ext_oracle(mf, N, 2, -5, 2).total);
  }
}

TEST(TorDims, OracleSupportIsBounded) {
  // widening the degree range does not change the oracle totals
  auto e = node_entry(CoeffDomain::rationals());
  const auto& x = e.mfs[0].second;
  auto N = cokernel(x);
  EXPECT_EQ(oracle::tor_oracle(x, N, 1, -8, 10).total, oracle::tor_oracle(x, N, 1, -12, 16).total);
  EXPECT_EQ(oracle::tor_oracle(x, N, 1, -8, 10).by_degree, (std::map<int, std::size_t>{{1, 1}}));
}

TEST(Properties, PeriodicitySymmetryAdditivity) {
  auto pairs = corpus_pairs(standard_corpus());
  ASSERT_GE(pairs.size(), 20u);
  for (const auto& p : pairs) {
    SCOPED_TRACE(p.label);
    auto t = tor_dims(p.M, cokernel(p.N), 6);
    auto x = ext_dims(p.M, cokernel(p.N), 6);
    EXPECT_TRUE(t.periodic());
    EXPECT_TRUE(x.periodic());
    EXPECT_EQ(t.dims, tor_dims(p.N, cokernel(p.M), 6).dims);
  }
  for (const auto& e : standard_corpus()) {
    if (e.mfs.size() < 2) continue;
    const auto& a = e.mfs[0].second;
    const auto& b = e.mfs[1].second;
    auto sum = direct_sum(a, b);
    for (const auto& [name, n] : e.mfs) {
      auto ts = tor_dims(sum, cokernel(n), 2);
      auto ta = tor_dims(a, cokernel(n), 2);
      auto tb = tor_dims(b, cokernel(n), 2);
      for (std::size_t i = 1; i <= 2; ++i) EXPECT_EQ(ts.at(i), ta.at(i) + tb.at(i)) << e.name << ":" << name;
    }
  }
}

TEST(Properties, IntegralDataGivesSameDimsAfterScaling) {
  // clearing denominators does not change the answer
  auto R = qq({"x", "y"});
  auto half = validate_mf(M(R, {{"1/2*x"}}), M(R, {{"2*y"}}), P(R, "x*y"));
  auto whole = validate_mf(M(R, {{"x"}}), M(R, {{"y"}}), P(R, "x*y"));
  EXPECT_EQ(tor_dims(half, cokernel(half), 4).dims, tor_dims(whole, cokernel(whole), 4).dims);
}

TEST(ChiHigher, NodeValues) {
  auto e = node_entry(CoeffDomain::rationals());
  const auto& x = e.mfs[0].second;
  const auto& y = e.mfs[1].second;
  EXPECT_EQ(chi_higher(x, cokernel(y), 1), 0);
  EXPECT_EQ(oracle::tor1_over_S_oracle(x, cokernel(y), -4, 8).total, 0u);
  EXPECT_EQ(code_of([&] { chi_higher(x, cokernel(x), 1); }), ErrorCode::INFINITE_LENGTH);
  EXPECT_EQ(chi_higher(x, cokernel(x), 2), 0);
  EXPECT_EQ(chi_higher(x, cokernel(x), 7), 0);
  EXPECT_EQ(code_of([&] { chi_higher(x, cokernel(y), 0); }), ErrorCode::SPEC_MALFORMED);
}

TEST(ChiHigher, MatchesOracleWhenFinite) {
  auto e = quadric_entry(CoeffDomain::rationals());
  auto N = quotient(e.f.ring_ptr(), "x1*y1 + x2*y2", {"x1", "x2", "y1", "y2"});
  for (const auto& [name, mf] : e.mfs)
    EXPECT_EQ(static_cast<std::uint64_t>(chi_higher(mf, N, 1)), oracle::tor1_over_S_oracle(mf, N, -2, 5).total)
        << name;
}

TEST(FiniteFields, QuadricOverSmallPrimes) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto e = quadric_entry(CoeffDomain::prime_field(p));
    auto N = quotient(e.f.ring_ptr(), "x1*y1 + x2*y2", {"y1", "y2"});
    EXPECT_EQ(tor_dims(e.mfs[1].second, N, 4).dims, (Dims{0, 1, 0, 1})) << p;
  }
}
