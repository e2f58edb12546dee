#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "theta_forge/parser.hpp"
#include "theta_forge/poly_matrix.hpp"

namespace theta_forge {
namespace {

using testing::M;
using testing::P;

TEST(Parse, QuadricCanonicalForm) {
  auto R = testing::qq({"x1", "x2", "y1", "y2"});
  Polynomial f = P(R, "x1*y1 + x2*y2");
  EXPECT_EQ(f.size(), 2u);
  EXPECT_TRUE(f.is_homogeneous());
  EXPECT_EQ(f.degree(), 2);
  EXPECT_EQ(f.to_string(), "x1*y1 + x2*y2");
  EXPECT_EQ(P(R, "y2*x2 + (x1)*y1"), f);
}

TEST(Parse, ZeroIsAdditiveIdentity) {
  auto R = testing::qq({"x", "y"});
  Polynomial z = P(R, "0");
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.to_string(), "0");
  EXPECT_EQ(P(R, "x - x"), z);
}

TEST(Parse, DerivativeVanishesInCharacteristicThree) {
  auto R = testing::gf(3, {"x", "y"});
  Polynomial f = P(R, "x^3 + y^3");
  EXPECT_TRUE(f.derivative(0).is_zero());
  EXPECT_TRUE(f.derivative(1).is_zero());
}

TEST(Parse, Errors) {
  auto R = testing::qq({"x", "y"});
  auto code_of = [&](const std::string& s) {
    try {
      parse_poly(s, R);
    } catch (const Error& e) {
      return e.code();
    }
    ADD_FAILURE() << "no error for " << s;
    return ErrorCode::VIOLATION;
  };
  EXPECT_EQ(code_of("x + z"), ErrorCode::UNDECLARED_VARIABLE);
  EXPECT_EQ(code_of("x^-2"), ErrorCode::NEGATIVE_EXPONENT);
  EXPECT_EQ(code_of("2x"), ErrorCode::SYNTAX_ERROR);
  EXPECT_EQ(code_of("x y"), ErrorCode::SYNTAX_ERROR);
  EXPECT_EQ(code_of(""), ErrorCode::SYNTAX_ERROR);
  EXPECT_EQ(code_of("(x + y"), ErrorCode::SYNTAX_ERROR);
  EXPECT_EQ(code_of("x/y"), ErrorCode::SYNTAX_ERROR);
}

TEST(Parse, SyntaxErrorCarriesPosition) {
  auto R = testing::qq({"x1", "y1"});
  try {
    parse_poly("x1*", R);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SYNTAX_ERROR);
    ASSERT_TRUE(e.position().has_value());
    EXPECT_EQ(e.position()->line, 1);
    EXPECT_EQ(e.position()->column, 4);
  }
  try {
    parse_poly("x1 +\n  + q", R);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UNDECLARED_VARIABLE);
    EXPECT_EQ(e.position()->line, 2);
    EXPECT_EQ(e.position()->column, 5);
  }
}

TEST(Parse, PrintParseFixedPointOnRandomPolynomials) {
  std::mt19937 rng(7);
  for (auto R : {testing::qq({"a", "b", "c"}), testing::gf(7, {"a", "b", "c"}), testing::zz({"a", "b", "c"})}) {
    for (int k = 0; k < 200; ++k) {
      Polynomial p = testing::random_poly(R, rng, 4, 6);
      if (R->coeffs().kind() == CoeffDomain::Kind::Rationals) p = p.scaled(Scalar(1, 3));
      Polynomial q = parse_poly(p.to_string(), R);
      ASSERT_EQ(p, q) << p.to_string();
      EXPECT_EQ(q.to_string(), p.to_string());
    }
  }
}

TEST(RingAxioms, RandomTriples) {
  std::mt19937 rng(11);
  for (auto R : {testing::qq({"x", "y", "z"}), testing::gf(5, {"x", "y", "z"})}) {
    for (int k = 0; k < 100; ++k) {
      Polynomial a = testing::random_poly(R, rng, 3, 4);
      Polynomial b = testing::random_poly(R, rng, 3, 4);
      Polynomial c = testing::random_poly(R, rng, 3, 4);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ(a * b, b * a);
      EXPECT_TRUE((a - a).is_zero());
    }
  }
}

TEST(Specialize, ReducesCoefficients) {
  auto Z = testing::zz({"x", "y"});
  Polynomial p = P(Z, "3*x^2");
  EXPECT_TRUE(p.specialize(CoeffDomain::prime_field(3)).is_zero());
  Polynomial q = P(Z, "5*x + 2*y").specialize(CoeffDomain::prime_field(5));
  EXPECT_EQ(q.to_string(), "2*y");

  auto Z4 = testing::zz({"x1", "x2", "y1", "y2"});
  Polynomial f = P(Z4, "x1*y1 + x2*y2").specialize(CoeffDomain::rationals());
  EXPECT_EQ(f, P(testing::qq({"x1", "x2", "y1", "y2"}), "x1*y1 + x2*y2"));
}

TEST(Specialize, IsRingHomomorphism) {
  std::mt19937 rng(3);
  auto Z = testing::zz({"x", "y", "z"});
  for (std::uint32_t p : {2u, 3u, 7u}) {
    auto target = CoeffDomain::prime_field(p);
    for (int k = 0; k < 80; ++k) {
      Polynomial a = testing::random_poly(Z, rng, 3, 5, 20);
      Polynomial b = testing::random_poly(Z, rng, 3, 5, 20);
      Polynomial sa = a.specialize(target), sb = b.specialize(target);
      EXPECT_EQ((a * b).specialize(target), sa * sb);
      EXPECT_EQ((a + b).specialize(target), sa + sb);
    }
  }
}

TEST(Specialize, PreservesHomogeneity) {
  std::mt19937 rng(5);
  auto Z = testing::zz({"x", "y", "z"});
  for (int k = 0; k < 50; ++k) {
    Polynomial a = testing::random_homogeneous(Z, rng, 3, 5, 10);
    Polynomial s = a.specialize(CoeffDomain::prime_field(3));
    EXPECT_TRUE(s.is_zero() || (s.is_homogeneous() && s.degree() == a.degree()));
  }
}

TEST(Adjugate, TwoByTwo) {
  auto R = testing::qq({"x", "y", "z", "w"});
  auto [adj, det] = adjugate_det(M(R, {{"x", "y"}, {"z", "w"}}));
  EXPECT_EQ(adj, M(R, {{"w", "-y"}, {"-z", "x"}}));
  EXPECT_EQ(det, P(R, "x*w - y*z"));
}

TEST(Adjugate, OneByOne) {
  auto R = testing::qq({"x"});
  auto [adj, det] = adjugate_det(M(R, {{"x"}}));
  EXPECT_EQ(adj, M(R, {{"1"}}));
  EXPECT_EQ(det, P(R, "x"));
}

TEST(Adjugate, QuadricMatrix) {
  auto R = testing::qq({"x1", "x2", "y1", "y2"});
  auto [adj, det] = adjugate_det(M(R, {{"x1", "-y2"}, {"x2", "y1"}}));
  // cofactor expansion by hand: x1*y1 - (-y2)*x2
  EXPECT_EQ(det, P(R, "x1*y1 + x2*y2"));
  EXPECT_EQ(adj, M(R, {{"y1", "y2"}, {"-x2", "x1"}}));
}

TEST(Adjugate, NotSquare) {
  auto R = testing::qq({"x"});
  try {
    adjugate_det(PolyMatrix(R, 2, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NOT_SQUARE);
  }
}

TEST(Adjugate, RandomMatricesSatisfyIdentity) {
  std::mt19937 rng(13);
  for (auto R : {testing::qq({"x", "y"}), testing::gf(3, {"x", "y"}), testing::zz({"x", "y"})}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      for (int k = 0; k < 4; ++k) {
        PolyMatrix m(R, n, n);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) m(i, j) = testing::random_poly(R, rng, 1, 2, 3);
        auto [adj, det] = adjugate_det(m);
        EXPECT_EQ(m * adj, PolyMatrix::scalar(det, n));
        EXPECT_EQ(adj * m, PolyMatrix::scalar(det, n));
      }
    }
  }
}

TEST(Adjugate, BareissAgreesWithCofactorOnFiveByFive) {
  std::mt19937 rng(17);
  auto R = testing::zz({"x", "y"});
  for (int k = 0; k < 3; ++k) {
    PolyMatrix m(R, 5, 5);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) m(i, j) = testing::random_poly(R, rng, 1, 2, 2);
    // Laplace along the first row with 4x4 cofactor minors.
    Polynomial laplace(R);
    for (std::size_t j = 0; j < 5; ++j) {
      Polynomial t = m(0, j) * determinant(m.minor_matrix(0, j));
      laplace = j % 2 == 0 ? laplace + t : laplace - t;
    }
    EXPECT_EQ(determinant(m), laplace);
    auto [adj, det] = adjugate_det(m);
    EXPECT_EQ(det, laplace);
  }
}

TEST(ExactDivision, DetectsNonDivisors) {
  auto R = testing::qq({"x", "y"});
  auto q = Polynomial::divide_exact(P(R, "x^2 - y^2"), P(R, "x + y"));
  ASSERT_TRUE(q);
  EXPECT_EQ(*q, P(R, "x - y"));
  EXPECT_FALSE(Polynomial::divide_exact(P(R, "x^2 + y^2"), P(R, "x + y")));
  auto Z = testing::zz({"x"});
  EXPECT_FALSE(Polynomial::divide_exact(P(Z, "3*x"), P(Z, "2")));
}

}  // namespace
}  // namespace theta_forge
