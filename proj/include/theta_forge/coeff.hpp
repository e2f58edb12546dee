#ifndef THETA_FORGE_COEFF_HPP
#define THETA_FORGE_COEFF_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "theta_forge/error.hpp"

namespace theta_forge {

/// Exact scalars are GMP rationals. Over ZZ the denominator is always 1,
/// over GF(p) the value is the canonical residue 0..p-1.
using Scalar = mpq_class;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

class CoeffDomain {
 public:
  enum class Kind { Integers, Rationals, PrimeField };

  static CoeffDomain integers() { return CoeffDomain(Kind::Integers, 0); }
  static CoeffDomain rationals() { return CoeffDomain(Kind::Rationals, 0); }
  static CoeffDomain prime_field(std::uint32_t p) {
    if (!is_prime(p))
      throw Error(ErrorCode::SPEC_MALFORMED, "GF(" + std::to_string(p) + ") requires a prime modulus");
    return CoeffDomain(Kind::PrimeField, p);
  }

  Kind kind() const { return kind_; }
  std::uint32_t modulus() const { return p_; }
  bool is_field() const { return kind_ != Kind::Integers; }
  /// 0 for ZZ and QQ.
  std::uint32_t characteristic() const { return p_; }

  friend bool operator==(const CoeffDomain&, const CoeffDomain&) = default;

  /// Brings an arbitrary rational into canonical form for this domain.
  void normalize(Scalar& a) const {
    switch (kind_) {
      case Kind::Rationals:
        a.canonicalize();
        return;
      case Kind::Integers:
        a.canonicalize();
        if (a.get_den() != 1)
          throw Error(ErrorCode::COEFF_DOMAIN_NOT_FIELD, "non-integral value " + a.get_str() + " over ZZ");
        return;
      case Kind::PrimeField: {
        mpz_class m(p_);
        mpz_class num = a.get_num() % m;
        if (num < 0) num += m;
        if (a.get_den() != 1) {
          mpz_class den = a.get_den() % m;
          if (den < 0) den += m;
          if (den == 0)
            throw Error(ErrorCode::COEFF_DOMAIN_NOT_FIELD,
                        "denominator divisible by " + std::to_string(p_));
          mpz_class inv;
          mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
          num = (num * inv) % m;
        }
        a = Scalar(num);
        return;
      }
    }
  }

  Scalar from_int(long v) const {
    Scalar s(v);
    normalize(s);
    return s;
  }
  Scalar from_mpz(const mpz_class& v) const {
    Scalar s(v);
    normalize(s);
    return s;
  }

  Scalar add(const Scalar& a, const Scalar& b) const {
    if (kind_ == Kind::PrimeField) {
      std::uint64_t r = a.get_num().get_ui() + b.get_num().get_ui();
      if (r >= p_) r -= p_;
      return Scalar(static_cast<unsigned long>(r));
    }
    return a + b;
  }
  Scalar sub(const Scalar& a, const Scalar& b) const {
    if (kind_ == Kind::PrimeField) {
      std::uint64_t x = a.get_num().get_ui(), y = b.get_num().get_ui();
      return Scalar(static_cast<unsigned long>(x >= y ? x - y : x + p_ - y));
    }
    return a - b;
  }
  Scalar mul(const Scalar& a, const Scalar& b) const {
    if (kind_ == Kind::PrimeField) {
      std::uint64_t r = (a.get_num().get_ui() * b.get_num().get_ui()) % p_;
      return Scalar(static_cast<unsigned long>(r));
    }
    return a * b;
  }
  Scalar neg(const Scalar& a) const {
    if (kind_ == Kind::PrimeField) {
      std::uint64_t x = a.get_num().get_ui();
      return Scalar(static_cast<unsigned long>(x == 0 ? 0 : p_ - x));
    }
    return -a;
  }
  Scalar inv(const Scalar& a) const {
    if (sgn(a) == 0) throw Error(ErrorCode::SINGULAR_MATRIX, "division by zero scalar");
    if (kind_ == Kind::Integers) {
      if (abs(a) != 1)
        throw Error(ErrorCode::COEFF_DOMAIN_NOT_FIELD, "cannot invert " + a.get_str() + " over ZZ");
      return a;
    }
    if (kind_ == Kind::PrimeField) {
      mpz_class r, m(p_);
      mpz_invert(r.get_mpz_t(), a.get_num().get_mpz_t(), m.get_mpz_t());
      return Scalar(r);
    }
    return 1 / a;
  }
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

  /// Integer representative in the symmetric range [-(p-1)/2, (p-1)/2].
  mpz_class symmetric_lift(const Scalar& a) const {
    mpz_class v = a.get_num();
    if (kind_ == Kind::PrimeField && v > p_ / 2) v -= p_;
    return v;
  }

  std::string name() const {
    switch (kind_) {
      case Kind::Integers: return "ZZ";
      case Kind::Rationals: return "QQ";
      case Kind::PrimeField: return "GF(" + std::to_string(p_) + ")";
    }
    return "?";
  }

 private:
  CoeffDomain(Kind k, std::uint32_t p) : kind_(k), p_(p) {}
  Kind kind_;
  std::uint32_t p_;
};

}  // namespace theta_forge

#endif  // THETA_FORGE_COEFF_HPP
