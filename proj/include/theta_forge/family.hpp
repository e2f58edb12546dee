#ifndef THETA_FORGE_FAMILY_HPP
#define THETA_FORGE_FAMILY_HPP

#include <future>
#include <optional>
#include <string>
#include <vector>

#include "theta_forge/milnor.hpp"
#include "theta_forge/theta.hpp"

namespace theta_forge {

/// A closed point of Spec ℤ (GF(p)) or its generic point (QQ).
struct Fiber {
  std::uint32_t p = 0;  // 0 for QQ

  static Fiber rationals() { return {0}; }
  static Fiber prime(std::uint32_t p) {
    if (!is_prime(p)) throw Error(ErrorCode::SPEC_MALFORMED, std::to_string(p) + " is not prime");
    return {p};
  }
  /// "QQ", "Q", "0", a prime, or "GF(p)".
  static Fiber parse(std::string s) {
    if (s == "QQ" || s == "Q" || s == "0") return rationals();
    if (s.rfind("GF(", 0) == 0 && s.back() == ')') s = s.substr(3, s.size() - 4);
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 9)
      throw Error(ErrorCode::SPEC_MALFORMED, "bad fiber '" + s + "'");
    return prime(static_cast<std::uint32_t>(std::stoul(s)));
  }
  CoeffDomain domain() const { return p == 0 ? CoeffDomain::rationals() : CoeffDomain::prime_field(p); }
  std::string name() const { return domain().name(); }
  bool operator==(const Fiber&) const = default;
};

struct NamedFactorization {
  std::string name;
  PolyMatrix A;
  PolyMatrix B;
};

/// Integral family: f and its factorizations over ℤ, with the fibers to test.
struct FamilySpec {
  Polynomial f;
  std::vector<NamedFactorization> mfs;
  std::vector<Fiber> fibers;

  const NamedFactorization& find(const std::string& name) const {
    for (const auto& m : mfs)
      if (m.name == name) return m;
    throw Error(ErrorCode::SPEC_MALFORMED, "no matrix factorization named '" + name + "'");
  }
};

/// Checks the integral data: ℤ coefficients, f primitive and homogeneous,
/// every factorization exact over ℤ, fibers nonempty.
inline void check_family(const FamilySpec& spec) {
  const auto& ring = spec.f.ring_ptr();
  if (ring->coeffs().kind() != CoeffDomain::Kind::Integers)
    throw Error(ErrorCode::SPEC_MALFORMED, "family must be defined over ZZ, got " + ring->coeffs().name());
  if (spec.fibers.empty()) throw Error(ErrorCode::SPEC_MALFORMED, "family has no fibers");
  detail::require_homogeneous_f(spec.f);
  mpz_class content = 0;
  for (const auto& t : spec.f.terms()) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), t.coeff.get_num_mpz_t());
  if (content != 1)
    throw Error(ErrorCode::SPEC_MALFORMED, "f = " + spec.f.to_string() + " is not primitive (content " +
                                               content.get_str() + ")");
  for (const auto& m : spec.mfs) {
    try {
      validate_mf(m.A, m.B, spec.f);
    } catch (const Error& e) {
      throw Error(e.code(), m.name + ": " + e.detail());
    }
  }
}

struct FiberTheta {
  std::string left;
  std::string right;
  ThetaReport report;
};

struct FiberReport {
  Fiber fiber;
  bool valid = false;
  KDim tjurina;
  std::vector<FiberTheta> thetas;
  std::optional<std::string> skipped;
};

namespace detail {

inline MatrixFactorization specialize_mf(const NamedFactorization& m, const Polynomial& f, const RingPtr& target) {
  try {
    return validate_mf(m.A.specialize_into(target), m.B.specialize_into(target), f.specialize_into(target));
  } catch (const Error& e) {
    throw Error(e.code(), m.name + " over " + target->coeffs().name() + ": " + e.detail());
  }
}

/// Validation and the requested θ values on one fiber.
inline FiberReport run_fiber(const FamilySpec& spec, const Fiber& fiber,
                             const std::vector<std::pair<std::string, std::string>>& pairs, std::size_t window) {
  FiberReport r;
  r.fiber = fiber;
  auto target = std::make_shared<const PolyRing>(spec.f.ring().with_coeffs(fiber.domain()));
  Polynomial fk = spec.f.specialize_into(target);
  if (fk.degree() != spec.f.degree()) {
    r.skipped = "f degenerates modulo " + std::to_string(fiber.p);
    return r;
  }
  r.tjurina = tjurina_check(fk);
  if (r.tjurina.infinite) {
    r.skipped = "singular locus of f over " + fiber.name() + " is not isolated";
    return r;
  }
  std::vector<MatrixFactorization> mfs;
  for (const auto& m : spec.mfs) mfs.push_back(specialize_mf(m, spec.f, target));
  r.valid = true;
  auto index = [&](const std::string& name) {
    for (std::size_t i = 0; i < spec.mfs.size(); ++i)
      if (spec.mfs[i].name == name) return i;
    throw Error(ErrorCode::SPEC_MALFORMED, "no matrix factorization named '" + name + "'");
  };
  for (const auto& [a, b] : pairs) r.thetas.push_back({a, b, theta(mfs[index(a)], mfs[index(b)], window)});
  return r;
}

inline std::vector<FiberReport> run_fibers(const FamilySpec& spec,
                                           const std::vector<std::pair<std::string, std::string>>& pairs,
                                           std::size_t window, bool parallel) {
  check_family(spec);
  for (const auto& [a, b] : pairs) {
    spec.find(a);
    spec.find(b);
  }
  std::vector<FiberReport> out;
  if (!parallel || spec.fibers.size() < 2) {
    for (const auto& fb : spec.fibers) out.push_back(run_fiber(spec, fb, pairs, window));
    return out;
  }
  std::vector<std::future<FiberReport>> jobs;
  for (const auto& fb : spec.fibers)
    jobs.push_back(std::async(std::launch::async, [&spec, fb, &pairs, window] {
      return run_fiber(spec, fb, pairs, window);
    }));
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

}  // namespace detail

/// Per fiber: specialize f, compute its Tjurina number, re-validate every
/// factorization. Reports come back in fiber order.
inline std::vector<FiberReport> validate_family(const FamilySpec& spec, bool parallel = true) {
  return detail::run_fibers(spec, {}, 2, parallel);
}

enum class Constancy { Constant, Nonconstant };

inline std::string to_string(Constancy c) { return c == Constancy::Constant ? "CONSTANT" : "NONCONSTANT"; }

struct ConstancyReport {
  std::string left;
  std::string right;
  std::vector<FiberReport> fibers;
  std::optional<std::int64_t> value;  // common θ when constant
  Constancy status = Constancy::Constant;
};

/// θ of one pair on every valid fiber of the family.
inline ConstancyReport theta_constancy(const FamilySpec& spec, const std::pair<std::string, std::string>& pair,
                                       std::size_t window = 2, bool parallel = true) {
  ConstancyReport r{pair.first, pair.second, detail::run_fibers(spec, {pair}, window, parallel), std::nullopt,
                    Constancy::Constant};
  bool any = false;
  for (const auto& fb : r.fibers) {
    if (!fb.valid) continue;
    std::int64_t v = fb.thetas.front().report.value;
    if (!any) r.value = v;
    else if (*r.value != v) r.status = Constancy::Nonconstant;
    any = true;
  }
  if (!any) throw Error(ErrorCode::INVALID_FIBER, "no fiber of the family is valid");
  if (r.status == Constancy::Nonconstant) r.value.reset();
  return r;
}

struct LiftReport {
  AdjugateLift lift;
  ConstancyReport constancy;
  std::size_t n = 0;             // number of variables minus one
  std::string sign_rule;         // "theta <= 0", "theta >= 0" or "none"
  bool equal_across_fibers = false;
  bool sign_ok = true;
  std::optional<std::int64_t> theta;
};

/// Lifts A over GF(p) to ℤ, completes it by the adjugate, and compares
/// θ(M, M) (or θ(M, coker B) when !self_pair) on the fibers QQ and GF(p).
inline LiftReport lift_and_compare(const PolyMatrix& A, bool self_pair = true, std::size_t window = 2) {
  const std::uint32_t p = A.ring().coeffs().modulus();
  AdjugateLift lift = lift_adjugate(A);
  if (lift.f.is_constant())
    throw Error(ErrorCode::SINGULAR_MATRIX, "det of the lift is the constant " + lift.f.to_string());
  // normalize the lifted equation to be primitive with positive leading coefficient
  mpz_class content = 0;
  for (const auto& t : lift.f.terms()) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), t.coeff.get_num_mpz_t());
  if (sgn(lift.f.leading().coeff) < 0) content = -content;
  const Polynomial c = Polynomial::constant(lift.f.ring_ptr(), Scalar(content));
  Polynomial f = *Polynomial::divide_exact(lift.f, c);
  PolyMatrix B = lift.B;
  for (std::size_t i = 0; i < B.rows(); ++i)
    for (std::size_t j = 0; j < B.cols(); ++j) {
      auto q = Polynomial::divide_exact(lift.B(i, j), c);
      if (!q)
        throw Error(ErrorCode::SPEC_MALFORMED, "det of the lift has content " + content.get_str() +
                                                   " which does not divide the adjugate");
      B(i, j) = std::move(*q);
    }
  FamilySpec spec{f, {{"M", lift.A, B}, {"N", B, lift.A}}, {Fiber::rationals(), Fiber::prime(p)}};
  LiftReport r{{lift.A, B, f}, theta_constancy(spec, {"M", self_pair ? "M" : "N"}, window), 0, "none", false, true,
               std::nullopt};
  r.n = A.ring().nvars() - 1;
  r.equal_across_fibers = r.constancy.status == Constancy::Constant;
  r.theta = r.constancy.value;
  if (self_pair && r.n % 4 == 1) r.sign_rule = "theta <= 0";
  if (self_pair && r.n % 4 == 3) r.sign_rule = "theta >= 0";
  for (const auto& fb : r.constancy.fibers) {
    if (!fb.valid) continue;
    std::int64_t v = fb.thetas.front().report.value;
    if (r.sign_rule == "theta <= 0" && v > 0) r.sign_ok = false;
    if (r.sign_rule == "theta >= 0" && v < 0) r.sign_ok = false;
  }
  return r;
}

}  // namespace theta_forge

#endif  // THETA_FORGE_FAMILY_HPP
