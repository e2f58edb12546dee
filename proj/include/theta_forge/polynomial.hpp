#ifndef THETA_FORGE_POLYNOMIAL_HPP
#define THETA_FORGE_POLYNOMIAL_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "theta_forge/ring.hpp"

namespace theta_forge {

struct Term {
  Monomial mono;
  Scalar coeff;
};

/// Sparse polynomial. Terms are kept strictly descending in the ring's
/// graded reverse lexicographic order with no zero coefficients.
class Polynomial {
 public:
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial constant(RingPtr ring, const Scalar& c) {
    Polynomial p(std::move(ring));
    Scalar v = c;
    p.ring_->coeffs().normalize(v);
    if (sgn(v) != 0) p.terms_.push_back({Monomial(), v});
    return p;
  }
  static Polynomial monomial(RingPtr ring, const Monomial& m, const Scalar& c = 1) {
    Polynomial p(std::move(ring));
    Scalar v = c;
    p.ring_->coeffs().normalize(v);
    if (sgn(v) != 0) p.terms_.push_back({m, v});
    return p;
  }
  static Polynomial variable(RingPtr ring, std::size_t i) {
    return monomial(std::move(ring), Monomial::variable(i));
  }
  /// Builds from unsorted terms; merges duplicates and drops zeros.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms) {
    Polynomial p(std::move(ring));
    const auto& R = *p.ring_;
    for (auto& t : terms) R.coeffs().normalize(t.coeff);
    std::sort(terms.begin(), terms.end(),
              [&](const Term& a, const Term& b) { return R.compare(a.mono, b.mono) > 0; });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
        p.terms_.back().coeff = R.coeffs().add(p.terms_.back().coeff, t.coeff);
      } else {
        if (!p.terms_.empty() && sgn(p.terms_.back().coeff) == 0) p.terms_.pop_back();
        p.terms_.push_back(std::move(t));
      }
    }
    if (!p.terms_.empty() && sgn(p.terms_.back().coeff) == 0) p.terms_.pop_back();
    return p;
  }

  const RingPtr& ring_ptr() const { return ring_; }
  const PolyRing& ring() const { return *ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Term& leading() const { return terms_.front(); }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  /// Nonzero constant, i.e. a unit over a field.
  bool is_nonzero_constant() const { return terms_.size() == 1 && terms_[0].mono.is_one(); }
  Scalar constant_term() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
    return 0;
  }

  /// Weighted degree of the leading term; -1 for zero.
  int degree() const { return terms_.empty() ? -1 : ring_->degree(terms_.front().mono); }

  bool is_homogeneous() const {
    for (const auto& t : terms_)
      if (ring_->degree(t.mono) != degree()) return false;
    return true;
  }

  Polynomial operator-() const {
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coeff = ring_->coeffs().neg(t.coeff);
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return combine(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return combine(a, b, true); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check_ring(a, b);
    if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
    const auto& K = a.ring_->coeffs();
    std::vector<Term> out;
    out.reserve(a.size() * b.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) out.push_back({s.mono * t.mono, K.mul(s.coeff, t.coeff)});
    return from_terms(a.ring_, std::move(out));
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial scaled(const Scalar& c) const {
    Scalar v = c;
    ring_->coeffs().normalize(v);
    if (sgn(v) == 0) return Polynomial(ring_);
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coeff = ring_->coeffs().mul(t.coeff, v);
    return r;
  }
  Polynomial times_monomial(const Monomial& m, const Scalar& c) const {
    if (sgn(c) == 0) return Polynomial(ring_);
    Polynomial r(*this);
    for (auto& t : r.terms_) {
      t.mono = t.mono * m;
      t.coeff = ring_->coeffs().mul(t.coeff, c);
    }
    return r;
  }

  Polynomial pow(unsigned e) const {
    Polynomial r = constant(ring_, 1), base = *this;
    while (e) {
      if (e & 1u) r *= base;
      e >>= 1u;
      if (e) base *= base;
    }
    return r;
  }

  Polynomial derivative(std::size_t var) const {
    const auto& K = ring_->coeffs();
    std::vector<Term> out;
    for (const auto& t : terms_) {
      if (t.mono[var] == 0) continue;
      Monomial m = t.mono;
      Scalar k = K.from_int(m[var]);
      m[var] -= 1;
      out.push_back({m, K.mul(t.coeff, k)});
    }
    return from_terms(ring_, std::move(out));
  }

  /// Coefficient-wise image in another domain over the same variables.
  Polynomial specialize(const CoeffDomain& target) const {
    auto r = std::make_shared<const PolyRing>(ring_->with_coeffs(target));
    return specialize_into(r);
  }
  Polynomial specialize_into(const RingPtr& target) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({t.mono, t.coeff});
    return from_terms(target, std::move(out));
  }

  /// Exact quotient a / b when b divides a, otherwise nullopt.
  static std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
    check_ring(a, b);
    if (b.is_zero()) return std::nullopt;
    const auto& K = a.ring_->coeffs();
    Polynomial rem = a, quot(a.ring_);
    const Term& lb = b.leading();
    while (!rem.is_zero()) {
      const Term& lr = rem.leading();
      if (!lb.mono.divides(lr.mono)) return std::nullopt;
      Scalar c;
      if (K.kind() == CoeffDomain::Kind::Integers) {
        mpz_class q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), lr.coeff.get_num_mpz_t(), lb.coeff.get_num_mpz_t());
        if (r != 0) return std::nullopt;
        c = Scalar(q);
      } else {
        c = K.div(lr.coeff, lb.coeff);
      }
      Monomial m = lr.mono / lb.mono;
      quot += monomial(a.ring_, m, c);
      rem -= b.times_monomial(m, c);
    }
    return quot;
  }

  /// Weighted-degree-d part.
  Polynomial homogeneous_part(int d) const {
    Polynomial r(ring_);
    for (const auto& t : terms_)
      if (ring_->degree(t.mono) == d) r.terms_.push_back(t);
    return r;
  }

  Scalar coefficient(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.mono == m) return t.coeff;
    return 0;
  }

  /// Canonical text: descending terms, explicit `*` and `^`.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& t : terms_) {
      Scalar c = t.coeff;
      bool negative = sgn(c) < 0;
      if (negative) c = -c;
      if (first) {
        if (negative) s += "-";
      } else {
        s += negative ? " - " : " + ";
      }
      first = false;
      const bool one = (c == 1);
      if (t.mono.is_one()) {
        s += c.get_str();
      } else {
        if (!one) s += c.get_str() + "*";
        s += ring_->monomial_string(t.mono);
      }
    }
    return s;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return same_ring(a.ring_, b.ring_);
  }

 private:
  static void check_ring(const Polynomial& a, const Polynomial& b) {
    if (!same_ring(a.ring_, b.ring_))
      throw Error(ErrorCode::RING_MISMATCH,
                  "operands live in " + a.ring_->description() + " and " + b.ring_->description());
  }

  static Polynomial combine(const Polynomial& a, const Polynomial& b, bool subtract) {
    check_ring(a, b);
    const auto& R = *a.ring_;
    const auto& K = R.coeffs();
    Polynomial r(a.ring_);
    r.terms_.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      int c = i == a.size() ? -1 : j == b.size() ? 1 : R.compare(a.terms_[i].mono, b.terms_[j].mono);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        const Term& t = b.terms_[j++];
        r.terms_.push_back({t.mono, subtract ? K.neg(t.coeff) : t.coeff});
      } else {
        Scalar v = subtract ? K.sub(a.terms_[i].coeff, b.terms_[j].coeff)
                            : K.add(a.terms_[i].coeff, b.terms_[j].coeff);
        if (sgn(v) != 0) r.terms_.push_back({a.terms_[i].mono, std::move(v)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  RingPtr ring_;
  std::vector<Term> terms_;
};

}  // namespace theta_forge

#endif  // THETA_FORGE_POLYNOMIAL_HPP
