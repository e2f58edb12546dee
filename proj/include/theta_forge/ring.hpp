#ifndef THETA_FORGE_RING_HPP
#define THETA_FORGE_RING_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "theta_forge/coeff.hpp"

namespace theta_forge {

inline constexpr std::size_t kMaxVars = 12;

/// Dense exponent vector. Unused trailing slots stay zero, so equality and
/// hashing do not need the variable count.
class Monomial {
 public:
  using Exponent = std::uint16_t;

  Monomial() { exps_.fill(0); }

  static Monomial variable(std::size_t i, Exponent e = 1) {
    Monomial m;
    m.exps_[i] = e;
    return m;
  }

  Exponent operator[](std::size_t i) const { return exps_[i]; }
  Exponent& operator[](std::size_t i) { return exps_[i]; }

  int total_degree() const {
    int d = 0;
    for (auto e : exps_) d += e;
    return d;
  }
  int weighted_degree(const std::vector<int>& w) const {
    int d = 0;
    for (std::size_t i = 0; i < w.size(); ++i) d += w[i] * exps_[i];
    return d;
  }
  bool is_one() const {
    return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e == 0; });
  }

  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exps_[i] > o.exps_[i]) return false;
    return true;
  }
  /// this / o; requires o | this.
  Monomial operator/(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.exps_[i] = exps_[i] - o.exps_[i];
    return r;
  }
  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.exps_[i] = exps_[i] + o.exps_[i];
    return r;
  }
  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
    return r;
  }
  static Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.exps_[i] = std::min(a.exps_[i], b.exps_[i]);
    return r;
  }
  static bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (a.exps_[i] && b.exps_[i]) return false;
    return true;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto e : exps_) h = (h ^ e) * 1099511628211ull;
    return h;
  }

 private:
  std::array<Exponent, kMaxVars> exps_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

enum class OrderKind { GRevLex, GLex };

/// Polynomial ring over a coefficient domain with named, weighted variables.
class PolyRing {
 public:
  PolyRing(CoeffDomain coeffs, std::vector<std::string> vars, std::vector<int> weights = {})
      : coeffs_(coeffs), vars_(std::move(vars)), weights_(std::move(weights)) {
    if (vars_.size() > kMaxVars)
      throw Error(ErrorCode::SPEC_MALFORMED,
                  "at most " + std::to_string(kMaxVars) + " variables are supported");
    if (weights_.empty()) weights_.assign(vars_.size(), 1);
    if (weights_.size() != vars_.size())
      throw Error(ErrorCode::SPEC_MALFORMED, "one weight per variable required");
    std::set<std::string> seen;
    for (const auto& v : vars_) {
      if (v.empty()) throw Error(ErrorCode::SPEC_MALFORMED, "empty variable name");
      if (!seen.insert(v).second) throw Error(ErrorCode::SPEC_MALFORMED, "duplicate variable " + v);
    }
    for (int w : weights_)
      if (w <= 0) throw Error(ErrorCode::SPEC_MALFORMED, "variable weights must be positive");
  }

  const CoeffDomain& coeffs() const { return coeffs_; }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<int>& weights() const { return weights_; }
  std::size_t nvars() const { return vars_.size(); }

  int degree(const Monomial& m) const { return m.weighted_degree(weights_); }

  /// Index of a variable, or -1.
  int index_of(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    return it == vars_.end() ? -1 : static_cast<int>(it - vars_.begin());
  }

  /// Same variables and grading over another coefficient domain.
  PolyRing with_coeffs(CoeffDomain c) const { return PolyRing(c, vars_, weights_); }

  /// Three-way comparison in the given monomial order.
  int compare(const Monomial& a, const Monomial& b, OrderKind order = OrderKind::GRevLex) const {
    int da = degree(a), db = degree(b);
    if (da != db) return da < db ? -1 : 1;
    const std::size_t n = nvars();
    if (order == OrderKind::GRevLex) {
      for (std::size_t i = n; i-- > 0;)
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    } else {
      for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
  }

  std::string monomial_string(const Monomial& m) const {
    std::string s;
    for (std::size_t i = 0; i < nvars(); ++i) {
      if (m[i] == 0) continue;
      if (!s.empty()) s += '*';
      s += vars_[i];
      if (m[i] > 1) s += '^' + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
  }

  std::string description() const {
    std::string s = coeffs_.name() + "[";
    for (std::size_t i = 0; i < nvars(); ++i) {
      if (i) s += ',';
      s += vars_[i];
      if (weights_[i] != 1) s += ":" + std::to_string(weights_[i]);
    }
    return s + "]";
  }

  friend bool operator==(const PolyRing&, const PolyRing&) = default;

 private:
  CoeffDomain coeffs_;
  std::vector<std::string> vars_;
  std::vector<int> weights_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

inline RingPtr make_ring(CoeffDomain c, std::vector<std::string> vars, std::vector<int> weights = {}) {
  return std::make_shared<const PolyRing>(c, std::move(vars), std::move(weights));
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || *a == *b; }

}  // namespace theta_forge

#endif  // THETA_FORGE_RING_HPP
