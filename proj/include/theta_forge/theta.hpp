#ifndef THETA_FORGE_THETA_HPP
#define THETA_FORGE_THETA_HPP

#include <optional>
#include <string>

#include "theta_forge/stable_homology.hpp"

namespace theta_forge {

/// θ (or the Herbrand difference h) from a stable window: value = dims[2] - dims[1].
struct ThetaReport {
  std::int64_t value = 0;
  std::uint64_t even_dim = 0;
  std::uint64_t odd_dim = 0;
  TorProfile profile;
};

inline ThetaReport make_report(TorProfile prof) {
  ThetaReport r;
  r.odd_dim = prof.at(1);
  r.even_dim = prof.at(2);
  r.value = static_cast<std::int64_t>(r.even_dim) - static_cast<std::int64_t>(r.odd_dim);
  r.profile = std::move(prof);
  return r;
}

/// Hochster's theta pairing of coker(A_M) and coker(A_N).
inline ThetaReport theta(const MatrixFactorization& M, const MatrixFactorization& N, std::size_t window = 2) {
  return make_report(tor_dims(M, cokernel(N), window));
}

/// Herbrand difference: the same with Ext in place of Tor.
inline ThetaReport herbrand(const MatrixFactorization& M, const MatrixFactorization& N, std::size_t window = 2) {
  return make_report(ext_dims(M, cokernel(N), window));
}

/// Second argument given by an arbitrary presentation over R.
inline ThetaReport theta(const MatrixFactorization& M, const PresentedModule& N, std::size_t window = 2) {
  return make_report(tor_dims(M, N, window));
}
inline ThetaReport herbrand(const MatrixFactorization& M, const PresentedModule& N, std::size_t window = 2) {
  return make_report(ext_dims(M, N, window));
}

enum class RigidityStatus { Consistent, Violation, NotApplicable };

inline std::string to_string(RigidityStatus s) {
  switch (s) {
    case RigidityStatus::Consistent: return "CONSISTENT";
    case RigidityStatus::Violation: return "VIOLATION";
    case RigidityStatus::NotApplicable: return "NOT_APPLICABLE";
  }
  return "?";
}

struct RigidityReport {
  ThetaReport theta;
  RigidityStatus status = RigidityStatus::NotApplicable;
  std::optional<std::size_t> first_vanishing;  // least n with Tor_n = 0
};

/// When θ = 0 the pair must be Tor-rigid: once some Tor_n vanishes, all
/// later ones in the window vanish too.
inline RigidityReport rigidity_of(ThetaReport t) {
  RigidityReport r{std::move(t), RigidityStatus::NotApplicable, std::nullopt};
  if (r.theta.value != 0) return r;
  const auto& dims = r.theta.profile.dims;
  r.status = RigidityStatus::Consistent;
  for (std::size_t i = 0; i < dims.size(); ++i)
    if (dims[i] == 0) {
      r.first_vanishing = i + 1;
      for (std::size_t j = i; j < dims.size(); ++j)
        if (dims[j] != 0) r.status = RigidityStatus::Violation;
      break;
    }
  return r;
}

inline RigidityReport rigidity_scan(const MatrixFactorization& M, const MatrixFactorization& N, std::size_t window) {
  if (window < 4) throw Error(ErrorCode::SPEC_MALFORMED, "rigidity window must be at least 4");
  return rigidity_of(theta(M, N, window));
}

}  // namespace theta_forge

#endif  // THETA_FORGE_THETA_HPP
