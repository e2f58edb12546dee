#ifndef THETA_FORGE_STABLE_HOMOLOGY_HPP
#define THETA_FORGE_STABLE_HOMOLOGY_HPP

#include <string>
#include <vector>

#include "theta_forge/matrix_factorization.hpp"

namespace theta_forge {

/// Exact dimensions of Tor_i (or Ext^i) for i = 1..W; dims[0] is index 1.
struct TorProfile {
  std::vector<std::uint64_t> dims;
  std::string ring_tag;
  std::string left;
  std::string right;

  /// Dimension at homological index i >= 1.
  std::uint64_t at(std::size_t i) const { return dims.at(i - 1); }
  std::size_t window() const { return dims.size(); }
  bool periodic() const {
    for (std::size_t i = 0; i + 2 < dims.size(); ++i)
      if (dims[i] != dims[i + 2]) return false;
    return true;
  }
};

namespace detail {

inline std::vector<int> offset(std::vector<int> v, int by) {
  for (auto& x : v) x += by;
  return v;
}

/// Module N^m = ⊕_i S(-shift_i) ⊗ N over S, as S^{m·n} modulo the relation
/// blocks of N and f.
struct TensorSetting {
  const MatrixFactorization& mf;
  const PresentedModule& N;

  std::size_t dim() const { return mf.size() * N.rank(); }

  std::vector<int> shifts(const std::vector<int>& twists) const {
    std::vector<int> s;
    for (int t : twists)
      for (int u : N.ambient.shifts) s.push_back(t + u);
    return s;
  }

  PolyMatrix relations() const {
    const std::size_t P = dim();
    return PolyMatrix::hconcat(N.relations.identity_kron(mf.size()), PolyMatrix::scalar(mf.f, P));
  }
};

/// dim_k of ker(out) / (im(in) + D) on S^P / D, where D is generated by the
/// columns of `rel`. `mid_shifts` grade the middle module and `target_shifts`
/// the target of `out`.
inline KDim homology_dim(const PolyMatrix& out, const PolyMatrix& in, const PolyMatrix& rel,
                         const std::vector<int>& mid_shifts, const std::vector<int>& target_shifts) {
  const std::size_t P = out.cols();
  const auto& ring = out.ring_ptr();
  PolyMatrix syz = syzygy(PolyMatrix::hconcat(out, rel), target_shifts);
  PolyMatrix kernel(ring, P, syz.cols());
  for (std::size_t i = 0; i < P; ++i)
    for (std::size_t j = 0; j < syz.cols(); ++j) kernel(i, j) = syz(i, j);
  FreeModule F{ring, mid_shifts};
  Submodule numerator(F, PolyMatrix::hconcat(kernel, rel));
  Submodule denominator(F, PolyMatrix::hconcat(in, rel));
  return k_dimension(numerator, denominator);
}

inline void check_pair(const MatrixFactorization& mf, const PresentedModule& N) {
  if (!same_ring(mf.ring_ptr(), N.f.ring_ptr()) || !(mf.f == N.f))
    throw Error(ErrorCode::F_MISMATCH, "modules live over different hypersurfaces");
  if (!mf.ring_ptr()->coeffs().is_field())
    throw Error(ErrorCode::COEFF_DOMAIN_NOT_FIELD, "homology dimensions need a field");
}

}  // namespace detail

/// Tor_i^R(coker A, N) for i = 1..W from the periodic resolution
/// ... -B-> R^m -A-> R^m -> coker A tensored with N.
inline TorProfile tor_dims(const MatrixFactorization& mf, const PresentedModule& N, std::size_t window) {
  detail::check_pair(mf, N);
  if (window < 2) throw Error(ErrorCode::SPEC_MALFORMED, "window must be at least 2");
  detail::TensorSetting T{mf, N};
  const int D = mf.f.degree();
  const std::size_t n = N.rank();
  PolyMatrix rel = T.relations();
  PolyMatrix a = mf.A.kron_identity(n), b = mf.B.kron_identity(n);
  TorProfile prof{{}, mf.ring_ptr()->description(), "", ""};
  for (std::size_t i = 1; i <= window; ++i) {
    // F_i has twists e + D*floor((i-1)/2) for odd i and d + D*(i/2) for even i.
    const int period = static_cast<int>((i - 1) / 2) * D;
    KDim k;
    if (i % 2 == 1) {
      auto mid = T.shifts(detail::offset(mf.source_twists, period));
      auto target = T.shifts(detail::offset(mf.target_twists, period));
      k = detail::homology_dim(a, b, rel, mid, target);
    } else {
      auto mid = T.shifts(detail::offset(mf.target_twists, period + D));
      auto target = T.shifts(detail::offset(mf.source_twists, period));
      k = detail::homology_dim(b, a, rel, mid, target);
    }
    if (k.infinite)
      throw Error(ErrorCode::NONFINITE_TOR, "Tor_" + std::to_string(i) +
                                                " has infinite length; the singular locus is not isolated");
    prof.dims.push_back(k.value);
  }
  return prof;
}

/// Ext^i_R(coker A, N) for i = 1..W via the dual complex
/// N^m -A^T-> N^m -B^T-> N^m -A^T-> ...
inline TorProfile ext_dims(const MatrixFactorization& mf, const PresentedModule& N, std::size_t window) {
  detail::check_pair(mf, N);
  if (window < 2) throw Error(ErrorCode::SPEC_MALFORMED, "window must be at least 2");
  detail::TensorSetting T{mf, N};
  const int D = mf.f.degree();
  const std::size_t n = N.rank();
  PolyMatrix rel = T.relations();
  PolyMatrix at = mf.A.transpose().kron_identity(n), bt = mf.B.transpose().kron_identity(n);
  // Hom(F_i, N) carries the negated twists of F_i.
  auto neg = [](std::vector<int> v) {
    for (auto& x : v) x = -x;
    return v;
  };
  TorProfile prof{{}, mf.ring_ptr()->description(), "", ""};
  for (std::size_t i = 1; i <= window; ++i) {
    const int period = static_cast<int>((i - 1) / 2) * D;
    KDim k;
    if (i % 2 == 1) {
      // at Hom(F_1, N): in = A^T from Hom(F_0, N), out = B^T to Hom(F_2, N)
      auto mid = T.shifts(neg(detail::offset(mf.source_twists, period)));
      auto target = T.shifts(neg(detail::offset(mf.target_twists, period + D)));
      k = detail::homology_dim(bt, at, rel, mid, target);
    } else {
      auto mid = T.shifts(neg(detail::offset(mf.target_twists, period + D)));
      auto target = T.shifts(neg(detail::offset(mf.source_twists, period + D)));
      k = detail::homology_dim(at, bt, rel, mid, target);
    }
    if (k.infinite)
      throw Error(ErrorCode::NONFINITE_EXT, "Ext^" + std::to_string(i) + " has infinite length");
    prof.dims.push_back(k.value);
  }
  return prof;
}

/// Higher Euler characteristic χ_n^S(coker A, N) = Σ_{j≥n} (-1)^{j-n} dim Tor_j^S.
/// Over S, coker A has the resolution 0 -> S^m -A-> S^m, so only Tor_1^S
/// can contribute.
inline std::int64_t chi_higher(const MatrixFactorization& mf, const PresentedModule& N, unsigned n) {
  detail::check_pair(mf, N);
  if (n == 0) throw Error(ErrorCode::SPEC_MALFORMED, "chi_higher needs n >= 1");
  if (n >= 2) return 0;
  detail::TensorSetting T{mf, N};
  PolyMatrix rel = T.relations();
  const auto& ring = mf.ring_ptr();
  PolyMatrix a = mf.A.kron_identity(N.rank());
  PolyMatrix none(ring, T.dim(), 0);
  KDim k = detail::homology_dim(a, none, rel, T.shifts(mf.source_twists), T.shifts(mf.target_twists));
  if (k.infinite) throw Error(ErrorCode::INFINITE_LENGTH, "Tor_1^S has infinite length");
  return static_cast<std::int64_t>(k.value);
}

}  // namespace theta_forge

#endif  // THETA_FORGE_STABLE_HOMOLOGY_HPP
