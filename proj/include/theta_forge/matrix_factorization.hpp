#ifndef THETA_FORGE_MATRIX_FACTORIZATION_HPP
#define THETA_FORGE_MATRIX_FACTORIZATION_HPP

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "theta_forge/groebner.hpp"

namespace theta_forge {

/// Homogeneous matrix factorization A·B = B·A = f·I with
/// A : ⊕ S(-e_j) -> ⊕ S(-d_i) and B : ⊕ S(-d_i - deg f) -> ⊕ S(-e_j).
struct MatrixFactorization {
  Polynomial f;
  PolyMatrix A;
  PolyMatrix B;
  std::vector<int> source_twists;  // e_j
  std::vector<int> target_twists;  // d_i

  const RingPtr& ring_ptr() const { return f.ring_ptr(); }
  std::size_t size() const { return A.rows(); }
};

/// Cokernel of a homogeneous matrix over R = S/(f), on ambient ⊕ S(-shift_i).
struct PresentedModule {
  FreeModule ambient;
  PolyMatrix relations;
  Polynomial f;

  std::size_t rank() const { return ambient.rank(); }
  /// Relations over S: the given columns plus f times every basis vector.
  PolyMatrix relations_over_S() const {
    return PolyMatrix::hconcat(relations, PolyMatrix::scalar(f, ambient.rank()));
  }
};

namespace detail {

inline void require_homogeneous_f(const Polynomial& f) {
  if (f.is_zero() || f.is_constant())
    throw Error(ErrorCode::F_NOT_HOMOGENEOUS, "f must be a nonzero non-unit, got " + f.to_string());
  if (!f.is_homogeneous()) throw Error(ErrorCode::F_NOT_HOMOGENEOUS, "f = " + f.to_string() + " is not homogeneous");
}

/// Solves deg a_ij = e_j - d_i and deg b_ji = d_i + D - e_j over connected
/// components of the support graph; each component normalized to min d = 0.
inline std::optional<std::pair<std::vector<int>, std::vector<int>>> infer_twists(const PolyMatrix& A,
                                                                                const PolyMatrix* B, int D) {
  const std::size_t m = A.rows();
  // nodes: rows 0..m-1 (d_i), columns m..2m-1 (e_j); edge weight w means
  // value(col) - value(row) = w.
  std::vector<std::vector<std::pair<std::size_t, int>>> adj(2 * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (!A(i, j).is_zero()) {
        int w = A(i, j).degree();
        adj[i].push_back({m + j, w});
        adj[m + j].push_back({i, -w});
      }
      if (B && !(*B)(j, i).is_zero()) {
        int w = D - (*B)(j, i).degree();
        adj[i].push_back({m + j, w});
        adj[m + j].push_back({i, -w});
      }
    }
  std::vector<std::optional<int>> value(2 * m);
  for (std::size_t start = 0; start < 2 * m; ++start) {
    if (value[start]) continue;
    std::vector<std::size_t> component{start};
    value[start] = 0;
    std::deque<std::size_t> queue{start};
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (auto [v, w] : adj[u]) {
        int expected = *value[u] + w;
        if (!value[v]) {
          value[v] = expected;
          component.push_back(v);
          queue.push_back(v);
        } else if (*value[v] != expected) {
          return std::nullopt;
        }
      }
    }
    std::optional<int> min_d;
    for (auto u : component)
      if (u < m) min_d = min_d ? std::min(*min_d, *value[u]) : *value[u];
    int offset = min_d.value_or(*value[start]);
    for (auto u : component) *value[u] -= offset;
  }
  std::vector<int> d(m), e(m);
  for (std::size_t i = 0; i < m; ++i) d[i] = *value[i];
  for (std::size_t j = 0; j < m; ++j) e[j] = *value[m + j];
  return std::make_pair(std::move(e), std::move(d));
}

}  // namespace detail

/// Checks A·B = B·A = f·I and homogeneity; infers the twist vectors.
inline MatrixFactorization validate_mf(const PolyMatrix& A, const PolyMatrix& B, const Polynomial& f) {
  if (!A.is_square()) throw Error(ErrorCode::NOT_SQUARE, "A is " + A.shape());
  if (!B.is_square()) throw Error(ErrorCode::NOT_SQUARE, "B is " + B.shape());
  if (A.rows() != B.rows()) throw Error(ErrorCode::SHAPE_MISMATCH, "A is " + A.shape() + ", B is " + B.shape());
  if (A.rows() == 0) throw Error(ErrorCode::SHAPE_MISMATCH, "empty matrix factorization");
  if (!same_ring(A.ring_ptr(), f.ring_ptr()) || !same_ring(B.ring_ptr(), f.ring_ptr()))
    throw Error(ErrorCode::RING_MISMATCH, "A, B and f must share one ring");
  detail::require_homogeneous_f(f);
  const std::size_t m = A.rows();
  for (const auto* mat : {&A, &B})
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (!(*mat)(i, j).is_homogeneous())
          throw Error(ErrorCode::INHOMOGENEOUS_ENTRY, std::string(mat == &A ? "A" : "B") + "[" + std::to_string(i) +
                                                          "][" + std::to_string(j) +
                                                          "] = " + (*mat)(i, j).to_string());
  if (!detail::infer_twists(A, nullptr, 0))
    throw Error(ErrorCode::NO_CONSISTENT_TWISTS, "A does not define a map of graded free modules");
  PolyMatrix fI = PolyMatrix::scalar(f, m);
  for (int side = 0; side < 2; ++side) {
    PolyMatrix prod = side == 0 ? A * B : B * A;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (!(prod(i, j) == fI(i, j)))
          throw Error(ErrorCode::MF_IDENTITY_FAILED, std::string(side == 0 ? "(A*B)" : "(B*A)") + "[" +
                                                         std::to_string(i) + "][" + std::to_string(j) +
                                                         "] = " + prod(i, j).to_string() +
                                                         ", expected " + fI(i, j).to_string());
  }
  auto twists = detail::infer_twists(A, &B, f.degree());
  if (!twists) throw Error(ErrorCode::NO_CONSISTENT_TWISTS, "entry degrees admit no graded twists");
  return {f, A, B, std::move(twists->first), std::move(twists->second)};
}

inline PresentedModule cokernel(const MatrixFactorization& mf) {
  return {FreeModule{mf.ring_ptr(), mf.target_twists}, mf.A, mf.f};
}

inline MatrixFactorization direct_sum(const MatrixFactorization& a, const MatrixFactorization& b) {
  if (!same_ring(a.ring_ptr(), b.ring_ptr()) || !(a.f == b.f))
    throw Error(ErrorCode::F_MISMATCH, a.f.to_string() + " vs " + b.f.to_string());
  return validate_mf(PolyMatrix::block_diag(a.A, b.A), PolyMatrix::block_diag(a.B, b.B), a.f);
}

/// The trivial factorizations (f, 1) and (1, f).
inline MatrixFactorization free_mf(const Polynomial& f) {
  const auto& R = f.ring_ptr();
  return validate_mf(PolyMatrix::scalar(f, 1), PolyMatrix::identity(R, 1), f);
}
inline MatrixFactorization zero_mf(const Polynomial& f) {
  const auto& R = f.ring_ptr();
  return validate_mf(PolyMatrix::identity(R, 1), PolyMatrix::scalar(f, 1), f);
}

struct AdjugateLift {
  PolyMatrix A;  // over ZZ
  PolyMatrix B;
  Polynomial f;
};

/// Lifts a matrix over GF(p) to ZZ with symmetric representatives and
/// completes it by the adjugate: Ã·adj(Ã) = det(Ã)·I.
inline AdjugateLift lift_adjugate(const PolyMatrix& A) {
  const auto& K = A.ring().coeffs();
  if (K.kind() != CoeffDomain::Kind::PrimeField)
    throw Error(ErrorCode::SPEC_MALFORMED, "lift_adjugate expects a matrix over GF(p), got " + K.name());
  if (!A.is_square()) throw Error(ErrorCode::NOT_SQUARE, "A is " + A.shape());
  if (determinant(A).is_zero()) throw Error(ErrorCode::SINGULAR_MATRIX, "det(A) = 0 over " + K.name());
  auto Z = std::make_shared<const PolyRing>(A.ring().with_coeffs(CoeffDomain::integers()));
  PolyMatrix lifted(Z, A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) {
      std::vector<Term> terms;
      for (const auto& t : A(i, j).terms()) terms.push_back({t.mono, Scalar(K.symmetric_lift(t.coeff))});
      lifted(i, j) = Polynomial::from_terms(Z, std::move(terms));
    }
  auto [adj, det] = adjugate_det(lifted);
  return {std::move(lifted), std::move(adj), std::move(det)};
}

struct RankOneReport {
  Polynomial det_A;
  bool rank_one = false;
  std::optional<std::string> warning;
};

namespace detail {

/// A certificate that f factors: a common variable in all terms, or a
/// determinant of an MF that is not a scalar times a power of f.
inline std::optional<std::string> reducibility_witness(const MatrixFactorization& mf, const Polynomial& det) {
  const auto& f = mf.f;
  Monomial common = f.leading().mono;
  for (const auto& t : f.terms()) common = Monomial::gcd(common, t.mono);
  if (!common.is_one() && f.size() > 1) return "f is reducible: divisible by " + f.ring().monomial_string(common);
  if (!common.is_one() && f.leading().mono.total_degree() > 1) return "f is reducible: a monomial of degree > 1";
  if (det.is_zero()) return std::nullopt;
  Polynomial rest = det;
  while (rest.degree() >= f.degree()) {
    auto q = Polynomial::divide_exact(rest, f);
    if (!q) break;
    rest = std::move(*q);
  }
  if (rest.degree() > 0) return "f is reducible: det(A) has the proper factor " + rest.to_string();
  return std::nullopt;
}

}  // namespace detail

/// det(A) = c·f with c a nonzero scalar; the warning flags a detectably reducible f.
inline RankOneReport is_rank_one(const MatrixFactorization& mf) {
  RankOneReport r{determinant(mf.A), false, std::nullopt};
  if (auto q = Polynomial::divide_exact(r.det_A, mf.f)) r.rank_one = q->is_nonzero_constant();
  r.warning = detail::reducibility_witness(mf, r.det_A);
  return r;
}

struct StabilizeResult {
  MatrixFactorization mf;
  int parity = 0;
};

namespace detail {

inline bool column_homogeneous(const PolyMatrix& m, std::size_t j, const std::vector<int>& shifts) {
  std::optional<int> deg;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto& p = m(i, j);
    if (p.is_zero()) continue;
    if (!p.is_homogeneous()) return false;
    int d = p.degree() + shifts[i];
    if (deg && *deg != d) return false;
    deg = d;
  }
  return true;
}

/// Entries reduced modulo (f).
inline PolyMatrix reduce_mod_f(const PolyMatrix& m, const Polynomial& f) {
  Submodule fideal(FreeModule::free(f.ring_ptr(), 1), PolyMatrix::scalar(f, 1));
  PolyMatrix out(m.ring_ptr(), m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = normal_form(m(i, j), fideal);
  return out;
}

/// Graded-minimal subset of the homogeneous columns of `gens`, as generators
/// of their span (plus f·F when `modulo` is given). Returns kept columns and
/// their degrees.
inline std::pair<PolyMatrix, std::vector<int>> minimal_columns(const PolyMatrix& gens, const FreeModule& F,
                                                               const std::optional<Polynomial>& modulo) {
  std::vector<std::size_t> order;
  std::vector<int> deg(gens.cols());
  for (std::size_t j = 0; j < gens.cols(); ++j) {
    if (!column_homogeneous(gens, j, F.shifts))
      throw Error(ErrorCode::INHOMOGENEOUS_INPUT, "column " + std::to_string(j) + " is not homogeneous");
    bool zero = true;
    for (std::size_t i = 0; i < gens.rows(); ++i) zero = zero && gens(i, j).is_zero();
    if (zero) continue;
    deg[j] = column_degree(gens, j, F.shifts);
    order.push_back(j);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return deg[a] < deg[b]; });
  PolyMatrix base = modulo ? PolyMatrix::scalar(*modulo, F.rank()) : PolyMatrix(F.ring, F.rank(), 0);
  PolyMatrix kept(F.ring, F.rank(), 0);
  std::vector<int> kept_deg;
  for (std::size_t j : order) {
    Submodule span(F, PolyMatrix::hconcat(base, kept));
    auto col = gens.column(j);
    if (contains(span, col)) continue;
    PolyMatrix c(F.ring, F.rank(), 1);
    for (std::size_t i = 0; i < F.rank(); ++i) c(i, 0) = col[i];
    kept = PolyMatrix::hconcat(kept, c);
    kept_deg.push_back(deg[j]);
  }
  return {kept, kept_deg};
}

}  // namespace detail

/// Replaces a graded module over R = S/(f) by its `steps`-th syzygy module
/// in a minimal R-resolution and presents that as a matrix factorization.
/// θ(original, N) = (-1)^parity · θ(coker(mf), N).
inline StabilizeResult stabilize(const PresentedModule& module, unsigned steps) {
  const Polynomial& f = module.f;
  detail::require_homogeneous_f(f);
  const auto& ring = f.ring_ptr();
  if (!ring->coeffs().is_field())
    throw Error(ErrorCode::COEFF_DOMAIN_NOT_FIELD, "stabilize needs a field, got " + ring->coeffs().name());
  for (std::size_t j = 0; j < module.relations.cols(); ++j)
    if (!detail::column_homogeneous(module.relations, j, module.ambient.shifts))
      throw Error(ErrorCode::INHOMOGENEOUS_INPUT, "relation column " + std::to_string(j) + " is not homogeneous");

  // current differential d_k : R^{b_k} -> R^{b_{k-1}} with target shifts
  std::vector<int> target_shifts = module.ambient.shifts;
  auto [d, source_shifts] =
      detail::minimal_columns(detail::reduce_mod_f(module.relations, f), module.ambient, f);
  for (unsigned k = 0; k < steps; ++k) {
    const std::size_t rows = d.rows(), cols = d.cols();
    PolyMatrix kernel(ring, cols, 0);
    if (cols > 0) {
      PolyMatrix lifted = PolyMatrix::hconcat(d, PolyMatrix::scalar(f, rows));
      PolyMatrix syz = syzygy(lifted, target_shifts);
      kernel = PolyMatrix(ring, cols, syz.cols());
      for (std::size_t i = 0; i < cols; ++i)
        for (std::size_t j = 0; j < syz.cols(); ++j) kernel(i, j) = syz(i, j);
    }
    FreeModule source{ring, source_shifts};
    auto next = detail::minimal_columns(detail::reduce_mod_f(kernel, f), source, f);
    target_shifts = source_shifts;
    d = std::move(next.first);
    source_shifts = std::move(next.second);
  }
  // M_steps = coker(d) over R; present it minimally over S.
  const std::size_t b = d.rows();
  if (b == 0) return {zero_mf(f), static_cast<int>(steps % 2)};
  FreeModule F{ring, target_shifts};
  auto [A, a_deg] = detail::minimal_columns(PolyMatrix::hconcat(d, PolyMatrix::scalar(f, b)), F, std::nullopt);
  if (A.cols() != b)
    throw Error(ErrorCode::NOT_STABILIZED, "syzygy module after " + std::to_string(steps) +
                                               " steps has S-presentation " + A.shape() +
                                               "; increase steps");
  Polynomial det = determinant(A);
  if (det.is_zero()) throw Error(ErrorCode::NOT_STABILIZED, "singular S-presentation");
  PolyMatrix adj = adjugate_det(A).adj;
  PolyMatrix B(ring, b, b);
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t j = 0; j < b; ++j) {
      auto q = Polynomial::divide_exact(adj(i, j) * f, det);
      if (!q) throw Error(ErrorCode::NOT_STABILIZED, "f·A^{-1} is not polynomial; increase steps");
      B(i, j) = std::move(*q);
    }
  return {validate_mf(A, B, f), static_cast<int>(steps % 2)};
}

}  // namespace theta_forge

#endif  // THETA_FORGE_MATRIX_FACTORIZATION_HPP
