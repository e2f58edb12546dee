#ifndef THETA_FORGE_MILNOR_HPP
#define THETA_FORGE_MILNOR_HPP

#include <vector>

#include "theta_forge/groebner.hpp"

namespace theta_forge {

/// S / (∂f/∂x_0, ..., ∂f/∂x_n) for a homogeneous f with an isolated
/// singularity, with the residue functional normalized by Res(hess f) = μ.
struct MilnorAlgebra {
  Polynomial f;
  std::vector<Polynomial> jacobian;
  Submodule jacobian_ideal;
  std::vector<Monomial> basis;  // standard monomials, ascending
  std::uint64_t mu = 0;
  int socle_degree = 0;
  Polynomial socle_generator;
  Scalar residue_of_socle;  // Res(socle_generator)
  Polynomial hessian;
};

inline Submodule ideal_of(const RingPtr& ring, const std::vector<Polynomial>& gens) {
  PolyMatrix m(ring, 1, gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j) m(0, j) = gens[j];
  return Submodule(FreeModule::free(ring, 1), m);
}

inline PolyMatrix hessian_matrix(const Polynomial& f) {
  const std::size_t n = f.ring().nvars();
  PolyMatrix h(f.ring_ptr(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial di = f.derivative(i);
    for (std::size_t j = 0; j < n; ++j) h(i, j) = di.derivative(j);
  }
  return h;
}

inline MilnorAlgebra milnor_mu(const Polynomial& f) {
  const auto& ring = f.ring_ptr();
  if (!ring->coeffs().is_field())
    throw Error(ErrorCode::COEFF_DOMAIN_NOT_FIELD, "Milnor algebra over " + ring->coeffs().name());
  if (f.is_zero() || !f.is_homogeneous()) throw Error(ErrorCode::F_NOT_HOMOGENEOUS, f.to_string());
  std::vector<Polynomial> jac;
  for (std::size_t i = 0; i < ring->nvars(); ++i) jac.push_back(f.derivative(i));
  Submodule J = groebner_basis(ideal_of(ring, jac));
  KDim mu = k_dimension(J);
  if (mu.infinite) throw Error(ErrorCode::NOT_ISOLATED, "Jacobian ideal of " + f.to_string() + " has infinite colength");
  std::vector<Monomial> basis = standard_monomials(J);
  int top = 0;
  for (const auto& m : basis) top = std::max(top, ring->degree(m));
  std::vector<Monomial> socle;
  for (const auto& m : basis)
    if (ring->degree(m) == top) socle.push_back(m);
  if (socle.size() != 1)
    throw Error(ErrorCode::SOCLE_DEGENERATE, "top degree of the Milnor algebra is " + std::to_string(socle.size()) +
                                                 "-dimensional");
  Polynomial hess = determinant(hessian_matrix(f));
  Polynomial hnf = normal_form(hess, J);
  Scalar c = hnf.coefficient(socle[0]);
  Scalar mu_k = ring->coeffs().from_mpz(mpz_class(static_cast<unsigned long>(mu.value)));
  if (sgn(c) == 0 || sgn(mu_k) == 0)
    throw Error(ErrorCode::SOCLE_DEGENERATE, "hessian does not generate the socle in characteristic " +
                                                 std::to_string(ring->coeffs().characteristic()));
  MilnorAlgebra alg{f,
                    std::move(jac),
                    J,
                    std::move(basis),
                    mu.value,
                    top,
                    Polynomial::monomial(ring, socle[0]),
                    ring->coeffs().div(mu_k, c),
                    std::move(hess)};
  return alg;
}

/// Res[g dx / (∂f)]: the socle coefficient of the normal form, scaled.
inline Scalar residue(const Polynomial& g, const MilnorAlgebra& alg) {
  Polynomial nf = normal_form(g, alg.jacobian_ideal);
  return alg.f.ring().coeffs().mul(nf.coefficient(alg.socle_generator.leading().mono), alg.residue_of_socle);
}

/// ⟨g, h⟩ = Res[g h dx / (∂f)].
inline Scalar residue_pair(const Polynomial& g, const Polynomial& h, const MilnorAlgebra& alg) {
  return residue(g * h, alg);
}

/// dim_k S / (f, ∂f/∂x_i); finite exactly when the singular locus is the origin.
inline KDim tjurina_check(const Polynomial& f) {
  const auto& ring = f.ring_ptr();
  std::vector<Polynomial> gens{f};
  for (std::size_t i = 0; i < ring->nvars(); ++i) gens.push_back(f.derivative(i));
  return k_dimension(ideal_of(ring, gens));
}

}  // namespace theta_forge

#endif  // THETA_FORGE_MILNOR_HPP
