#pragma once

// Exact symbol calculus of the Lamé operator L = mu Delta + (lambda+mu) grad div.
//
// With Theta = (eta1, eta2), the symbol of L is
//   L(eta) = mu |eta|^2 I + (lambda+mu) Theta Theta^T = P diag(mu, lambda+2mu) P,
//   P = [[-eta2, eta1], [eta1, eta2]],  P^2 = |eta|^2 I,
// and with Lambda1 = eta1 - i eta2, Lambda2 = eta1 + i eta2 and
//   B = [[-i mu, lambda+2mu], [mu, i(lambda+2mu)]],
// the symbol of L^2 factors as
//   L^2 = |eta|^2 P1 P2 = 1/4 Lambda1 Lambda2 [Lambda1^2 B B^T
//         + Lambda1 Lambda2 (B Bbar^T + Bbar B^T) + Lambda2^2 Bbar Bbar^T].
// Everything here is exact over Q(i).

#include <array>

#include "cornerscat/gaussian_rational.hpp"
#include "cornerscat/report.hpp"

namespace cornerscat::algebra {

/// Rational Lamé pair with mu > 0 and lambda + mu > 0 (ConfigError otherwise).
struct RationalLame {
  mpq_class lambda;
  mpq_class mu;

  RationalLame(mpq_class lambda, mpq_class mu);
  mpq_class p_modulus() const { return lambda + 2 * mu; }
  /// a = (lambda + 2 mu)^2
  mpq_class a() const { return p_modulus() * p_modulus(); }
  /// b = mu^2
  mpq_class b() const { return mu * mu; }
};

/// Point in symbol space. Throws PreconditionError when eta = 0.
struct SymbolPoint {
  RationalLame lame;
  mpq_class eta1;
  mpq_class eta2;

  SymbolPoint(RationalLame lame, mpq_class eta1, mpq_class eta2);
  mpq_class eta_norm2() const { return eta1 * eta1 + eta2 * eta2; }
  GaussianRational lambda1() const { return GaussianRational(eta1, -eta2); }
  GaussianRational lambda2() const { return GaussianRational(eta1, eta2); }
};

struct RankOneUpdate {
  GaussianRational lhs;  ///< det(A + U V^T)
  GaussianRational rhs;  ///< (1 + V^T A^{-1} U) det(A)
  bool equal() const { return lhs == rhs; }
};

/// Both sides of the matrix determinant lemma for a 2x2 A and 2-columns U, V.
/// Throws PreconditionError if A is singular or shapes are wrong.
RankOneUpdate det_rank_one_update(const GRMatrix& A, const GRMatrix& U, const GRMatrix& V);

struct LameSymbol {
  GRMatrix L;
  GaussianRational det_L;
  std::array<GaussianRational, 2> eigs;  ///< {(lambda+2mu)|eta|^2, mu|eta|^2}
  GRMatrix P;
  CheckReport checks;
};

/// Symbol L(eta) with its determinant, eigenvalues and diagonalizer, each
/// identity re-verified exactly in `checks`.
LameSymbol lame_symbol(const SymbolPoint& p);

GRMatrix b_matrix(const RationalLame& lame);

/// B B^T, Bbar Bbar^T and B Bbar^T + Bbar B^T against their closed forms.
CheckReport b_matrix_identities(const RationalLame& lame);

/// Coefficients of the L^2 symbol as a homogeneous quartic in (Lambda1, Lambda2):
/// L^2 = sum_e coeff[e] Lambda1^e Lambda2^(4-e), acting on (w1, w2).
struct LambdaForm {
  std::array<GRMatrix, 5> coeff;

  /// Same quartic acting on (W1, W2) = (w1 - i w2, w1 + i w2): T C T^{-1}.
  LambdaForm in_w_basis() const;
  GRMatrix evaluate(const GaussianRational& lambda1, const GaussianRational& lambda2) const;
};

/// Lambda-form built from the closed-form B products in terms of (a, b).
/// This is the single source for the corner-induction PDE rows.
LambdaForm lsq_lambda_form(const mpq_class& a, const mpq_class& b);

/// Lambda-form built by multiplying the actual B matrices of `lame`.
LambdaForm lsq_lambda_form_from_b(const RationalLame& lame);

/// L(eta)^2 == |eta|^2 P1(eta) P2(eta) == Lambda-form, plus the symbol-level
/// identities d1 = (L1+L2)/2, d2 = i(L1-L2)/2, Delta = L1 L2, P1 = (L1 B + L2 Bbar)/2,
/// P2 = (L1 B^T + L2 Bbar^T)/2.
CheckReport lsq_factorization_check(const SymbolPoint& p);

/// det[[a-b, a+b], [a+b, a-b]] = -4ab != 0 and a - b = (lambda+mu)(lambda+3mu) != 0.
CheckReport global_guards(const RationalLame& lame);

/// W = T w with T = [[1, -i], [1, i]].
GRMatrix w_transform();

}  // namespace cornerscat::algebra
