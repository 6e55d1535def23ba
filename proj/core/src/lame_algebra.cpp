#include "cornerscat/lame_algebra.hpp"

#include "cornerscat/errors.hpp"

namespace cornerscat::algebra {

namespace {

GaussianRational q(const mpq_class& v) { return GaussianRational(v); }

GRMatrix diag(const GaussianRational& d0, const GaussianRational& d1) {
  GRMatrix m(2, 2);
  m(0, 0) = d0;
  m(1, 1) = d1;
  return m;
}

GaussianRational power(const GaussianRational& z, int e) {
  GaussianRational r(1);
  for (int k = 0; k < e; ++k) r *= z;
  return r;
}

const GaussianRational kQuarter = GaussianRational(mpq_class(1, 4));
const GaussianRational kHalf = GaussianRational(mpq_class(1, 2));

}  // namespace

RationalLame::RationalLame(mpq_class lambda_, mpq_class mu_) : lambda(std::move(lambda_)), mu(std::move(mu_)) {
  lambda.canonicalize();
  mu.canonicalize();
  if (sgn(mu) <= 0) throw ConfigError("shear modulus must satisfy mu > 0");
  if (sgn(lambda + mu) <= 0) throw ConfigError("Lamé parameters must satisfy lambda + mu > 0");
}

SymbolPoint::SymbolPoint(RationalLame lame_, mpq_class eta1_, mpq_class eta2_)
    : lame(std::move(lame_)), eta1(std::move(eta1_)), eta2(std::move(eta2_)) {
  if (sgn(eta_norm2()) == 0) throw PreconditionError("symbol point requires eta != 0");
}

RankOneUpdate det_rank_one_update(const GRMatrix& A, const GRMatrix& U, const GRMatrix& V) {
  if (A.rows() != 2 || A.cols() != 2 || U.rows() != 2 || U.cols() != 1 || V.rows() != 2 || V.cols() != 1) {
    throw PreconditionError("det_rank_one_update expects a 2x2 matrix and two 2-columns");
  }
  const GaussianRational det_a = A.determinant();
  if (det_a.is_zero()) throw PreconditionError("det_rank_one_update requires an invertible A");
  RankOneUpdate r;
  r.lhs = (A + U * V.transpose()).determinant();
  const GRMatrix quad = V.transpose() * A.inverse() * U;
  r.rhs = (GaussianRational(1) + quad(0, 0)) * det_a;
  return r;
}

LameSymbol lame_symbol(const SymbolPoint& p) {
  const auto& lm = p.lame;
  const mpq_class n2 = p.eta_norm2();
  const GRMatrix theta = GRMatrix::column({q(p.eta1), q(p.eta2)});

  LameSymbol s;
  s.L = q(lm.mu * n2) * GRMatrix::identity(2) + q(lm.lambda + lm.mu) * (theta * theta.transpose());
  s.det_L = s.L.determinant();
  s.eigs = {q(lm.p_modulus() * n2), q(lm.mu * n2)};
  s.P = GRMatrix{{q(-p.eta2), q(p.eta1)}, {q(p.eta1), q(p.eta2)}};
  s.checks.title = "lame_symbol";

  const GaussianRational det_expected = q(lm.p_modulus() * lm.mu * n2 * n2);
  s.checks.add("det(L) = (lambda+2mu) mu |eta|^4", s.det_L == det_expected, s.det_L.str());

  // The same determinant through the rank-one update lemma with A = mu|eta|^2 I.
  const GRMatrix A = q(lm.mu * n2) * GRMatrix::identity(2);
  const auto lemma = det_rank_one_update(A, q(lm.lambda + lm.mu) * theta, theta);
  const GRMatrix quad = theta.transpose() * A.inverse() * (q(lm.lambda + lm.mu) * theta);
  s.checks.add("1 + V^T A^-1 U = 1 + (lambda+mu)/mu",
               GaussianRational(1) + quad(0, 0) == q(1 + (lm.lambda + lm.mu) / lm.mu));
  s.checks.add("rank-one update lemma reproduces det(L)", lemma.equal() && lemma.lhs == s.det_L);

  const GaussianRational trace = s.L(0, 0) + s.L(1, 1);
  s.checks.add("eigenvalues sum to trace(L)", s.eigs[0] + s.eigs[1] == trace);
  s.checks.add("eigenvalues multiply to det(L)", s.eigs[0] * s.eigs[1] == s.det_L);
  s.checks.add("eigenvalues are distinct", s.eigs[0] != s.eigs[1]);

  s.checks.add("P^2 = |eta|^2 I", s.P * s.P == q(n2) * GRMatrix::identity(2));
  s.checks.add("L = P diag(mu, lambda+2mu) P", s.P * diag(q(lm.mu), q(lm.p_modulus())) * s.P == s.L);

  // L P = |eta|^2 P diag(mu, lambda+2mu): column 0 pairs with mu|eta|^2, column 1 with (lambda+2mu)|eta|^2.
  const GRMatrix LP = s.L * s.P;
  bool eigvec_ok = true;
  for (std::size_t r = 0; r < 2; ++r) {
    eigvec_ok = eigvec_ok && LP(r, 0) == s.eigs[1] * s.P(r, 0);
    eigvec_ok = eigvec_ok && LP(r, 1) == s.eigs[0] * s.P(r, 1);
  }
  s.checks.add("columns of P are eigenvectors of L", eigvec_ok);
  return s;
}

GRMatrix b_matrix(const RationalLame& lame) {
  const GaussianRational i = GaussianRational::i();
  return GRMatrix{{-i * q(lame.mu), q(lame.p_modulus())}, {q(lame.mu), i * q(lame.p_modulus())}};
}

CheckReport b_matrix_identities(const RationalLame& lame) {
  const GaussianRational i = GaussianRational::i();
  const GRMatrix B = b_matrix(lame);
  const GRMatrix Bc = B.conjugate();
  const mpq_class a = lame.a();
  const mpq_class b = lame.b();

  CheckReport r;
  r.title = "b_matrix_identities";
  const GRMatrix bbt = B * B.transpose();
  const GRMatrix bcbct = Bc * Bc.transpose();
  const GRMatrix mixed = B * Bc.transpose() + Bc * B.transpose();
  r.add("B B^T = (a-b)[[1,i],[i,-1]]", bbt == q(a - b) * GRMatrix{{1, i}, {i, -1}}, bbt.str());
  r.add("Bbar Bbar^T = (a-b)[[1,-i],[-i,-1]]", bcbct == q(a - b) * GRMatrix{{1, -i}, {-i, -1}}, bcbct.str());
  r.add("B Bbar^T + Bbar B^T = 2(a+b) I", mixed == q(2 * (a + b)) * GRMatrix::identity(2), mixed.str());
  r.add("a != b", a != b, "a - b = " + mpq_class(a - b).get_str());
  return r;
}

LambdaForm LambdaForm::in_w_basis() const {
  const GRMatrix T = w_transform();
  const GRMatrix Tinv = T.inverse();
  LambdaForm w;
  for (std::size_t e = 0; e < coeff.size(); ++e) w.coeff[e] = T * coeff[e] * Tinv;
  return w;
}

GRMatrix LambdaForm::evaluate(const GaussianRational& lambda1, const GaussianRational& lambda2) const {
  GRMatrix sum(2, 2);
  for (int e = 0; e <= 4; ++e) {
    sum = sum + (power(lambda1, e) * power(lambda2, 4 - e)) * coeff[static_cast<std::size_t>(e)];
  }
  return sum;
}

LambdaForm lsq_lambda_form(const mpq_class& a, const mpq_class& b) {
  const GaussianRational i = GaussianRational::i();
  LambdaForm f;
  for (auto& c : f.coeff) c = GRMatrix(2, 2);
  f.coeff[3] = kQuarter * (q(a - b) * GRMatrix{{1, i}, {i, -1}});
  f.coeff[2] = kQuarter * (q(2 * (a + b)) * GRMatrix::identity(2));
  f.coeff[1] = kQuarter * (q(a - b) * GRMatrix{{1, -i}, {-i, -1}});
  return f;
}

LambdaForm lsq_lambda_form_from_b(const RationalLame& lame) {
  const GRMatrix B = b_matrix(lame);
  const GRMatrix Bc = B.conjugate();
  LambdaForm f;
  for (auto& c : f.coeff) c = GRMatrix(2, 2);
  f.coeff[3] = kQuarter * (B * B.transpose());
  f.coeff[2] = kQuarter * (B * Bc.transpose() + Bc * B.transpose());
  f.coeff[1] = kQuarter * (Bc * Bc.transpose());
  return f;
}

CheckReport lsq_factorization_check(const SymbolPoint& p) {
  const auto& lm = p.lame;
  const GaussianRational i = GaussianRational::i();
  const GaussianRational l1 = p.lambda1();
  const GaussianRational l2 = p.lambda2();
  const GRMatrix L = lame_symbol(p).L;
  const GRMatrix L2 = L * L;

  const GRMatrix P = GRMatrix{{q(-p.eta2), q(p.eta1)}, {q(p.eta1), q(p.eta2)}};
  const GRMatrix D = diag(q(lm.mu), q(lm.p_modulus()));
  const GRMatrix P1 = P * D;
  const GRMatrix P2 = D * P;
  const GRMatrix B = b_matrix(lm);
  const GRMatrix Bc = B.conjugate();

  CheckReport r;
  r.title = "lsq_factorization_check";
  r.add("d_tau1 = (Lambda1 + Lambda2)/2", kHalf * (l1 + l2) == q(p.eta1));
  r.add("d_tau2 = i(Lambda1 - Lambda2)/2", kHalf * i * (l1 - l2) == q(p.eta2));
  r.add("Delta = Lambda1 Lambda2", l1 * l2 == q(p.eta_norm2()));
  r.add("P1 = (Lambda1 B + Lambda2 Bbar)/2", P1 == kHalf * (l1 * B + l2 * Bc));
  r.add("P2 = (Lambda1 B^T + Lambda2 Bbar^T)/2", P2 == kHalf * (l1 * B.transpose() + l2 * Bc.transpose()));
  r.add("L^2 = Delta P1 P2", L2 == q(p.eta_norm2()) * (P1 * P2), L2.str());
  r.add("L^2 = quarter Lambda-form (B products)", L2 == lsq_lambda_form_from_b(lm).evaluate(l1, l2));
  r.add("L^2 = quarter Lambda-form (closed form in a, b)", L2 == lsq_lambda_form(lm.a(), lm.b()).evaluate(l1, l2));
  return r;
}

CheckReport global_guards(const RationalLame& lame) {
  const mpq_class a = lame.a();
  const mpq_class b = lame.b();
  const GRMatrix m{{q(a - b), q(a + b)}, {q(a + b), q(a - b)}};
  const GaussianRational det = m.determinant();
  CheckReport r;
  r.title = "global_guards";
  r.add("det[[a-b,a+b],[a+b,a-b]] = -4ab", det == q(-4 * a * b), det.str());
  r.add("-4ab != 0", !det.is_zero());
  const mpq_class factored = (lame.lambda + lame.mu) * (lame.lambda + 3 * lame.mu);
  r.add("a - b = (lambda+mu)(lambda+3mu)", a - b == factored);
  r.add("a - b != 0", sgn(a - b) != 0);
  return r;
}

GRMatrix w_transform() {
  const GaussianRational i = GaussianRational::i();
  return GRMatrix{{1, -i}, {1, i}};
}

}  // namespace cornerscat::algebra
