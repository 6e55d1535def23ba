#include "cornerscat/verification.hpp"

#include <cmath>
#include <sstream>

#include "cornerscat/corner_induction.hpp"
#include "cornerscat/elastic.hpp"
#include "cornerscat/errors.hpp"

namespace cornerscat {

using algebra::RationalLame;
using algebra::SymbolPoint;

mpq_class random_rational(std::mt19937_64& rng, int num_bound, int den_bound) {
  std::uniform_int_distribution<int> num(-num_bound, num_bound);
  std::uniform_int_distribution<int> den(1, den_bound);
  mpq_class q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

RationalLame random_lame(std::mt19937_64& rng) {
  mpq_class mu;
  do mu = random_rational(rng);
  while (sgn(mu) <= 0);
  mpq_class lambda;
  do lambda = random_rational(rng);
  while (sgn(lambda + mu) <= 0);
  return RationalLame(lambda, mu);
}

namespace {

GaussianRational random_gr(std::mt19937_64& rng) { return GaussianRational(random_rational(rng), random_rational(rng)); }

GRMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  GRMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = random_gr(rng);
  return m;
}

// Records the first failing detail of a family and a pass count.
struct Family {
  int total = 0;
  int failed = 0;
  std::string first;

  void record(bool ok, const std::string& what) {
    ++total;
    if (!ok && failed++ == 0) first = what;
  }
  std::string detail() const {
    std::ostringstream os;
    os << (total - failed) << "/" << total << " exact";
    if (failed) os << "; first failure: " << first;
    return os.str();
  }
};

std::string failures_of(const CheckReport& r) {
  std::string s;
  for (const auto& c : r.checks)
    if (!c.passed) s += (s.empty() ? "" : ", ") + c.name;
  return s;
}

}  // namespace

CheckReport verify_algebra(const AlgebraSuiteOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  CheckReport report;
  report.title = "exact algebra";

  Family lemma;
  for (int k = 0; k < opts.determinant_instances; ++k) {
    GRMatrix a;
    do a = random_matrix(rng, 2, 2);
    while (a.determinant().is_zero());
    const auto r = algebra::det_rank_one_update(a, random_matrix(rng, 2, 1), random_matrix(rng, 2, 1));
    lemma.record(r.equal(), "instance " + std::to_string(k));
  }
  report.add("rank-one determinant lemma", lemma.failed == 0, lemma.detail());

  Family symbol, bmat, factor, guards;
  for (int k = 0; k < opts.symbol_points; ++k) {
    const RationalLame lame = random_lame(rng);
    mpq_class e1, e2;
    do {
      e1 = random_rational(rng);
      e2 = random_rational(rng);
    } while (sgn(e1) == 0 && sgn(e2) == 0);
    const SymbolPoint p(lame, e1, e2);
    const std::string where = "lambda=" + lame.lambda.get_str() + " mu=" + lame.mu.get_str() + " eta=(" +
                              e1.get_str() + "," + e2.get_str() + ")";
    const auto sym = algebra::lame_symbol(p);
    symbol.record(sym.checks.passed(), where + " [" + failures_of(sym.checks) + "]");
    const auto b = algebra::b_matrix_identities(lame);
    bmat.record(b.passed(), where + " [" + failures_of(b) + "]");
    const auto f = algebra::lsq_factorization_check(p);
    factor.record(f.passed(), where + " [" + failures_of(f) + "]");
    const auto g = algebra::global_guards(lame);
    guards.record(g.passed(), where + " [" + failures_of(g) + "]");
  }
  report.add("symbol determinant, eigenvalues, P^2 = |eta|^2 I, diagonalization", symbol.failed == 0, symbol.detail());
  report.add("B-matrix identities", bmat.failed == 0, bmat.detail());
  report.add("L^2 symbol factorizations agree", factor.failed == 0, factor.detail());
  report.add("global guards -4ab and a - b", guards.failed == 0, guards.detail());
  return report;
}

InductionSuite verify_induction(const InductionSuiteOptions& opts) {
  using namespace induction;
  if (opts.samples < 1 || opts.max_order < 0) throw ConfigError("induction suite needs samples >= 1, max_order >= 0");
  std::mt19937_64 rng(opts.seed);
  InductionSuite suite;
  suite.report.title = "corner induction";

  Family cert;
  for (int s = 0; s < opts.samples; ++s) {
    const RationalLame lame = random_lame(rng);
    const InductionCertificate c = run_induction(lame, opts.max_order);
    std::string where = "lambda=" + lame.lambda.get_str() + " mu=" + lame.mu.get_str();
    if (!c.passed && !c.orders.empty()) where += " fails at order " + std::to_string(c.orders.back().order);
    cert.record(c.passed && static_cast<int>(c.orders.size()) == opts.max_order + 1, where);
    if (s == 0) suite.log["certificate"] = proof_log(c);
  }
  suite.report.add("full column rank at orders 0.." + std::to_string(opts.max_order), cert.failed == 0, cert.detail());

  // Degeneracy probes: the first order whose system loses rank, if any.
  struct Probe {
    std::string name;
    mpq_class a, b;
  };
  const std::vector<Probe> probes = {{"a = b", 1, 1}, {"a = -b", 1, -1}, {"b = 0", 1, 0}};
  suite.log["probes"] = nlohmann::json::array();
  for (const auto& p : probes) {
    int first = -1;
    nlohmann::json ranks = nlohmann::json::array();
    for (int n = 0; n <= opts.probe_max_order; ++n) {
      const RankReport r = probe_order(n, p.a, p.b);
      ranks.push_back({{"order", n}, {"rank", r.rank}, {"unknowns", r.unknowns}});
      if (first < 0 && !r.full_rank()) first = n;
    }
    suite.log["probes"].push_back({{"probe", p.name}, {"first_deficient_order", first}, {"ranks", ranks}});
    suite.report.add("degeneracy probe " + p.name + " loses rank at some n <= " + std::to_string(opts.probe_max_order),
                     first >= 0,
                     first >= 0 ? "first deficient order " + std::to_string(first)
                                : "full rank at every order <= " + std::to_string(opts.probe_max_order));
  }

  // Order-4 PDE rows: (a+b) v1[2] + (a-b) v2[3] = 0 and (a+b) v2[2] + (a-b) v1[1] = 0.
  Family rel;
  for (int s = 0; s < 10; ++s) {
    const RationalLame lame = random_lame(rng);
    const mpq_class a = lame.a(), b = lame.b();
    const auto rows = pde_rows(4, a, b);
    std::vector<GaussianRational> w1(10), w2(10);
    w1[unknown_index(4, 1, 2)] = GaussianRational(a + b);
    w1[unknown_index(4, 2, 3)] = GaussianRational(a - b);
    w2[unknown_index(4, 2, 2)] = GaussianRational(a + b);
    w2[unknown_index(4, 1, 1)] = GaussianRational(a - b);
    const bool ok = rows.size() == 2 && rows[0].coeffs == w1 && rows[1].coeffs == w2;
    rel.record(ok, "lambda=" + lame.lambda.get_str() + " mu=" + lame.mu.get_str());
    const CheckReport red = order4_reduction(a, b);
    rel.record(red.passed(), "order-4 reduction [" + failures_of(red) + "]");
  }
  suite.report.add("order-4 PDE rows reproduce the two printed relations", rel.failed == 0, rel.detail());
  return suite;
}

CheckReport verify_vanishing_traction(int fields, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> pos(0.2, 3.0);
  CheckReport report;
  report.title = "traction on a line";
  Family div_form, curl_form, recon, guenter;
  auto crand = [&] { return cplx(u(rng), u(rng)); };
  for (int k = 0; k < fields; ++k) {
    const double mu = pos(rng);
    const LameParameters lame(pos(rng) - mu, mu);
    const Vec2 x0(3 * u(rng), 3 * u(rng));
    const double th = 3.14159265358979323846 * u(rng);
    const Vec2 nu(std::cos(th), std::sin(th));
    const Vec2 tau(-nu.y(), nu.x());
    // w(x) = (nu.(x - x0)) g(x), g(x) = (g0 + G (x - x0)) e^{i k d.(x - x0)}: on the line the
    // Jacobian is g(x) nu^T.
    const CVec2 g0(crand(), crand());
    CMat2 G;
    G << crand(), crand(), crand(), crand();
    const Vec2 d(u(rng), u(rng));
    const double kk = 2 * pos(rng);
    const Vec2 x = x0 + 4 * u(rng) * tau;
    const CVec2 gx = (g0 + G * (x - x0).cast<cplx>()) * std::exp(cplx(0, kk * d.dot(x - x0)));
    FieldSample s;
    s.value = CVec2::Zero();
    s.jacobian = gx * nu.transpose().cast<cplx>();

    const CVec2 t = traction(s, nu, lame);
    const double scale = std::max(1.0, t.norm());
    const std::string where = "field " + std::to_string(k);
    div_form.record((traction_vanishing_div_form(s, nu, lame) - t).norm() <= tol * scale, where);
    curl_form.record((traction_vanishing_curl_form(s, nu, lame) - t).norm() <= tol * scale, where);
    const CVec2 dn = *s.jacobian * nu.cast<cplx>();
    recon.record((normal_from_cauchy(t, nu, lame) - dn).norm() <= tol * std::max(1.0, dn.norm()), where);
    guenter.record(guenter_derivative(s, nu).norm() <= tol * std::max(1.0, dn.norm()), where);
  }
  report.add("traction equals its div-form", div_form.failed == 0, div_form.detail());
  report.add("traction equals its curl-form", curl_form.failed == 0, curl_form.detail());
  report.add("normal derivative recovered from traction", recon.failed == 0, recon.detail());
  report.add("Guenter derivative vanishes", guenter.failed == 0, guenter.detail());
  return report;
}

}  // namespace cornerscat
