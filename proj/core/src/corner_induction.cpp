#include "cornerscat/corner_induction.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "cornerscat/errors.hpp"

namespace cornerscat::induction {

namespace {

using Poly = std::vector<GaussianRational>;  // index = exponent of Lambda1

Poly multiply(const Poly& x, const Poly& y) {
  Poly r(x.size() + y.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
  }
  return r;
}

mpz_class binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

GaussianRational qz(const mpz_class& z) { return GaussianRational(mpq_class(z)); }

std::string pivot_digest(const EliminationTrace& tr) {
  std::ostringstream os;
  os << "rank=" << tr.rank << ";pivots=";
  for (auto c : tr.pivot_columns) os << c << ',';
  os << ";rows=";
  for (auto r : tr.row_order) os << r << ',';
  return sha256_hex(os.str());
}

RankReport rank_of(int n, const mpq_class& a, const mpq_class& b) {
  const JetSystem sys = assemble_jet_system(n, a, b);
  const EliminationTrace tr = sys.matrix().eliminate();
  RankReport r;
  r.order = n;
  r.unknowns = sys.unknowns();
  r.rank = tr.rank;
  r.pivot_hash = pivot_digest(tr);
  for (const auto& row : sys.rows) {
    (row.source == RowSource::Pde ? r.pde_rows : r.boundary_rows) += 1;
    r.provenance.push_back(to_string(row.source) + " " + row.recipe);
  }
  return r;
}

}  // namespace

std::string to_string(RowSource s) {
  switch (s) {
    case RowSource::Boundary: return "boundary";
    case RowSource::Pde: return "pde";
    case RowSource::PrintedComparison: return "printed-comparison";
  }
  return "unknown";
}

std::size_t unknown_index(int n, int t, int j) {
  if (t < 1 || t > 2 || j < 0 || j > n) throw PreconditionError("unknown_index out of range");
  return static_cast<std::size_t>((t - 1) * (n + 1) + j);
}

std::vector<GaussianRational> tangential_in_lambda(int n, int p) {
  if (n < 0 || p < 0 || p > n) throw PreconditionError("tangential_in_lambda: need 0 <= p <= n");
  const Poly plus{1, 1};    // Lambda2 + Lambda1
  const Poly minus{-1, 1};  // Lambda1 - Lambda2
  Poly r{1};
  for (int k = 0; k < p; ++k) r = multiply(r, plus);
  for (int k = 0; k < n - p; ++k) r = multiply(r, minus);

  // d_tau1 = (L1 + L2)/2, d_tau2 = i (L1 - L2)/2
  GaussianRational scale(mpq_class(1, 1));
  for (int k = 0; k < n - p; ++k) scale *= GaussianRational::i();
  scale *= GaussianRational(mpq_class(mpz_class(1), mpz_class(1) << n));
  for (auto& c : r) c *= scale;
  return r;
}

std::vector<ConstraintRow> boundary_rows(int n) {
  if (n < 0) throw PreconditionError("boundary_rows: negative order");
  const std::size_t cols = 2 * static_cast<std::size_t>(n + 1);
  std::vector<ConstraintRow> rows;
  if (n == 0) {
    for (int t = 1; t <= 2; ++t) {
      ConstraintRow r{RowSource::Boundary, "t=" + std::to_string(t) + " w(O)=0", Poly(cols)};
      r.coeffs[unknown_index(0, t, 0)] = 1;
      rows.push_back(std::move(r));
    }
    return rows;
  }
  // w = 0 on either edge kills the pure tangential derivative along it; Tw = 0
  // (with lower orders already zero) kills the once-mixed one.
  std::set<int> powers{n, n - 1, 1, 0};
  for (int t = 1; t <= 2; ++t) {
    for (int p : powers) {
      const Poly c = tangential_in_lambda(n, p);
      ConstraintRow r{RowSource::Boundary, "t=" + std::to_string(t) + " p=" + std::to_string(p), Poly(cols)};
      for (int j = 0; j <= n; ++j) r.coeffs[unknown_index(n, t, j)] = c[static_cast<std::size_t>(j)];
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

std::vector<ConstraintRow> pde_rows(int n, const mpq_class& a, const mpq_class& b) {
  std::vector<ConstraintRow> rows;
  if (n < 4) return rows;
  const std::size_t cols = 2 * static_cast<std::size_t>(n + 1);
  const algebra::LambdaForm form = algebra::lsq_lambda_form(a, b).in_w_basis();
  // The W-basis form carries an overall 1/2; rows are scaled by 2 so that the
  // coefficients come out as plain (a +- b).
  const GaussianRational two(2);
  for (int k = 0; k <= n - 4; ++k) {
    for (std::size_t comp = 0; comp < 2; ++comp) {
      ConstraintRow r{RowSource::Pde, "k=" + std::to_string(k) + " W" + std::to_string(comp + 1), Poly(cols)};
      for (int e = 0; e <= 4; ++e) {
        const GRMatrix& c = form.coeff[static_cast<std::size_t>(e)];
        for (int t = 1; t <= 2; ++t) {
          const GaussianRational& v = c(comp, static_cast<std::size_t>(t - 1));
          if (!v.is_zero()) r.coeffs[unknown_index(n, t, k + e)] += two * v;
        }
      }
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

GRMatrix JetSystem::matrix() const {
  GRMatrix m(rows.size(), unknowns());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < unknowns(); ++c) m(r, c) = rows[r].coeffs[c];
  }
  return m;
}

JetSystem assemble_jet_system(int n, const mpq_class& a, const mpq_class& b) {
  JetSystem s;
  s.order = n;
  s.rows = boundary_rows(n);
  auto pde = pde_rows(n, a, b);
  s.rows.insert(s.rows.end(), std::make_move_iterator(pde.begin()), std::make_move_iterator(pde.end()));
  return s;
}

RankReport certify_order(int n, const mpq_class& a, const mpq_class& b) {
  if (sgn(a) <= 0 || sgn(b) <= 0 || a == b) {
    throw PreconditionError("certify_order requires a > 0, b > 0 and a != b");
  }
  return rank_of(n, a, b);
}

RankReport probe_order(int n, const mpq_class& a, const mpq_class& b) { return rank_of(n, a, b); }

GRMatrix tau_to_lambda_basis(int n) {
  GRMatrix m(static_cast<std::size_t>(n + 1), static_cast<std::size_t>(n + 1));
  for (int p = 0; p <= n; ++p) {
    const Poly c = tangential_in_lambda(n, p);
    for (int j = 0; j <= n; ++j) m(static_cast<std::size_t>(p), static_cast<std::size_t>(j)) = c[static_cast<std::size_t>(j)];
  }
  return m;
}

ChainStep chain_u0_and_L2(int n, const std::vector<RankReport>& certified) {
  if (n < 2) throw PreconditionError("chain_u0_and_L2 starts at order 2");
  for (int k = 0; k <= n; ++k) {
    const auto it = std::find_if(certified.begin(), certified.end(), [k](const RankReport& r) { return r.order == k; });
    if (it == certified.end() || !it->full_rank()) {
      throw ContractViolation("chain_u0_and_L2(" + std::to_string(n) + ") needs a full-rank certificate at order " +
                              std::to_string(k));
    }
  }
  const int m = n - 2;
  auto grad = [m](const std::string& f) {
    if (m == 0) return f + "(O) = 0";
    if (m == 1) return "grad " + f + "(O) = 0";
    return "grad^" + std::to_string(m) + " " + f + "(O) = 0";
  };
  ChainStep s;
  s.order = n;
  s.licenses_pde_order = n + 2;
  s.conclusions = {
      "grad^j w(O) = 0 for j <= " + std::to_string(n),
      grad("u0"),
      grad("L u0"),
      grad("L^2 w"),
  };
  return s;
}

InductionCertificate run_induction(const algebra::RationalLame& lame, int max_order) {
  if (max_order < 0) throw PreconditionError("max_order must be >= 0");
  InductionCertificate cert;
  cert.max_order = max_order;
  cert.lambda = lame.lambda;
  cert.mu = lame.mu;
  cert.guards = algebra::global_guards(lame);
  cert.guards.merge(algebra::b_matrix_identities(lame));
  cert.assumption =
      "all jets of w at O vanish => w = 0 near O uses real-analyticity of w inside the domain "
      "(prose argument, not computed)";

  const mpq_class a = lame.a();
  const mpq_class b = lame.b();
  bool ok = true;
  for (int n = 0; n <= max_order; ++n) {
    if (n >= 4) {
      const bool licensed = std::any_of(cert.chain.begin(), cert.chain.end(),
                                        [n](const ChainStep& c) { return c.licenses_pde_order == n; });
      if (!licensed) throw ContractViolation("pde rows at order " + std::to_string(n) + " are not licensed");
    }
    cert.orders.push_back(certify_order(n, a, b));
    if (!cert.orders.back().full_rank()) {
      ok = false;
      break;
    }
    if (n >= 2) cert.chain.push_back(chain_u0_and_L2(n, cert.orders));
  }
  cert.passed = ok && cert.guards.passed();
  return cert;
}

nlohmann::json proof_log(const InductionCertificate& cert) {
  nlohmann::json j;
  j["lambda"] = cert.lambda.get_str();
  j["mu"] = cert.mu.get_str();
  j["max_order"] = cert.max_order;
  j["passed"] = cert.passed;
  j["guards"] = cert.guards;
  j["assumption"] = cert.assumption;
  j["orders"] = nlohmann::json::array();
  for (const auto& r : cert.orders) {
    j["orders"].push_back({{"order", r.order},
                           {"unknowns", r.unknowns},
                           {"rank", r.rank},
                           {"full_rank", r.full_rank()},
                           {"boundary_rows", r.boundary_rows},
                           {"pde_rows", r.pde_rows},
                           {"pivot_hash", r.pivot_hash},
                           {"rows", r.provenance}});
  }
  j["chain"] = nlohmann::json::array();
  for (const auto& c : cert.chain) {
    j["chain"].push_back({{"order", c.order}, {"conclusions", c.conclusions}, {"licenses_pde_order", c.licenses_pde_order}});
  }
  return j;
}

GRMatrix edge_normal_form(int n) {
  if (n < 3) throw PreconditionError("edge_normal_form needs n >= 3");
  const auto rows = boundary_rows(n);  // first four rows belong to t = 1, ordered p = 0, 1, n-1, n
  const std::size_t N = static_cast<std::size_t>(n);
  const std::array<std::size_t, 4> edges{N, N - 1, 1, 0};

  GRMatrix E(4, 4);
  GRMatrix M(4, N + 1);
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) E(r, c) = rows[r].coeffs[edges[c]];
    for (std::size_t j = 2; j + 2 <= N; ++j) M(r, j) = rows[r].coeffs[j];
  }
  // E x_edges + M x = 0
  return GaussianRational(-1) * (E.inverse() * M);
}

std::size_t PrintedComparison::mismatches() const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const PrintedEntry& e) { return !e.match(); }));
}

PrintedComparison compare_printed_systems(int n) {
  if (n < 4 || n > 6) throw PreconditionError("printed systems exist for orders 4, 5 and 6 only");
  const int m = n - 1;
  using GR = GaussianRational;

  // Literal displays, transcribed.
  GRMatrix lit;
  GR lit_den;
  if (n == 4) {
    lit = GRMatrix{{8, 0, 8, 0}, {-3, -1, 3, -1}, {1, 3, -1, 3}, {0, -8, 0, 8}};
    lit_den = -16;
  } else if (n == 5) {
    lit = GRMatrix{{4, 1, 4, -1}, {-1, 0, 1, 0}, {0, -1, 0, 1}, {1, 4, -1, 4}};
    lit_den = -8;
  } else {
    lit = GRMatrix{{24, 0, 24, 0}, {-5, -1, 5, -1}, {1, 5, -1, 5}, {0, -24, 0, 24}};
    lit_den = -48;
  }

  // General formulas for this m.
  GRMatrix gen;
  GR gen_den;
  if (m % 2 == 0) {
    gen = GRMatrix{{m, 1, m, -1}, {-1, 0, 1, 0}, {0, -1, 0, 1}, {1, m, -1, m}};
    gen_den = -2 * m;
  } else {
    const int q = m * m - 1;
    gen = GRMatrix{{q, 0, q, 0}, {-m, -1, m, -1}, {1, m, -1, m}, {0, -q, 0, q}};
    gen_den = -2 * q;
  }
  auto alpha = [m](int j) {
    const int s1 = (m + 1 - j) % 2 == 0 ? 1 : -1;
    const int s0 = (m - j) % 2 == 0 ? 1 : -1;
    return GRMatrix::column({qz(binom(m, m + 1 - j) * s1), qz(binom(m, m - j) * s0), qz(binom(m, m + 1 - j)), qz(binom(m, m - j))});
  };

  const GRMatrix derived = edge_normal_form(n);
  static const char* kEdge[4] = {"L1^n", "L1^(n-1) L2", "L1 L2^(n-1)", "L2^n"};

  PrintedComparison out;
  out.order = n;

  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      out.entries.push_back({"matrix(" + std::to_string(r) + "," + std::to_string(c) + ") display vs formula", lit(r, c), gen(r, c)});
    }
  }
  out.entries.push_back({"divisor display vs formula", lit_den, gen_den});
  if (n == 4) {
    const GRMatrix printed_vec = GRMatrix::column({3, -3, 3, 3});
    const GRMatrix a2 = alpha(2);
    for (std::size_t r = 0; r < 4; ++r) {
      out.entries.push_back({"vector[" + std::to_string(r) + "] display vs alpha(3,2)", printed_vec(r, 0), a2(r, 0)});
    }
  }

  for (int j = 2; j <= m - 1; ++j) {
    const auto J = static_cast<std::size_t>(j);
    const GRMatrix a = alpha(j);
    const GRMatrix lit_vec = n == 4 ? GRMatrix::column({3, -3, 3, 3}) : a;
    const GRMatrix lit_coef = lit * lit_vec;
    const GRMatrix gen_coef = gen * a;
    for (std::size_t r = 0; r < 4; ++r) {
      const std::string where = std::string(kEdge[r]) + " <- L1^" + std::to_string(j) + " L2^" + std::to_string(n - j);
      out.entries.push_back({"display: " + where, lit_coef(r, 0) / lit_den, derived(r, J)});
      out.entries.push_back({"formula: " + where, gen_coef(r, 0) / gen_den, derived(r, J)});
    }

    // The two scalar "especially" relations.
    const GR c1 = qz(binom(m, m + 1 - j));
    const GR c0 = qz(binom(m, m - j));
    const GR sg = (m - j) % 2 == 0 ? GR(1) : GR(-1);
    GR row1;
    GR row2;
    if (m % 2 == 0) {
      row1 = (c1 + sg * c1) / GR(-2 * m);
      row2 = (c0 - sg * c0) / GR(-2 * m);
    } else {
      const GR mm(m);
      row1 = (mm * c1 + sg * mm * c1 - c0 - sg * c0) / GR(-2 * (m * m - 1));
      row2 = (mm * c0 + sg * mm * c0 - c1 - sg * c1) / GR(-2 * (m * m - 1));
    }
    out.entries.push_back({"scalar: " + std::string(kEdge[1]) + " <- L1^" + std::to_string(j), row1, derived(1, J)});
    out.entries.push_back({"scalar: " + std::string(kEdge[2]) + " <- L1^" + std::to_string(j), row2, derived(2, J)});
  }

  // Vanishing conclusion from the independently built rows.
  {
    const auto rows = boundary_rows(n);
    const std::size_t N = static_cast<std::size_t>(n);
    const std::array<std::size_t, 4> edges{N, N - 1, 1, 0};
    GRMatrix E(4, 4);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) E(r, c) = rows[r].coeffs[edges[c]];
    out.edges_determined = !E.determinant().is_zero();
  }
  out.certified = certify_order(n, 9, 1).full_rank();
  return out;
}

nlohmann::json to_json(const PrintedComparison& c) {
  nlohmann::json j;
  j["order"] = c.order;
  j["edges_determined"] = c.edges_determined;
  j["certified"] = c.certified;
  j["mismatches"] = c.mismatches();
  j["entries"] = nlohmann::json::array();
  for (const auto& e : c.entries) {
    j["entries"].push_back({{"label", e.label}, {"printed", e.printed.str()}, {"derived", e.derived.str()}, {"match", e.match()}});
  }
  return j;
}

CheckReport order4_reduction(const mpq_class& a, const mpq_class& b) {
  CheckReport r;
  r.title = "order4_reduction";
  JetSystem bnd;
  bnd.order = 4;
  bnd.rows = boundary_rows(4);
  r.add("boundary rows alone have rank 8 of 10", bnd.matrix().rank() == 8);

  const GRMatrix nf = edge_normal_form(4);
  r.add("boundary rows force L1^3 L2 W_t = L1 L2^3 W_t = 0", nf(1, 2).is_zero() && nf(2, 2).is_zero());

  // In each block the boundary null vector is fixed by x2 = L1^2 L2^2 W_t;
  // restrict the pde rows to the two surviving parameters.
  const auto pde = pde_rows(4, a, b);
  GRMatrix reduced(pde.size(), 2);
  for (std::size_t i = 0; i < pde.size(); ++i) {
    for (int t = 1; t <= 2; ++t) {
      GaussianRational s = pde[i].coeffs[unknown_index(4, t, 2)];
      const std::array<int, 4> edge{4, 3, 1, 0};
      for (std::size_t e = 0; e < 4; ++e) s += pde[i].coeffs[unknown_index(4, t, edge[e])] * nf(e, 2);
      reduced(i, static_cast<std::size_t>(t - 1)) = s;
    }
  }
  r.add("pde rows on the boundary null space are nonsingular => L1^2 L2^2 W_t = 0",
        !reduced.determinant().is_zero(), reduced.str());
  return r;
}

}  // namespace cornerscat::induction
