#ifndef QF_CORRESPONDENCE_HPP
#define QF_CORRESPONDENCE_HPP

#include <random>

#include "qf/forms.hpp"

namespace qf {

// ---------------------------------------------------------------------------
// beta-tilde polarization of principal 4x4 Pfaffians and the trilinear form
// <xi | X | eta> = sum xi_i x_ij eta_j.
// ---------------------------------------------------------------------------

// beta~_j(X,Y) with (-1)^{j-1} beta~_j(X,X) = Pf(X_j) and
// (-1)^{j-1} beta~_j(X,Y) = Pf((X+Y)_j) - Pf(X_j) - Pf(Y_j) for X != Y.
template <class R>
std::array<typename R::Elem, 5> beta_vector(const Matrix<R>& X, const Matrix<R>& Y) {
  const R& rg = X.ring;
  std::array<typename R::Elem, 5> out{rg.zero(), rg.zero(), rg.zero(), rg.zero(), rg.zero()};
  bool diag = X.equals(Y);
  for (size_t j = 0; j < 5; ++j) {
    typename R::Elem v = rg.zero();
    if (diag) {
      v = principal_pfaffian(X, j);
    } else {
      auto s = principal_pfaffian(X + Y, j);
      s = rg.sub(s, principal_pfaffian(X, j));
      v = rg.sub(s, principal_pfaffian(Y, j));
    }
    out[j] = (j % 2 == 0) ? v : rg.neg(v);  // (-1)^{j-1} with 1-based j
  }
  return out;
}

template <class R>
typename R::Elem trilinear(const std::array<typename R::Elem, 5>& xi, const Matrix<R>& X,
                           const std::array<typename R::Elem, 5>& eta) {
  const R& rg = X.ring;
  auto acc = rg.zero();
  for (size_t i = 0; i < 5; ++i) {
    if (rg.is_zero(xi[i])) continue;
    for (size_t j = 0; j < 5; ++j) {
      if (rg.is_zero(X.at(i, j)) || rg.is_zero(eta[j])) continue;
      acc = rg.add(acc, rg.mul(xi[i], rg.mul(X.at(i, j), eta[j])));
    }
  }
  return acc;
}

// ---------------------------------------------------------------------------
// The 6x5 Gram matrix M. Rows are the S^2 N_3 coordinates in the order
// (alpha^2, beta gamma, beta^2, gamma alpha, gamma^2, alpha beta); column j is
//   ( Pf(A_j),
//     Pf((B+C)_j) - Pf(B_j) - Pf(C_j),
//     Pf(B_j),
//     Pf((C+A)_j) - Pf(C_j) - Pf(A_j),
//     Pf(C_j),
//     Pf((A+B)_j) - Pf(A_j) - Pf(B_j) ).
// ---------------------------------------------------------------------------
template <class R>
Matrix<R> gram_matrix(const AlternatingNet<R>& n) {
  const R& rg = n.ring;
  Matrix<R> M(rg, 6, 5);
  auto polar = [&](const Matrix<R>& X, const Matrix<R>& Y, size_t j) {
    auto s = principal_pfaffian(X + Y, j);
    s = rg.sub(s, principal_pfaffian(X, j));
    return rg.sub(s, principal_pfaffian(Y, j));
  };
  for (size_t j = 0; j < 5; ++j) {
    M.at(0, j) = principal_pfaffian(n.A, j);
    M.at(1, j) = polar(n.B, n.C, j);
    M.at(2, j) = principal_pfaffian(n.B, j);
    M.at(3, j) = polar(n.C, n.A, j);
    M.at(4, j) = principal_pfaffian(n.C, j);
    M.at(5, j) = polar(n.A, n.B, j);
  }
  return M;
}

// Q_nu built from the signed maximal minors of M (M_i omits row i, 1-based):
//   [ det M1  -det M6  -det M4 ]
//   [-det M6   det M3  -det M2 ]
//   [-det M4  -det M2   det M5 ]
template <class R>
Matrix<R> q_nu_from_gram(const Matrix<R>& M) {
  const R& rg = M.ring;
  auto d = [&](size_t omit_row_1based) { return determinant(M.omit_row(omit_row_1based - 1)); };
  auto d1 = d(1), d2 = d(2), d3 = d(3), d4 = d(4), d5 = d(5), d6 = d(6);
  Matrix<R> Q(rg, 3, 3);
  Q.at(0, 0) = d1;
  Q.at(1, 1) = d3;
  Q.at(2, 2) = d5;
  Q.at(0, 1) = Q.at(1, 0) = rg.neg(d6);
  Q.at(0, 2) = Q.at(2, 0) = rg.neg(d4);
  Q.at(1, 2) = Q.at(2, 1) = rg.neg(d2);
  return Q;
}

template <class R>
Matrix<R> q_nu(const AlternatingNet<R>& n) {
  return q_nu_from_gram(gram_matrix(n));
}

// Phi: the ternary form attached to a net. The cokernel trivialization is the
// sign that sends the split net to the split form, which is the negative of
// the raw signed-minor matrix Q_nu.
template <class R>
TernarySymForm<R> phi_from_net(const AlternatingNet<R>& n) {
  return TernarySymForm<R>(n.ring, q_nu(n).neg());
}

// ---------------------------------------------------------------------------
// Psi: the net attached to a non-degenerate ternary form.
//
// The six monomial dual functionals on S^2 N_3, as symmetric pairing matrices,
// are taken in the fixed sequence
//   (alpha^2, gamma alpha, gamma^2, alpha beta, beta gamma, beta^2);
// the first one whose pairing coefficient against Q is a unit is the pivot
// (the class of Q itself); the surviving five, with alternating signs
// (-,+,-,+,-), become the images of e_1..e_5. On the split form this
// reproduces the identification (alpha^2)^v -> -e_1, (gamma alpha)^v -> e_2,
// (alpha beta)^v = (gamma^2)^v -> -e_3, (beta gamma)^v -> e_4,
// (beta^2)^v -> -e_5, and Psi(Q_spl) is the split net on the nose.
// Entries: nu(e_i ^ e_j) = Alt(P_i Q^{-1} P_j) read off as
// (Alt_23, Alt_31, Alt_12) -> (alpha, beta, gamma).
// ---------------------------------------------------------------------------
template <class R>
AlternatingNet<R> net_from_form(const TernarySymForm<R>& q) {
  const R& rg = q.ring;
  auto det = determinant(q.Q);
  if (!rg.is_unit(det)) throw ring_error("net_from_form: det Q is not a unit");
  Matrix<R> Qinv = adjugate(q.Q).scaled(rg.inv(det));

  struct Mon {
    int k, l;  // pairing indices (0-based), k == l for squares
  };
  const std::array<Mon, 6> seq = {Mon{0, 0}, Mon{2, 0}, Mon{2, 2}, Mon{0, 1}, Mon{1, 2}, Mon{1, 1}};
  auto mon_matrix = [&](const Mon& m) {
    Matrix<R> E(rg, 3, 3);
    if (m.k == m.l) {
      E.at(size_t(m.k), size_t(m.k)) = rg.one();
    } else {
      E.at(size_t(m.k), size_t(m.l)) = rg.one();
      E.at(size_t(m.l), size_t(m.k)) = rg.one();
    }
    return E;
  };
  size_t pivot = 6;
  for (size_t i = 0; i < 6; ++i) {
    if (rg.is_unit(q.Q.at(size_t(seq[i].k), size_t(seq[i].l)))) {
      pivot = i;
      break;
    }
  }
  std::vector<Matrix<R>> P;
  if (pivot < 6) {
    size_t idx = 0;
    for (size_t i = 0; i < 6; ++i) {
      if (i == pivot) continue;
      auto E = mon_matrix(seq[i]);
      if (idx % 2 == 0) E = E.neg();  // signs -,+,-,+,-
      P.push_back(E);
      ++idx;
    }
  } else if constexpr (std::is_same_v<R, ZZ>) {
    // no single pairing coefficient is a unit (possible over Z when the
    // entries avoid +-1 while det = +-1): complete the primitive pairing
    // vector to a unimodular basis and take the other five columns as the
    // quotient basis
    std::array<Int, 6> v;
    for (size_t i = 0; i < 6; ++i) v[i] = q.Q.at(size_t(seq[i].k), size_t(seq[i].l));
    Matrix<ZZ> W = Matrix<ZZ>::identity(rg, 6);
    // invariant: original vector = W * v; elementary ops keep W unimodular
    while (true) {
      size_t nz = 0, last = 0;
      for (size_t i = 0; i < 6; ++i)
        if (v[i] != 0) {
          ++nz;
          last = i;
        }
      if (nz <= 1) {
        if (nz == 0 || (v[last] != 1 && v[last] != -1))
          throw ring_error("net_from_form: pairing vector is not primitive");
        // quotient basis = columns of W other than `last` (sign irrelevant)
        for (size_t col = 0; col < 6; ++col) {
          if (col == last) continue;
          Matrix<R> E(rg, 3, 3);
          for (size_t m = 0; m < 6; ++m) {
            if (W.at(m, col) == 0) continue;
            auto Em = mon_matrix(seq[m]).scaled(W.at(m, col));
            E = E + Em;
          }
          P.push_back(E);
        }
        break;
      }
      // pick the two smallest nonzero |entries| and reduce
      size_t i = 6, j = 6;
      for (size_t t = 0; t < 6; ++t) {
        if (v[t] == 0) continue;
        if (i == 6 || abs(v[t]) < abs(v[i])) {
          j = i;
          i = t;
        } else if (j == 6 || abs(v[t]) < abs(v[j])) {
          j = t;
        }
      }
      Int c = v[j] / v[i];
      v[j] -= c * v[i];  // row op on v: col op on W preserving W*v
      for (size_t m = 0; m < 6; ++m) W.at(m, i) += c * W.at(m, j);
    }
  } else {
    throw ring_error("net_from_form: no unit pairing coefficient");
  }
  Matrix<R> A(rg, 5, 5), B(rg, 5, 5), C(rg, 5, 5);
  for (size_t i = 0; i < 5; ++i)
    for (size_t j = i + 1; j < 5; ++j) {
      Matrix<R> M = P[i] * Qinv * P[j];
      auto alt = [&](size_t r_, size_t c_) { return rg.sub(M.at(r_, c_), M.at(c_, r_)); };
      auto av = alt(1, 2), bv = alt(2, 0), cv = alt(0, 1);
      A.at(i, j) = av;
      A.at(j, i) = rg.neg(av);
      B.at(i, j) = bv;
      B.at(j, i) = rg.neg(bv);
      C.at(i, j) = cv;
      C.at(j, i) = rg.neg(cv);
    }
  return AlternatingNet<R>(rg, A, B, C);
}

// ---------------------------------------------------------------------------
// P' of Claim 3.12: the symmetric matrix of trilinear pairings
//   [ <b(A,A)|C|b(A,B)>  <b(A,A)|C|b(B,B)>  <b(C,C)|B|b(A,A)> ]
//   [        .           <b(B,B)|A|b(B,C)>  <b(B,B)|A|b(C,C)> ]
//   [        .                  .           <b(C,C)|B|b(C,A)> ]
// The (2,2) entry pairs with A (this is forced by Theta' = Theta(P') and by
// the adjugate identity; the cyclic pattern is <b(X,X)|Z|b(X,Y)> for
// (X,Y,Z) = (A,B,C), (B,C,A), (C,A,B)).
// ---------------------------------------------------------------------------
template <class R>
Matrix<R> p_prime(const AlternatingNet<R>& n) {
  const R& rg = n.ring;
  auto bAA = beta_vector(n.A, n.A);
  auto bBB = beta_vector(n.B, n.B);
  auto bCC = beta_vector(n.C, n.C);
  auto bAB = beta_vector(n.A, n.B);
  auto bBC = beta_vector(n.B, n.C);
  auto bCA = beta_vector(n.C, n.A);
  Matrix<R> P(rg, 3, 3);
  P.at(0, 0) = trilinear(bAA, n.C, bAB);
  P.at(0, 1) = P.at(1, 0) = trilinear(bAA, n.C, bBB);
  P.at(0, 2) = P.at(2, 0) = trilinear(bCC, n.B, bAA);
  P.at(1, 1) = trilinear(bBB, n.A, bBC);
  P.at(1, 2) = P.at(2, 1) = trilinear(bBB, n.A, bCC);
  P.at(2, 2) = trilinear(bCC, n.B, bCA);
  return P;
}

// ---------------------------------------------------------------------------
// Theta. Columns are indexed by pairs (i,j), 1 <= i < j <= 6, in lex order,
// over the wedge of the dual basis
// ((alpha^2)^v, (beta gamma)^v, (beta^2)^v, (gamma alpha)^v, (gamma^2)^v,
//  (alpha beta)^v); rows are (alpha, beta, gamma).
// ---------------------------------------------------------------------------
inline const std::vector<std::pair<int, int>>& wedge_pairs_6() {
  static const std::vector<std::pair<int, int>> v = {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}, {2, 3}, {2, 4}, {2, 5},
                                                     {2, 6}, {3, 4}, {3, 5}, {3, 6}, {4, 5}, {4, 6}, {5, 6}};
  return v;
}

// The printed sign pattern of Claim 3.10, with p_ij substituted from the
// symmetric argument.
template <class R>
Matrix<R> theta_of(const Matrix<R>& P) {
  if (P.r != 3 || P.c != 3 || !P.is_symmetric()) throw ring_error("theta_of needs a symmetric 3x3 matrix");
  const R& rg = P.ring;
  auto p = [&](int i, int j) { return P.at(size_t(i - 1), size_t(j - 1)); };
  auto n = [&](int i, int j) { return rg.neg(p(i, j)); };
  auto z = rg.zero();
  Matrix<R> T(rg, 3, 15);
  using E = typename R::Elem;
  std::array<std::array<E, 15>, 3> rows = {
      std::array<E, 15>{z, z, z, z, z, n(2, 2), p(1, 3), p(3, 3), n(1, 2), p(1, 2), p(2, 3), z, z, n(1, 1), n(1, 3)},
      std::array<E, 15>{n(1, 2), z, n(1, 1), n(1, 3), z, z, p(2, 3), z, p(2, 2), z, z, z, n(3, 3), p(1, 2), p(2, 3)},
      std::array<E, 15>{p(1, 3), p(1, 2), z, z, p(1, 1), z, n(3, 3), z, n(2, 3), n(2, 3), z, n(2, 2), z, p(1, 3), z}};
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 15; ++j) T.at(i, j) = rows[i][j];
  return T;
}

// Independent route for Theta: column (i,j) is Alt(E_i P E_j) where E_1..E_6
// are the monomial dual pairing matrices in the order
// (alpha^2, beta gamma, beta^2, gamma alpha, gamma^2, alpha beta).
template <class R>
Matrix<R> theta_via_alt(const Matrix<R>& P) {
  const R& rg = P.ring;
  auto mk = [&](int k, int l) {
    Matrix<R> E(rg, 3, 3);
    if (k == l)
      E.at(size_t(k), size_t(k)) = rg.one();
    else {
      E.at(size_t(k), size_t(l)) = rg.one();
      E.at(size_t(l), size_t(k)) = rg.one();
    }
    return E;
  };
  std::array<Matrix<R>, 6> E = {mk(0, 0), mk(1, 2), mk(1, 1), mk(0, 2), mk(2, 2), mk(0, 1)};
  Matrix<R> T(rg, 3, 15);
  size_t col = 0;
  for (auto [i, j] : wedge_pairs_6()) {
    Matrix<R> M = E[size_t(i - 1)] * P * E[size_t(j - 1)];
    auto alt = [&](size_t r_, size_t c_) { return rg.sub(M.at(r_, c_), M.at(c_, r_)); };
    T.at(0, col) = alt(1, 2);
    T.at(1, col) = alt(2, 0);
    T.at(2, col) = alt(0, 1);
    ++col;
  }
  return T;
}

// Theta' of Claim 3.11: column (i,j) is
// (<m_i|A|m_j>, <m_i|B|m_j>, <m_i|C|m_j>) over the beta-signed rows of the
// Gram matrix (entry k of row i is (-1)^{k-1} m_ik, i.e. the beta~ vectors;
// this is the (-1)^{k+l} twist in the printed minor formula).
template <class R>
Matrix<R> theta_prime(const AlternatingNet<R>& n) {
  const R& rg = n.ring;
  Matrix<R> M = gram_matrix(n);
  auto row = [&](int i) {
    std::array<typename R::Elem, 5> v{rg.zero(), rg.zero(), rg.zero(), rg.zero(), rg.zero()};
    for (size_t j = 0; j < 5; ++j) v[j] = (j % 2 == 0) ? M.at(size_t(i - 1), j) : rg.neg(M.at(size_t(i - 1), j));
    return v;
  };
  Matrix<R> T(rg, 3, 15);
  size_t col = 0;
  for (auto [i, j] : wedge_pairs_6()) {
    auto mi = row(i), mj = row(j);
    T.at(0, col) = trilinear(mi, n.A, mj);
    T.at(1, col) = trilinear(mi, n.B, mj);
    T.at(2, col) = trilinear(mi, n.C, mj);
    ++col;
  }
  return T;
}

// Theta' as the quadratic minor formula of Claim 3.11 (test oracle):
// row x entry of column (i,j) = sum_{k<l} (-1)^{k+l} (m_ik m_jl - m_il m_jk) x_kl.
template <class R>
Matrix<R> theta_prime_minor_formula(const AlternatingNet<R>& n) {
  const R& rg = n.ring;
  Matrix<R> M = gram_matrix(n);
  Matrix<R> T(rg, 3, 15);
  size_t col = 0;
  for (auto [i, j] : wedge_pairs_6()) {
    for (size_t x = 0; x < 3; ++x) {
      const Matrix<R>& X = n.member(x);
      auto acc = rg.zero();
      for (size_t k = 0; k < 5; ++k)
        for (size_t l = k + 1; l < 5; ++l) {
          if (rg.is_zero(X.at(k, l))) continue;
          auto minor = rg.sub(rg.mul(M.at(size_t(i - 1), k), M.at(size_t(j - 1), l)),
                              rg.mul(M.at(size_t(i - 1), l), M.at(size_t(j - 1), k)));
          // (-1)^{k+l} with 1-based indices = (-1)^{k+l} with 0-based too
          auto term = rg.mul(minor, X.at(k, l));
          acc = ((k + l) % 2 == 0) ? rg.add(acc, term) : rg.sub(acc, term);
        }
      T.at(x, col) = acc;
    }
    ++col;
  }
  return T;
}

// ---------------------------------------------------------------------------
// The generic net over ZZ[a_ij, b_ij, c_ij] (30 indeterminates).
// ---------------------------------------------------------------------------
inline std::vector<std::string> generic_net_vars() {
  std::vector<std::string> vars;
  for (char c : {'a', 'b', 'c'})
    for (int i = 1; i <= 5; ++i)
      for (int j = i + 1; j <= 5; ++j) vars.push_back(std::string(1, c) + std::to_string(i) + std::to_string(j));
  return vars;
}

template <class B>
AlternatingNet<PolyRing<B>> generic_net_over(const B& base) {
  PolyRing<B> R(base, generic_net_vars());
  auto mk = [&](size_t block) {
    Matrix<PolyRing<B>> m(R, 5, 5);
    size_t v = block * 10;
    for (size_t i = 0; i < 5; ++i)
      for (size_t j = i + 1; j < 5; ++j) {
        auto x = R.variable(v++);
        m.at(i, j) = x;
        m.at(j, i) = -x;
      }
    return m;
  };
  return AlternatingNet<PolyRing<B>>(R, mk(0), mk(1), mk(2));
}

inline AlternatingNet<PolyRing<ZZ>> generic_net() { return generic_net_over(ZZ{}); }

// blocks of variable indices for multidegree bookkeeping (a, b, c)
inline std::vector<std::vector<size_t>> generic_net_blocks() {
  std::vector<std::vector<size_t>> blocks(3);
  for (size_t b = 0; b < 3; ++b)
    for (size_t i = 0; i < 10; ++i) blocks[b].push_back(b * 10 + i);
  return blocks;
}

// ---------------------------------------------------------------------------
// Master identity verification.
// ---------------------------------------------------------------------------
struct IdentityCheck {
  std::string identity;
  bool pass = false;
  std::string detail;     // free-form (degrees, counterexample point, ...)
};

struct MasterIdentityReport {
  std::string mode;  // "symbolic" or "randomized"
  bool pass = false;
  bool budget_exceeded = false;
  uint64_t term_ops = 0;
  uint64_t samples = 0;
  uint64_t prime = 0;
  std::string sz_bound;  // Schwartz-Zippel bound note (randomized mode)
  std::vector<IdentityCheck> checks;
};

template <class B>
void run_master_symbolic(const B& base, MasterIdentityReport& rep) {
  {
    auto net = generic_net_over(base);
    auto Q = q_nu(net);
    auto P = p_prime(net);
    auto adjP = adjugate(P);
    bool main_pass = adjP.equals(Q);
    {
      IdentityCheck c;
      c.identity = "adjugate(P') = Q_nu";
      c.pass = main_pass;
      c.detail = main_pass ? "entrywise equal (9 polynomial identities)" : "entrywise mismatch";
      rep.checks.push_back(c);
    }
    auto F = determinant(P);
    auto md = F.multidegree(generic_net_blocks());
    bool deg_pass = md.size() == 3 && md[0] == 5 && md[1] == 5 && md[2] == 5 && F.total_degree() == 15;
    {
      IdentityCheck c;
      c.identity = "F = det P' has multidegree (5,5,5)";
      c.pass = deg_pass;
      c.detail = "multidegree (" + std::to_string(md[0]) + "," + std::to_string(md[1]) + "," + std::to_string(md[2]) +
                 "), " + std::to_string(F.term_count()) + " terms";
      rep.checks.push_back(c);
    }
    {
      IdentityCheck c;
      c.identity = "P' Q_nu = Q_nu P' = F E (corollary of adjugate identity)";
      c.pass = main_pass;
      c.detail = "P' adj(P') = det(P') E is the adjugate law";
      rep.checks.push_back(c);
    }
    {
      IdentityCheck c;
      c.identity = "det Q_nu = F^2 (corollary of adjugate identity)";
      c.pass = main_pass;
      c.detail = "det adj(P') = det(P')^2 for 3x3";
      rep.checks.push_back(c);
    }
    rep.pass = main_pass && deg_pass;
  }
}

inline MasterIdentityReport verify_master_identity_symbolic(uint64_t budget = 0) {
  MasterIdentityReport rep;
  rep.mode = "symbolic";
  TermBudget::reset(budget);
  try {
    // checked 64-bit coefficients first; any overflow falls back to big ints
    try {
      run_master_symbolic(ZZ64{}, rep);
    } catch (const int64_overflow&) {
      rep.checks.clear();
      TermBudget::reset(budget);
      run_master_symbolic(ZZ{}, rep);
    }
  } catch (const budget_exceeded& e) {
    rep.budget_exceeded = true;
    rep.pass = false;
    IdentityCheck c;
    c.identity = "symbolic computation";
    c.pass = false;
    c.detail = e.what();
    rep.checks.push_back(c);
  }
  rep.term_ops = TermBudget::spent();
  return rep;
}

// deterministic bounded sampling (Lemire-style rejection) on mt19937_64
inline uint64_t rand_below(std::mt19937_64& rng, uint64_t n) {
  while (true) {
    uint64_t x = rng();
    uint64_t lim = ~uint64_t(0) - (~uint64_t(0) % n);
    if (x < lim) return x % n;
  }
}

inline MasterIdentityReport verify_master_identity_randomized(uint64_t samples, uint64_t prime, uint64_t seed) {
  MasterIdentityReport rep;
  rep.mode = "randomized";
  rep.samples = samples;
  rep.prime = prime;
  if (samples == 0) throw ring_error("sample count must be positive");
  GF F(prime);
  std::mt19937_64 rng(seed);
  size_t fail_adj = 0, fail_pq = 0, fail_det = 0, fail_theta = 0;
  std::string witness;
  for (uint64_t s = 0; s < samples; ++s) {
    std::array<Matrix<GF>, 3> mats = {Matrix<GF>(F, 5, 5), Matrix<GF>(F, 5, 5), Matrix<GF>(F, 5, 5)};
    std::string pt;
    for (auto& m : mats)
      for (size_t i = 0; i < 5; ++i)
        for (size_t j = i + 1; j < 5; ++j) {
          uint64_t v = rand_below(rng, prime);
          m.at(i, j) = v;
          m.at(j, i) = F.neg(v);
          pt += (pt.empty() ? "" : ",") + std::to_string(v);
        }
    AlternatingNet<GF> net(F, mats[0], mats[1], mats[2]);
    auto Q = q_nu(net);
    auto P = p_prime(net);
    auto adjP = adjugate(P);
    auto f = determinant(P);
    bool ok_adj = adjP.equals(Q);
    auto PQ = P * Q;
    bool ok_pq = PQ.equals(Matrix<GF>::identity(F, 3).scaled(f)) && (Q * P).equals(PQ);
    bool ok_det = F.eq(determinant(Q), F.mul(f, f));
    bool ok_theta = theta_prime(net).equals(theta_of(P));
    if (!ok_adj) ++fail_adj;
    if (!ok_pq) ++fail_pq;
    if (!ok_det) ++fail_det;
    if (!ok_theta) ++fail_theta;
    if ((!ok_adj || !ok_pq || !ok_det || !ok_theta) && witness.empty()) witness = pt;
  }
  auto add = [&](const std::string& id, size_t fails) {
    IdentityCheck c;
    c.identity = id;
    c.pass = fails == 0;
    c.detail = fails == 0 ? "all samples pass" : std::to_string(fails) + " failing samples; witness=" + witness;
    rep.checks.push_back(c);
  };
  add("adjugate(P') = Q_nu", fail_adj);
  add("P' Q_nu = Q_nu P' = F E", fail_pq);
  add("det Q_nu = F^2", fail_det);
  add("Theta' = Theta(P')", fail_theta);
  rep.pass = fail_adj + fail_pq + fail_det + fail_theta == 0;
  rep.sz_bound = "entry degrees <= 30; per-sample false-pass probability <= 30/" + std::to_string(prime);
  return rep;
}

// Symbolic Theta' = Theta(P') over ZZ[a,b,c] (Claim 3.12(1)).
inline bool verify_theta_identity_symbolic(uint64_t budget = 0) {
  TermBudget::reset(budget);
  auto net = generic_net();
  return theta_prime(net).equals(theta_of(p_prime(net)));
}

}  // namespace qf

#endif
