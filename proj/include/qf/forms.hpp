#ifndef QF_FORMS_HPP
#define QF_FORMS_HPP

#include <optional>

#include "qf/matrix.hpp"

namespace qf {

// ---------------------------------------------------------------------------
// Nets of quinary alternating forms and ternary symmetric bilinear forms.
// Net convention: nu(e_i ^ e_j) = A_ij alpha + B_ij beta + C_ij gamma.
// Form convention: Q_ij = phi(alpha_i alpha_j) in the ordered basis
// (alpha, beta, gamma).
// ---------------------------------------------------------------------------

template <class R>
struct AlternatingNet {
  R ring;
  Matrix<R> A, B, C;

  AlternatingNet(R rg, Matrix<R> a, Matrix<R> b, Matrix<R> c)
      : ring(std::move(rg)), A(std::move(a)), B(std::move(b)), C(std::move(c)) {
    for (const Matrix<R>* m : {&A, &B, &C}) {
      if (m->r != 5 || m->c != 5) throw ring_error("net matrices must be 5x5");
      if (!m->is_alternating()) throw ring_error("net matrices must be alternating");
    }
  }

  const Matrix<R>& member(size_t i) const { return i == 0 ? A : (i == 1 ? B : C); }

  bool equals(const AlternatingNet& o) const { return A.equals(o.A) && B.equals(o.B) && C.equals(o.C); }
};

template <class R>
struct TernarySymForm {
  R ring;
  Matrix<R> Q;

  TernarySymForm(R rg, Matrix<R> q) : ring(std::move(rg)), Q(std::move(q)) {
    if (Q.r != 3 || Q.c != 3) throw ring_error("ternary form must be 3x3");
    if (!Q.is_symmetric()) throw ring_error("ternary form must be symmetric");
  }

  bool non_degenerate() const { return ring.is_unit(determinant(Q)); }
  bool equals(const TernarySymForm& o) const { return Q.equals(o.Q); }
};

template <class R>
struct BasisChange {
  Matrix<R> U;  // 5x5 on the quinary side
  Matrix<R> W;  // 3x3 on the net coordinates

  BasisChange(Matrix<R> u, Matrix<R> w) : U(std::move(u)), W(std::move(w)) {
    if (U.r != 5 || U.c != 5 || W.r != 3 || W.c != 3) throw ring_error("basis change shapes must be 5x5 and 3x3");
    if (!U.ring.is_unit(determinant(U)) || !W.ring.is_unit(determinant(W)))
      throw ring_error("basis change must be invertible");
  }
};

// The split net: A25 = -1, A34 = 1, B14 = -1, B23 = 1, C15 = -1, C24 = 1.
template <class R>
AlternatingNet<R> split_net(const R& rg) {
  auto mk = [&](std::vector<std::pair<std::pair<int, int>, int>> ent) {
    Matrix<R> m(rg, 5, 5);
    for (auto& [ij, v] : ent) {
      auto e = rg.from_int(v);
      m.at(size_t(ij.first - 1), size_t(ij.second - 1)) = e;
      m.at(size_t(ij.second - 1), size_t(ij.first - 1)) = rg.neg(e);
    }
    return m;
  };
  return AlternatingNet<R>(rg, mk({{{2, 5}, -1}, {{3, 4}, 1}}), mk({{{1, 4}, -1}, {{2, 3}, 1}}),
                           mk({{{1, 5}, -1}, {{2, 4}, 1}}));
}

// The split form [[0,-1,0],[-1,0,0],[0,0,1]].
template <class R>
TernarySymForm<R> split_form(const R& rg) {
  Matrix<R> q(rg, 3, 3);
  q.at(0, 1) = rg.from_int(-1);
  q.at(1, 0) = rg.from_int(-1);
  q.at(2, 2) = rg.one();
  return TernarySymForm<R>(rg, q);
}

// ---------------------------------------------------------------------------
// Solving quadratics over small finite fields (lazy sqrt / Artin-Schreier
// tables; fields in this artifact have at most 2^20 elements).
// ---------------------------------------------------------------------------
class FieldSolver {
 public:
  explicit FieldSolver(GF f) : F(std::move(f)) {
    uint64_t q = F.order();
    if (q > (1u << 20)) throw ring_error("field too large for table-based solving");
    sqrt_tab_.assign(q, kNone);
    for (uint64_t x = 0; x < q; ++x) {
      uint64_t s = F.mul(x, x);
      if (sqrt_tab_[s] == kNone) sqrt_tab_[s] = x;
    }
    if (F.p == 2) {
      as_tab_.assign(q, kNone);
      for (uint64_t x = 0; x < q; ++x) {
        uint64_t s = F.add(F.mul(x, x), x);
        if (as_tab_[s] == kNone) as_tab_[s] = x;
      }
    }
  }

  const GF& field() const { return F; }

  std::vector<uint64_t> sqrt_of(uint64_t v) const {
    std::vector<uint64_t> out;
    uint64_t r = sqrt_tab_[v];
    if (r == kNone) return out;
    out.push_back(r);
    uint64_t nr = F.neg(r);
    if (nr != r) out.push_back(nr);
    return out;
  }

  // Roots of a z^2 + b z + c = 0. Returns nullopt when every z is a root.
  std::optional<std::vector<uint64_t>> quadratic_roots(uint64_t a, uint64_t b, uint64_t c) const {
    std::vector<uint64_t> out;
    if (a == 0) {
      if (b == 0) {
        if (c == 0) return std::nullopt;
        return out;
      }
      out.push_back(F.neg(F.mul(c, F.inv(b))));
      return out;
    }
    uint64_t B = F.mul(b, F.inv(a)), C = F.mul(c, F.inv(a));
    if (F.p != 2) {
      // z = (-B ± sqrt(B^2 - 4C)) / 2
      uint64_t disc = F.sub(F.mul(B, B), F.mul(F.from_int(4), C));
      uint64_t half = F.inv(F.from_int(2));
      for (uint64_t s : sqrt_of(disc)) out.push_back(F.mul(F.sub(F.neg(B), F.neg(s)), half));
      // note: -B + s and -B - s; sqrt_of returns both signs already
      if (out.size() == 2 && out[0] == out[1]) out.pop_back();
      return out;
    }
    if (B == 0) {
      // z^2 = C, Frobenius is bijective
      auto roots = sqrt_of(C);
      out.assign(roots.begin(), roots.end());
      return out;
    }
    // z = B w, w^2 + w = C / B^2
    uint64_t rhs = F.mul(C, F.inv(F.mul(B, B)));
    uint64_t w = as_tab_[rhs];
    if (w == kNone) return out;
    out.push_back(F.mul(B, w));
    out.push_back(F.mul(B, F.add(w, 1)));
    return out;
  }

 private:
  static constexpr uint64_t kNone = ~uint64_t(0);
  GF F;
  std::vector<uint64_t> sqrt_tab_;
  std::vector<uint64_t> as_tab_;
};

// Extension F_{q^k} of a given finite field, together with the entry embedding.
inline GF extension_of(const GF& F, uint32_t k) {
  if (k == 1) return F;
  return GF(F.p, F.deg * k);
}

// ---------------------------------------------------------------------------
// Rank-4 certification over a finite field: no member of the net may drop to
// rank <= 2 at any point of P^2(F_{q^k}), k = 1..4. Rank of a 5x5 alternating
// matrix is 4 iff one of its five principal 4x4 Pfaffians is nonzero, so the
// bad locus is the common zero set of five conics; a nonempty locus over the
// closure meets degree <= 4 (Bezout on two conics or a shared component of
// degree <= 2), hence k <= 4 suffices.
// ---------------------------------------------------------------------------
namespace detail {

// the five principal 4x4 pfaffians of x*A + y*B + z*C as conics in (x,y,z):
// returns for each omitted index j the 6 coefficients (xx, yy, zz, xy, xz, yz)
// of Pf((xA+yB+zC)_j), computed from the bilinearity of the pfaffian.
template <class R>
std::array<std::array<typename R::Elem, 6>, 5> pfaffian_conics(const AlternatingNet<R>& n) {
  const R& rg = n.ring;
  std::array<std::array<typename R::Elem, 6>, 5> out;
  auto pf4 = [&](const Matrix<R>& X, const Matrix<R>& Y, size_t omit) {
    // beta-style polarization: Pf((X+Y)_j) - Pf(X_j) - Pf(Y_j) when X != Y,
    // plain pfaffian when X == Y. Implemented via the explicit 3-term formula
    // on the principal submatrix.
    std::vector<size_t> keep;
    for (size_t t = 0; t < 5; ++t)
      if (t != omit) keep.push_back(t);
    auto x = X.select(keep, keep), y = Y.select(keep, keep);
    // Pf(x|y) bilinear form: x12 y34 - x13 y24 + x14 y23 symmetrized
    auto term = [&](const Matrix<R>& u, const Matrix<R>& v) {
      auto s = rg.mul(u.at(0, 1), v.at(2, 3));
      s = rg.sub(s, rg.mul(u.at(0, 2), v.at(1, 3)));
      s = rg.add(s, rg.mul(u.at(0, 3), v.at(1, 2)));
      return s;
    };
    return rg.add(term(x, y), term(y, x));  // polarized; equals 2 Pf for x==y
  };
  // Pf((xA+yB+zC)_j) = x^2 Pf(A_j) + ... + xy * polar(A,B)_j + ...
  auto pf_single = [&](const Matrix<R>& X, size_t omit) {
    std::vector<size_t> keep;
    for (size_t t = 0; t < 5; ++t)
      if (t != omit) keep.push_back(t);
    auto x = X.select(keep, keep);
    auto s = rg.mul(x.at(0, 1), x.at(2, 3));
    s = rg.sub(s, rg.mul(x.at(0, 2), x.at(1, 3)));
    s = rg.add(s, rg.mul(x.at(0, 3), x.at(1, 2)));
    return s;
  };
  for (size_t j = 0; j < 5; ++j) {
    out[j][0] = pf_single(n.A, j);
    out[j][1] = pf_single(n.B, j);
    out[j][2] = pf_single(n.C, j);
    out[j][3] = pf4(n.A, n.B, j);
    out[j][4] = pf4(n.A, n.C, j);
    out[j][5] = pf4(n.B, n.C, j);
  }
  return out;
}

}  // namespace detail

inline bool is_rank4_net(const AlternatingNet<GF>& n) {
  const GF& base = n.ring;
  auto conics_base = detail::pfaffian_conics(n);
  for (uint32_t k = 1; k <= 4; ++k) {
    GF F = extension_of(base, k);
    // embed conic coefficients
    std::array<std::array<uint64_t, 6>, 5> con;
    for (size_t j = 0; j < 5; ++j)
      for (size_t t = 0; t < 6; ++t) con[j][t] = base.embed_into(F, conics_base[j][t]);
    auto eval_conic = [&](const std::array<uint64_t, 6>& q, uint64_t x, uint64_t y, uint64_t z) {
      uint64_t s = F.mul(q[0], F.mul(x, x));
      s = F.add(s, F.mul(q[1], F.mul(y, y)));
      s = F.add(s, F.mul(q[2], F.mul(z, z)));
      s = F.add(s, F.mul(q[3], F.mul(x, y)));
      s = F.add(s, F.mul(q[4], F.mul(x, z)));
      s = F.add(s, F.mul(q[5], F.mul(y, z)));
      return s;
    };
    auto all_vanish_at = [&](uint64_t x, uint64_t y, uint64_t z) {
      for (size_t j = 0; j < 5; ++j)
        if (eval_conic(con[j], x, y, z) != 0) return false;
      return true;
    };
    // charts (1,y,z), (0,1,z), (0,0,1); solve the first not-identically-zero
    // conic for z and check the rest (and the full z-line in degenerate cases)
    size_t lead = 5;
    for (size_t j = 0; j < 5 && lead == 5; ++j)
      for (size_t t = 0; t < 6; ++t)
        if (con[j][t] != 0) {
          lead = j;
          break;
        }
    if (lead == 5) return false;  // zero net
    FieldSolver solver(F);
    uint64_t q = F.order();
    auto scan_chart = [&](bool x_is_one) -> bool {
      // x fixed to 1 (y free) or (x,y) = (0,1)
      for (uint64_t y = 0; y < (x_is_one ? q : 1); ++y) {
        uint64_t X = x_is_one ? 1 : 0;
        uint64_t Y = x_is_one ? y : 1;
        const auto& g = con[lead];
        // g as a*z^2 + b*z + c on this fiber
        uint64_t a = g[2];
        uint64_t b = F.add(F.mul(g[4], X), F.mul(g[5], Y));
        uint64_t c = F.add(F.add(F.mul(g[0], F.mul(X, X)), F.mul(g[1], F.mul(Y, Y))), F.mul(g[3], F.mul(X, Y)));
        auto roots = solver.quadratic_roots(a, b, c);
        if (!roots.has_value()) {
          // the leading conic vanishes on the whole fiber line
          for (uint64_t z = 0; z < q; ++z)
            if (all_vanish_at(X, Y, z)) return true;
          continue;
        }
        for (uint64_t z : *roots)
          if (all_vanish_at(X, Y, z)) return true;
      }
      return false;
    };
    if (scan_chart(true) || scan_chart(false)) return false;
    if (all_vanish_at(0, 0, 1)) return false;
  }
  return true;
}

// First U^T X U on each member, then mix by W:
// A' = W11 A~ + W12 B~ + W13 C~, etc.
template <class R>
AlternatingNet<R> apply_basis_change(const AlternatingNet<R>& n, const BasisChange<R>& g) {
  const R& rg = n.ring;
  auto ut = g.U.transpose();
  Matrix<R> ta = ut * n.A * g.U;
  Matrix<R> tb = ut * n.B * g.U;
  Matrix<R> tc = ut * n.C * g.U;
  auto mix = [&](size_t row) {
    Matrix<R> m = ta.scaled(g.W.at(row, 0)) + tb.scaled(g.W.at(row, 1)) + tc.scaled(g.W.at(row, 2));
    return m;
  };
  return AlternatingNet<R>(rg, mix(0), mix(1), mix(2));
}

// Composition such that apply(n, compose(g, h)) == apply(apply(n, h), g).
template <class R>
BasisChange<R> compose(const BasisChange<R>& g, const BasisChange<R>& h) {
  return BasisChange<R>(h.U * g.U, g.W * h.W);
}

// ---------------------------------------------------------------------------
// Similarity search over small finite fields: T^t Q1 T = lambda Q2 with
// T iterated over GL3 in lexicographic order of the entry vector (row-major,
// entries by encoded value); first hit wins.
// ---------------------------------------------------------------------------
struct SimilarityWitness {
  Matrix<GF> T;
  uint64_t lambda;
};

inline std::optional<SimilarityWitness> similar_forms(const TernarySymForm<GF>& q1, const TernarySymForm<GF>& q2) {
  const GF& F = q1.ring;
  if (!F.same(q2.ring)) throw ring_error("ring mismatch");
  uint64_t q = F.order();
  if (q > 9) throw ring_error("similar_forms: field too large for exhaustive mode (q <= 9)");
  std::array<uint64_t, 9> ent{};
  Matrix<GF> T(F, 3, 3);
  // odometer over 9 entries, most significant first = lexicographic
  while (true) {
    for (size_t i = 0; i < 9; ++i) T.a[i] = ent[i];
    // fast skip: T must be invertible
    if (determinant(T) != 0) {
      // compute T^t Q1 T and test proportionality to Q2
      auto m = T.transpose() * q1.Q * T;
      uint64_t lambda = 0;
      bool ok = true;
      for (size_t i = 0; i < 9 && ok; ++i) {
        if (q2.Q.a[i] == 0) {
          if (m.a[i] != 0) ok = false;
        } else {
          uint64_t l = F.mul(m.a[i], F.inv(q2.Q.a[i]));
          if (lambda == 0)
            lambda = l;
          else if (lambda != l)
            ok = false;
        }
      }
      if (ok && lambda != 0) return SimilarityWitness{T, lambda};
    }
    // increment odometer (last entry fastest)
    size_t i = 9;
    while (i-- > 0) {
      if (++ent[i] < q) break;
      ent[i] = 0;
      if (i == 0) return std::nullopt;
    }
  }
}

// ---------------------------------------------------------------------------
// Exact signature of a rational symmetric matrix via congruence
// diagonalization (Sylvester).
// ---------------------------------------------------------------------------
inline std::pair<unsigned, unsigned> signature_pair(const Matrix<QQ>& Qin) {
  if (!Qin.is_symmetric()) throw ring_error("signature of non-symmetric matrix");
  QQ rg;
  if (determinant(Qin) == 0) throw ring_error("degenerate form");
  Matrix<QQ> m = Qin;
  size_t n = m.r;
  unsigned pos = 0, neg = 0;
  for (size_t k = 0; k < n; ++k) {
    if (m.at(k, k) == 0) {
      // find a nonzero diagonal below, or create one from an off-diagonal
      size_t d = k + 1;
      while (d < n && m.at(d, d) == 0) ++d;
      if (d < n) {
        // swap rows and columns k <-> d
        for (size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(d, j));
        for (size_t i = 0; i < n; ++i) std::swap(m.at(i, k), m.at(i, d));
      } else {
        size_t fi = 0, fj = 0;
        bool found = false;
        for (size_t i2 = k; i2 < n && !found; ++i2)
          for (size_t j2 = i2 + 1; j2 < n && !found; ++j2)
            if (m.at(i2, j2) != 0) {
              fi = i2;
              fj = j2;
              found = true;
            }
        if (!found) break;  // all-zero tail (cannot happen: non-degenerate)
        // row_fi += row_fj, col_fi += col_fj makes (fi,fi) = 2 m_{fi,fj} != 0
        for (size_t t = 0; t < n; ++t) m.at(fi, t) += m.at(fj, t);
        for (size_t t = 0; t < n; ++t) m.at(t, fi) += m.at(t, fj);
        if (fi != k) {
          for (size_t t = 0; t < n; ++t) std::swap(m.at(k, t), m.at(fi, t));
          for (size_t t = 0; t < n; ++t) std::swap(m.at(t, k), m.at(t, fi));
        }
      }
    }
    Rat piv = m.at(k, k);
    if (piv > 0)
      ++pos;
    else
      ++neg;
    for (size_t i = k + 1; i < n; ++i) {
      if (m.at(i, k) == 0) continue;
      Rat f = m.at(i, k) / piv;
      for (size_t j = 0; j < n; ++j) m.at(i, j) -= f * m.at(k, j);
      for (size_t j = 0; j < n; ++j) m.at(j, i) -= f * m.at(j, k);
    }
  }
  return {pos, neg};
}

inline std::pair<unsigned, unsigned> signature_pair(const TernarySymForm<QQ>& q) { return signature_pair(q.Q); }

inline std::pair<unsigned, unsigned> signature_pair(const TernarySymForm<ZZ>& q) {
  QQ rq;
  Matrix<QQ> m(rq, 3, 3);
  for (size_t i = 0; i < 9; ++i) m.a[i] = Rat(q.Q.a[i]);
  return signature_pair(m);
}

}  // namespace qf

#endif
