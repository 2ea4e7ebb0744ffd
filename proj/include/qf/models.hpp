#ifndef QF_MODELS_HPP
#define QF_MODELS_HPP

#include "qf/forms.hpp"
#include "qf/trunc.hpp"

namespace qf {

// ---------------------------------------------------------------------------
// Projective points with first-nonzero-is-one normalization over fields.
// ---------------------------------------------------------------------------
template <class R>
std::vector<typename R::Elem> normalize_point(const R& rg, std::vector<typename R::Elem> v) {
  size_t lead = v.size();
  for (size_t i = 0; i < v.size(); ++i)
    if (!rg.is_zero(v[i])) {
      lead = i;
      break;
    }
  if (lead == v.size()) throw ring_error("zero vector is not a projective point");
  auto inv = rg.inv(v[lead]);
  for (auto& x : v) x = rg.mul(x, inv);
  return v;
}

template <class R>
bool proj_equal(const R& rg, const std::vector<typename R::Elem>& a, const std::vector<typename R::Elem>& b) {
  if (a.size() != b.size()) return false;
  auto na = normalize_point(rg, a), nb = normalize_point(rg, b);
  for (size_t i = 0; i < a.size(); ++i)
    if (!rg.eq(na[i], nb[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Systems of quadrics.
// ---------------------------------------------------------------------------
template <class R>
struct QuadricSystem {
  R ring;
  std::vector<std::string> vars;
  std::vector<Poly<R>> gens;

  bool equals(const QuadricSystem& o) const {
    if (gens.size() != o.gens.size()) return false;
    for (size_t i = 0; i < gens.size(); ++i)
      if (!gens[i].equals(o.gens[i])) return false;
    return true;
  }
};

inline std::vector<std::string> p6_vars() { return {"a0", "a1", "a2", "a3", "a4", "a5", "a6"}; }

// Y_spl in P^6:
//   a0 a4 - a1 a3 + a2^2,  a0 a5 - a1 a4 + a2 a3,  a0 a6 - a2 a4 + a3^2,
//   a1 a6 - a2 a5 + a3 a4,  a2 a6 - a3 a5 + a4^2.
template <class R>
QuadricSystem<R> y_split_ideal(const R& rg) {
  std::vector<std::string> vars = p6_vars();
  auto v = [&](size_t i) { return Poly<R>::variable(rg, vars, i); };
  QuadricSystem<R> s{rg, vars, {}};
  s.gens.push_back(v(0) * v(4) - v(1) * v(3) + v(2) * v(2));
  s.gens.push_back(v(0) * v(5) - v(1) * v(4) + v(2) * v(3));
  s.gens.push_back(v(0) * v(6) - v(2) * v(4) + v(3) * v(3));
  s.gens.push_back(v(1) * v(6) - v(2) * v(5) + v(3) * v(4));
  s.gens.push_back(v(2) * v(6) - v(3) * v(5) + v(4) * v(4));
  return s;
}

template <class R>
bool membership(const R& rg, const std::vector<typename R::Elem>& p, const QuadricSystem<R>& s) {
  if (p.size() != s.vars.size()) throw ring_error("coordinate count mismatch");
  bool nonzero = false;
  for (const auto& x : p) nonzero |= !rg.is_zero(x);
  if (!nonzero) throw ring_error("zero vector input");
  std::map<std::string, typename R::Elem> asg;
  for (size_t i = 0; i < p.size(); ++i) asg[s.vars[i]] = p[i];
  for (const auto& g : s.gens)
    if (!rg.is_zero(g.evaluate(asg))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Plucker machinery on Gr(U5^v, 2) in P^9 = P(^2 U5). Coordinates b_ij in the
// order (12,13,14,15,23,24,25,34,35,45); points of the Grassmannian are the
// decomposable bivectors, cut by the five principal 4x4 Pfaffians (omitting
// index 5,4,3,2,1 in that order).
// ---------------------------------------------------------------------------
inline std::vector<std::string> plucker_vars() {
  return {"b12", "b13", "b14", "b15", "b23", "b24", "b25", "b34", "b35", "b45"};
}

inline size_t plucker_index(int i, int j) {
  static const int idx[6][6] = {{-1, -1, -1, -1, -1, -1}, {-1, -1, 0, 1, 2, 3},   {-1, -1, -1, 4, 5, 6},
                                {-1, -1, -1, -1, 7, 8},   {-1, -1, -1, -1, -1, 9}, {-1, -1, -1, -1, -1, -1}};
  if (i < 1 || j < 1 || i > 5 || j > 5 || i >= j || idx[i][j] < 0) throw ring_error("bad plucker pair");
  return size_t(idx[i][j]);
}

// generic alternating 5x5 matrix of b-variables over any ring
template <class R>
Matrix<PolyRing<R>> generic_plucker_matrix(const R& rg) {
  PolyRing<R> P(rg, plucker_vars());
  Matrix<PolyRing<R>> m(P, 5, 5);
  for (int i = 1; i <= 5; ++i)
    for (int j = i + 1; j <= 5; ++j) {
      auto x = P.variable(plucker_index(i, j));
      m.at(size_t(i - 1), size_t(j - 1)) = x;
      m.at(size_t(j - 1), size_t(i - 1)) = -x;
    }
  return m;
}

// The five Grassmannian Pfaffian quadrics, omitting index 5,4,3,2,1.
template <class R>
std::vector<Poly<R>> grassmann_pfaffians(const R& rg) {
  auto m = generic_plucker_matrix(rg);
  std::vector<Poly<R>> out;
  for (int omit = 5; omit >= 1; --omit) out.push_back(principal_pfaffian(m, size_t(omit - 1)));
  return out;
}

// the 3x10 matrix of net coefficients: row X in (A,B,C), column (i,j)
template <class R>
Matrix<R> net_linear_coefficients(const AlternatingNet<R>& n) {
  Matrix<R> L(n.ring, 3, 10);
  for (size_t x = 0; x < 3; ++x)
    for (int i = 1; i <= 5; ++i)
      for (int j = i + 1; j <= 5; ++j) L.at(x, plucker_index(i, j)) = n.member(x).at(size_t(i - 1), size_t(j - 1));
  return L;
}

// ---------------------------------------------------------------------------
// Grassmannian linear section of a net (fields): the three linear relations
// sum_{i<j} X_ij b_ij = 0, solved for the RREF pivot variables; the surviving
// seven coordinates are renamed a0..a6 in order and the Pfaffians are
// rewritten in them. For the split net this reproduces y_split_ideal with the
// renaming a_{i+j-3} = b_ij on the relations b14 = b23, b15 = b24, b25 = b34.
// ---------------------------------------------------------------------------
template <class R>
struct GrassmannSection {
  std::vector<Poly<R>> relations;   // linear forms in the b variables
  QuadricSystem<R> system;          // in the surviving variables a0..a6
  std::vector<size_t> kept_columns; // b-indices surviving, in order
};

template <class R>
GrassmannSection<R> grassmannian_section(const AlternatingNet<R>& n) {
  static_assert(R::is_field, "grassmannian_section needs a field (use QQ for ZZ nets)");
  const R& rg = n.ring;
  Matrix<R> L = net_linear_coefficients(n);
  auto Lr = L;
  auto pivots = rref(Lr);
  if (pivots.size() != 3) throw ring_error("net coefficient map does not have rank 3");
  // relations as linear polynomials
  PolyRing<R> PB(rg, plucker_vars());
  std::vector<Poly<R>> rels;
  for (size_t r_ = 0; r_ < 3; ++r_) {
    Poly<R> rel = Poly<R>::zero(rg, plucker_vars());
    for (size_t c_ = 0; c_ < 10; ++c_)
      if (!rg.is_zero(L.at(r_, c_))) rel = rel + Poly<R>::variable(rg, plucker_vars(), c_).scaled(L.at(r_, c_));
    rels.push_back(rel);
  }
  // substitution: pivot variable p = -(sum of non-pivot columns of rref row)
  std::vector<bool> is_pivot(10, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<size_t> kept;
  for (size_t c_ = 0; c_ < 10; ++c_)
    if (!is_pivot[c_]) kept.push_back(c_);
  if (kept.size() != 7) throw ring_error("internal: expected 7 surviving coordinates");
  std::vector<std::string> avars = p6_vars();
  std::map<std::string, Poly<R>> sub;
  auto bnames = plucker_vars();
  for (size_t t = 0; t < 7; ++t) sub[bnames[kept[t]]] = Poly<R>::variable(rg, avars, t);
  for (size_t r_ = 0; r_ < 3; ++r_) {
    Poly<R> expr = Poly<R>::zero(rg, avars);
    for (size_t t = 0; t < 7; ++t)
      if (!rg.is_zero(Lr.at(r_, kept[t]))) expr = expr - Poly<R>::variable(rg, avars, t).scaled(Lr.at(r_, kept[t]));
    sub[bnames[pivots[r_]]] = expr;
  }
  QuadricSystem<R> sys{rg, avars, {}};
  for (auto& pf : grassmann_pfaffians(rg)) sys.gens.push_back(pf.substitute(sub));
  return GrassmannSection<R>{rels, sys, kept};
}

// a-coordinates of a Y_spl point as a decomposable bivector (b coordinates):
// a = (b12, b13, b14, b15, b25, b35, b45) with b23 = b14, b24 = b15, b34 = b25.
template <class R>
std::vector<typename R::Elem> bivector_from_split_point(const R& rg, const std::vector<typename R::Elem>& a) {
  if (a.size() != 7) throw ring_error("expected 7 coordinates");
  std::vector<typename R::Elem> b(10, rg.zero());
  b[plucker_index(1, 2)] = a[0];
  b[plucker_index(1, 3)] = a[1];
  b[plucker_index(1, 4)] = a[2];
  b[plucker_index(2, 3)] = a[2];
  b[plucker_index(1, 5)] = a[3];
  b[plucker_index(2, 4)] = a[3];
  b[plucker_index(2, 5)] = a[4];
  b[plucker_index(3, 4)] = a[4];
  b[plucker_index(3, 5)] = a[5];
  b[plucker_index(4, 5)] = a[6];
  return b;
}

template <class R>
std::vector<typename R::Elem> split_point_from_bivector(const R& rg, const std::vector<typename R::Elem>& b) {
  if (b.size() != 10) throw ring_error("expected 10 coordinates");
  if (!rg.eq(b[plucker_index(1, 4)], b[plucker_index(2, 3)]) ||
      !rg.eq(b[plucker_index(1, 5)], b[plucker_index(2, 4)]) ||
      !rg.eq(b[plucker_index(2, 5)], b[plucker_index(3, 4)]))
    throw ring_error("bivector is not in the split linear section");
  return {b[plucker_index(1, 2)], b[plucker_index(1, 3)], b[plucker_index(1, 4)], b[plucker_index(1, 5)],
          b[plucker_index(2, 5)], b[plucker_index(3, 5)], b[plucker_index(4, 5)]};
}

// ---------------------------------------------------------------------------
// The V10 quotient in characteristic 2 (Remark 8.4).
// ---------------------------------------------------------------------------
template <class R>
QuadricSystem<R> v10_ideal(const R& rg) {
  if (rg.characteristic() != 2) throw ring_error("v10_ideal needs characteristic 2");
  std::vector<std::string> vars = p6_vars();
  vars.push_back("t");
  auto v = [&](size_t i) { return Poly<R>::variable(rg, vars, i); };
  QuadricSystem<R> s{rg, vars, {}};
  s.gens.push_back(v(0) * v(4) - v(1) * v(3) + v(2) * v(2));
  s.gens.push_back(v(0) * v(5) - v(1) * v(4) + v(2) * v(3));
  s.gens.push_back(v(0) * v(6) - v(2) * v(4) + v(3) * v(3));
  s.gens.push_back(v(1) * v(6) - v(2) * v(5) + v(3) * v(4));
  s.gens.push_back(v(2) * v(6) - v(3) * v(5) + v(4) * v(4));
  s.gens.push_back(v(7) * v(7) - (v(1) * v(5) + v(0) * v(3) + v(3) * v(6)));
  return s;
}

// (a0,...,a6) -> (a0^2,...,a6^2, a1 a5 + a0 a3 + a3 a6)
template <class R>
std::vector<typename R::Elem> v10_quotient_map(const R& rg, const std::vector<typename R::Elem>& a) {
  if (rg.characteristic() != 2) throw ring_error("v10_quotient_map needs characteristic 2");
  if (a.size() != 7) throw ring_error("expected 7 coordinates");
  std::vector<typename R::Elem> out;
  for (const auto& x : a) out.push_back(rg.mul(x, x));
  auto t = rg.add(rg.mul(a[1], a[5]), rg.add(rg.mul(a[0], a[3]), rg.mul(a[3], a[6])));
  out.push_back(t);
  return out;
}

// ---------------------------------------------------------------------------
// First-order deformations in characteristic 2 (8.3): the form
//   [[t1, 1, 0], [1, t2, 0], [0, 0, 1]],  t1 = xi t, t2 = eta t,  t^2 = 0.
// ---------------------------------------------------------------------------
using GF2Trunc = TruncRing<GF>;

inline GF2Trunc dual_numbers_f2() { return GF2Trunc(GF(2), {"t"}, {2}); }

inline TernarySymForm<GF2Trunc> deformed_form(uint64_t xi, uint64_t eta) {
  GF2Trunc R = dual_numbers_f2();
  auto t = R.generator(0);
  Matrix<GF2Trunc> Q(R, 3, 3);
  Q.at(0, 0) = t.scaled(GF(2).from_int(long(xi & 1)));
  Q.at(1, 1) = t.scaled(GF(2).from_int(long(eta & 1)));
  Q.at(0, 1) = Q.at(1, 0) = R.one();
  Q.at(2, 2) = R.one();
  return TernarySymForm<GF2Trunc>(R, Q);
}

// The printed linear relations of the deformation family, as linear forms in
// the b-variables over F2[t]/(t^2):
//   b34 + b25 + t2 b23 + t1 b45,
//   b23 + b14 + t2 b12 + t1 b34,
//   b24 + b15 + t2 b13 + t1 b35.
// (The paper's display misprints b14 as b24 and b15 as b25 in the last two;
// the versions here are the ones produced by the construction and they
// specialize to the split relations at t = 0.)
inline std::vector<Poly<GF2Trunc>> deformed_net_relations(uint64_t xi, uint64_t eta) {
  GF2Trunc R = dual_numbers_f2();
  auto bv = plucker_vars();
  auto v = [&](int i, int j) { return Poly<GF2Trunc>::variable(R, bv, plucker_index(i, j)); };
  auto t = R.generator(0);
  auto t1 = t.scaled(GF(2).from_int(long(xi & 1)));
  auto t2 = t.scaled(GF(2).from_int(long(eta & 1)));
  auto c = [&](const Poly<GF2Trunc>& p, const typename GF2Trunc::Elem& s) { return p.scaled(s); };
  std::vector<Poly<GF2Trunc>> rels;
  rels.push_back(v(3, 4) + v(2, 5) + c(v(2, 3), t2) + c(v(4, 5), t1));
  rels.push_back(v(2, 3) + v(1, 4) + c(v(1, 2), t2) + c(v(3, 4), t1));
  rels.push_back(v(2, 4) + v(1, 5) + c(v(1, 3), t2) + c(v(3, 5), t1));
  return rels;
}

// Substitute the relations (eliminating b23, b24, b34 by nilpotent iteration)
// into the Grassmannian Pfaffians; surviving coordinates
// (b12, b13, b14, b15, b25, b35, b45) are renamed a0..a6.
inline QuadricSystem<GF2Trunc> deformed_ideal(uint64_t xi, uint64_t eta) {
  GF2Trunc R = dual_numbers_f2();
  auto bv = plucker_vars();
  auto avars = p6_vars();
  auto av = [&](size_t i) { return Poly<GF2Trunc>::variable(R, avars, i); };
  // start: b23 = b14 + t2 b12 + t1 b34, etc.; iterate twice (t^2 = 0)
  std::map<std::string, Poly<GF2Trunc>> sub;
  sub["b12"] = av(0);
  sub["b13"] = av(1);
  sub["b14"] = av(2);
  sub["b15"] = av(3);
  sub["b25"] = av(4);
  sub["b35"] = av(5);
  sub["b45"] = av(6);
  auto t = R.generator(0);
  auto t1 = t.scaled(GF(2).from_int(long(xi & 1)));
  auto t2 = t.scaled(GF(2).from_int(long(eta & 1)));
  Poly<GF2Trunc> b23 = av(2), b24 = av(3), b34 = av(4);  // zeroth approximation
  for (int iter = 0; iter < 2; ++iter) {
    auto nb34 = av(4) + b23.scaled(t2) + av(6).scaled(t1);
    auto nb23 = av(2) + av(0).scaled(t2) + b34.scaled(t1);
    auto nb24 = av(3) + av(1).scaled(t2) + av(5).scaled(t1);
    b34 = nb34;
    b23 = nb23;
    b24 = nb24;
  }
  sub["b23"] = b23;
  sub["b24"] = b24;
  sub["b34"] = b34;
  QuadricSystem<GF2Trunc> sys{R, avars, {}};
  for (auto& pf : grassmann_pfaffians(R)) sys.gens.push_back(pf.substitute(sub));
  return sys;
}

// The printed equations (8.3.1) for cross-checking.
inline QuadricSystem<GF2Trunc> deformed_ideal_printed(uint64_t xi, uint64_t eta) {
  GF2Trunc R = dual_numbers_f2();
  auto avars = p6_vars();
  auto v = [&](size_t i) { return Poly<GF2Trunc>::variable(R, avars, i); };
  auto t = R.generator(0);
  auto t1 = t.scaled(GF(2).from_int(long(xi & 1)));
  auto t2 = t.scaled(GF(2).from_int(long(eta & 1)));
  QuadricSystem<GF2Trunc> s{R, avars, {}};
  s.gens.push_back(v(0) * v(4) + v(1) * v(3) + v(2) * v(2) + (v(0) * v(6) + v(1) * v(5) + v(2) * v(4)).scaled(t1) +
                   (v(1) * v(1)).scaled(t2));
  s.gens.push_back(v(0) * v(5) + v(1) * v(4) + v(2) * v(3) + (v(3) * v(4)).scaled(t1) + (v(0) * v(3)).scaled(t2));
  s.gens.push_back(v(0) * v(6) + v(2) * v(4) + v(3) * v(3) + (v(3) * v(5)).scaled(t1) + (v(1) * v(3)).scaled(t2));
  s.gens.push_back(v(1) * v(6) + v(2) * v(5) + v(3) * v(4) + (v(3) * v(6)).scaled(t1) + (v(2) * v(3)).scaled(t2));
  s.gens.push_back(v(2) * v(6) + v(3) * v(5) + v(4) * v(4) + (v(5) * v(5)).scaled(t1) +
                   (v(0) * v(6) + v(1) * v(5) + v(2) * v(4)).scaled(t2));
  return s;
}

// Exact equality of the spans of two quadric systems (fields): compare row
// spaces of the coefficient matrices.
template <class R>
bool same_quadric_span(const QuadricSystem<R>& s1, const QuadricSystem<R>& s2) {
  static_assert(R::is_field);
  const R& rg = s1.ring;
  if (s1.vars != s2.vars) return false;
  size_t nv = s1.vars.size();
  // monomial index for degree-2 monomials
  std::vector<std::pair<size_t, size_t>> mons;
  for (size_t i = 0; i < nv; ++i)
    for (size_t j = i; j < nv; ++j) mons.push_back({i, j});
  auto fill = [&](const QuadricSystem<R>& s) {
    Matrix<R> m(rg, s.gens.size(), mons.size());
    for (size_t g = 0; g < s.gens.size(); ++g)
      for (const auto& t : s.gens[g].terms) {
        size_t i = 0, j = 0;
        unsigned d = 0;
        for (size_t v = 0; v < nv; ++v) {
          for (unsigned k = 0; k < t.m.e[v]; ++k) {
            if (d == 0)
              i = v;
            else
              j = v;
            ++d;
          }
        }
        if (d != 2) throw ring_error("non-quadratic generator");
        size_t col = 0;
        for (; col < mons.size(); ++col)
          if (mons[col] == std::make_pair(i, j)) break;
        m.at(g, col) = t.c;
      }
    return m;
  };
  auto m1 = fill(s1), m2 = fill(s2);
  Matrix<R> stacked(rg, m1.r + m2.r, mons.size());
  for (size_t i = 0; i < m1.r; ++i)
    for (size_t j = 0; j < mons.size(); ++j) stacked.at(i, j) = m1.at(i, j);
  for (size_t i = 0; i < m2.r; ++i)
    for (size_t j = 0; j < mons.size(); ++j) stacked.at(m1.r + i, j) = m2.at(i, j);
  size_t r1 = rank_of(m1), r2 = rank_of(m2), rs = rank_of(stacked);
  return r1 == r2 && r2 == rs;
}

}  // namespace qf

#endif
