#ifndef QF_GEOMETRY_HPP
#define QF_GEOMETRY_HPP

#include <functional>
#include <set>

#include "qf/actions.hpp"
#include "qf/correspondence.hpp"
#include "qf/univariate.hpp"

namespace qf {

enum class OrbitLabel { O3, O2, O1, O1prime };
enum class LineType { ordinary, special, exceptional };

inline std::string to_string(OrbitLabel o) {
  switch (o) {
    case OrbitLabel::O3: return "O3";
    case OrbitLabel::O2: return "O2";
    case OrbitLabel::O1: return "O1";
    default: return "O1'";
  }
}
inline std::string to_string(LineType t) {
  switch (t) {
    case LineType::ordinary: return "ordinary";
    case LineType::special: return "special";
    default: return "exceptional";
  }
}

// A line on the split model: points are p0 s + p1 t in P^6.
template <class R>
struct LineInY {
  std::vector<typename R::Elem> p0, p1;
  std::vector<typename R::Elem> sigma_label;  // (x,y,z) in P(N_3)
  LineType type;
};

// ---------------------------------------------------------------------------
// Field enumeration helpers.
// ---------------------------------------------------------------------------
// All representatives of P^{n-1}(F) with first nonzero coordinate 1.
inline void for_each_proj_point(const GF& F, size_t n, const std::function<void(const std::vector<uint64_t>&)>& fn) {
  uint64_t q = F.order();
  std::vector<uint64_t> v(n, 0);
  for (size_t lead = 0; lead < n; ++lead) {
    std::fill(v.begin(), v.end(), 0);
    v[lead] = 1;
    // free coordinates after lead
    size_t free = n - lead - 1;
    uint64_t total = 1;
    for (size_t i = 0; i < free; ++i) total *= q;
    for (uint64_t code = 0; code < total; ++code) {
      uint64_t c = code;
      for (size_t i = 0; i < free; ++i) {
        v[lead + 1 + i] = c % q;
        c /= q;
      }
      fn(v);
    }
  }
}

// ---------------------------------------------------------------------------
// Split model helpers over a finite field.
// ---------------------------------------------------------------------------
struct SplitModel {
  GF F;
  explicit SplitModel(GF f) : F(std::move(f)) {}

  bool on_model(const std::vector<uint64_t>& a) const {
    auto m = [&](uint64_t x, uint64_t y) { return F.mul(x, y); };
    auto q1 = F.add(F.sub(m(a[0], a[4]), m(a[1], a[3])), m(a[2], a[2]));
    if (q1) return false;
    auto q2 = F.add(F.sub(m(a[0], a[5]), m(a[1], a[4])), m(a[2], a[3]));
    if (q2) return false;
    auto q3 = F.add(F.sub(m(a[0], a[6]), m(a[2], a[4])), m(a[3], a[3]));
    if (q3) return false;
    auto q4 = F.add(F.sub(m(a[1], a[6]), m(a[2], a[5])), m(a[3], a[4]));
    if (q4) return false;
    auto q5 = F.add(F.sub(m(a[2], a[6]), m(a[3], a[5])), m(a[4], a[4]));
    return q5 == 0;
  }

  // D = 5 a2 a4 - 4 a1 a5 + 27 a0 a6
  uint64_t divisor_D(const std::vector<uint64_t>& a) const {
    auto v = F.mul(F.from_int(5), F.mul(a[2], a[4]));
    v = F.sub(v, F.mul(F.from_int(4), F.mul(a[1], a[5])));
    v = F.add(v, F.mul(F.from_int(27), F.mul(a[0], a[6])));
    return v;
  }
};

// nu: P^1 x P^1 -> D (characteristic != 2), the printed 7-coordinate formula.
inline std::vector<uint64_t> nu_map(const GF& F, uint64_t al, uint64_t ga, uint64_t be, uint64_t de) {
  auto c = [&](long k) { return F.from_int(k); };
  auto m = [&](std::initializer_list<uint64_t> xs) {
    uint64_t r = 1;
    for (auto x : xs) r = F.mul(r, x);
    return r;
  };
  auto p = [&](uint64_t x, int e) { return F.pow(x, uint64_t(e)); };
  std::vector<uint64_t> v(7);
  v[0] = m({c(8), al, p(be, 5)});
  v[1] = F.add(m({c(4), p(be, 5), ga}), m({c(20), al, p(be, 4), de}));
  v[2] = F.add(m({c(4), p(be, 4), ga, de}), m({c(8), al, p(be, 3), p(de, 2)}));
  v[3] = F.add(m({c(4), p(be, 3), ga, p(de, 2)}), m({c(4), al, p(be, 2), p(de, 3)}));
  v[4] = F.add(m({c(4), p(be, 2), ga, p(de, 3)}), m({c(2), al, be, p(de, 4)}));
  v[5] = F.add(m({c(5), be, ga, p(de, 4)}), m({al, p(de, 5)}));
  v[6] = m({ga, p(de, 5)});
  return v;
}

// nu' (characteristic 2): (x,y,z) -> (x^3, x^2 z, x^2 y, 0, x y^2, y^2 z, y^3)
// away from (0,0,1); the exceptional curve maps as (x,y) -> (0,x^2,0,0,0,y^2,0).
inline std::vector<uint64_t> nu_prime_map(const GF& F, uint64_t x, uint64_t y, uint64_t z) {
  std::vector<uint64_t> v(7, 0);
  v[0] = F.mul(F.mul(x, x), x);
  v[1] = F.mul(F.mul(x, x), z);
  v[2] = F.mul(F.mul(x, x), y);
  v[4] = F.mul(x, F.mul(y, y));
  v[5] = F.mul(F.mul(y, y), z);
  v[6] = F.mul(F.mul(y, y), y);
  return v;
}
inline std::vector<uint64_t> nu_prime_exceptional(const GF& F, uint64_t x, uint64_t y) {
  return {0, F.mul(x, x), 0, 0, 0, F.mul(y, y), 0};
}

// ---------------------------------------------------------------------------
// Lines from net points (section 5 construction): k = ker(xA + yB + zC);
// the line consists of the bivectors k ^ u with k^t A u = k^t B u = k^t C u
// = 0; on the split section they are read off in a-coordinates.
// ---------------------------------------------------------------------------
template <class R>
LineInY<R> line_from_net_point(const AlternatingNet<R>& n, const typename R::Elem& x, const typename R::Elem& y,
                               const typename R::Elem& z) {
  static_assert(R::is_field);
  const R& rg = n.ring;
  if (rg.is_zero(x) && rg.is_zero(y) && rg.is_zero(z)) throw ring_error("zero net point");
  Matrix<R> W = n.A.scaled(x) + n.B.scaled(y) + n.C.scaled(z);
  if (rank_of(W) != 4) throw ring_error("net member does not have rank 4 at the point");
  auto ker = kernel_basis(W);
  auto k = ker[0];
  // solve k^t X u = 0 for X = A,B,C
  Matrix<R> sys(rg, 3, 5);
  for (size_t r_ = 0; r_ < 3; ++r_) {
    const auto& X = n.member(r_);
    for (size_t j = 0; j < 5; ++j) {
      auto acc = rg.zero();
      for (size_t i = 0; i < 5; ++i) acc = rg.add(acc, rg.mul(k[i], X.at(i, j)));
      sys.at(r_, j) = acc;
    }
  }
  auto sol = kernel_basis(sys);
  if (sol.size() != 3) throw ring_error("line solution space is not 3-dimensional");
  // pick two basis vectors independent of k: row reduce [k | sol...]
  Matrix<R> span(rg, 3, 5);
  for (size_t j = 0; j < 5; ++j) span.at(0, j) = k[j];
  size_t got = 1;
  for (const auto& u : sol) {
    if (got == 3) break;
    Matrix<R> test(rg, got + 1, 5);
    for (size_t i = 0; i < got; ++i)
      for (size_t j = 0; j < 5; ++j) test.at(i, j) = span.at(i, j);
    for (size_t j = 0; j < 5; ++j) test.at(got, j) = u[j];
    if (rank_of(test) == got + 1) {
      for (size_t j = 0; j < 5; ++j) span.at(got, j) = u[j];
      ++got;
    }
  }
  if (got != 3) throw ring_error("could not find two directions modulo the kernel");
  // bivectors k ^ u1, k ^ u2 in b coordinates
  auto wedge = [&](const std::vector<typename R::Elem>& u, const std::vector<typename R::Elem>& v) {
    std::vector<typename R::Elem> b(10, rg.zero());
    for (int i = 1; i <= 5; ++i)
      for (int j = i + 1; j <= 5; ++j)
        b[plucker_index(i, j)] =
            rg.sub(rg.mul(u[size_t(i - 1)], v[size_t(j - 1)]), rg.mul(u[size_t(j - 1)], v[size_t(i - 1)]));
    return b;
  };
  std::vector<typename R::Elem> u1(5), u2(5);
  for (size_t j = 0; j < 5; ++j) {
    u1[j] = span.at(1, j);
    u2[j] = span.at(2, j);
  }
  LineInY<R> line;
  line.p0 = split_point_from_bivector(rg, wedge(k, u1));
  line.p1 = split_point_from_bivector(rg, wedge(k, u2));
  line.sigma_label = {x, y, z};
  if (rg.characteristic() != 2) {
    auto conic = rg.sub(rg.mul(z, z), rg.mul(rg.from_int(2), rg.mul(x, y)));
    line.type = rg.is_zero(conic) ? LineType::special : LineType::ordinary;
  } else {
    if (rg.is_zero(x) && rg.is_zero(y))
      line.type = LineType::exceptional;
    else if (rg.is_zero(z))
      line.type = LineType::special;
    else
      line.type = LineType::ordinary;
  }
  return line;
}

// Remark 5.4: (x,y,z) -> (-x^2, zx, -z^2 - xy, yz, -y^2) in P^4 = P(U5).
template <class R>
std::vector<typename R::Elem> veronese_projection(const R& rg, const typename R::Elem& x, const typename R::Elem& y,
                                                  const typename R::Elem& z) {
  if (rg.is_zero(x) && rg.is_zero(y) && rg.is_zero(z)) throw ring_error("zero input");
  std::vector<typename R::Elem> v(5);
  v[0] = rg.neg(rg.mul(x, x));
  v[1] = rg.mul(z, x);
  v[2] = rg.neg(rg.add(rg.mul(z, z), rg.mul(x, y)));
  v[3] = rg.mul(y, z);
  v[4] = rg.neg(rg.mul(y, y));
  return v;
}

// exact inverse on the image (up to scale); throws off the image
template <class R>
std::array<typename R::Elem, 3> veronese_inverse(const R& rg, std::vector<typename R::Elem> w) {
  if (w.size() != 5) throw ring_error("expected 5 coordinates");
  auto check = [&](const typename R::Elem& x, const typename R::Elem& y, const typename R::Elem& z) {
    auto v = veronese_projection(rg, x, y, z);
    // proportional to w?
    typename R::Elem lx = rg.zero(), lw = rg.zero();
    bool set = false;
    for (size_t i = 0; i < 5; ++i) {
      if (!set && !(rg.is_zero(v[i]) && rg.is_zero(w[i]))) {
        lx = v[i];
        lw = w[i];
        set = true;
      }
      if (!rg.eq(rg.mul(v[i], lw), rg.mul(w[i], lx))) return false;
    }
    return set;
  };
  // x != 0 chart: w0 != 0: scale w by -1/w0 -> x = 1, z = w1', y = -(w2' + z^2)
  if (!rg.is_zero(w[0])) {
    auto s = rg.neg(rg.inv(w[0]));  // now -x^2 -> -1... w' = s*w has w0' = -1
    std::vector<typename R::Elem> ww(5);
    for (size_t i = 0; i < 5; ++i) ww[i] = rg.mul(w[i], s);
    auto x = rg.one();
    auto z = ww[1];
    auto y = rg.neg(rg.add(ww[2], rg.mul(z, z)));
    if (!check(x, y, z)) throw ring_error("point not on the projected Veronese surface");
    return {x, y, z};
  }
  // x = 0: w = (0, 0, -z^2, yz, -y^2)
  if (!rg.is_zero(w[2])) {
    auto s = rg.neg(rg.inv(w[2]));  // z = 1 chart
    std::vector<typename R::Elem> ww(5);
    for (size_t i = 0; i < 5; ++i) ww[i] = rg.mul(w[i], s);
    auto z = rg.one();
    auto y = ww[3];
    if (!check(rg.zero(), y, z)) throw ring_error("point not on the projected Veronese surface");
    return {rg.zero(), y, z};
  }
  // x = z = 0: (0,0,0,0,-y^2) ~ (0,1,0)
  if (!rg.is_zero(w[4])) {
    if (!check(rg.zero(), rg.one(), rg.zero())) throw ring_error("point not on the projected Veronese surface");
    return {rg.zero(), rg.one(), rg.zero()};
  }
  throw ring_error("point not on the projected Veronese surface");
}

// ---------------------------------------------------------------------------
// Orbit classification of points of Y_spl(F_q).
// ---------------------------------------------------------------------------
class PointClassifier {
 public:
  explicit PointClassifier(GF f) : model_(std::move(f)) {
    const GF& F = model_.F;
    if (F.p != 2) {
      // the diagonal image of nu = O1(F_q)
      for_each_proj_point(F, 2, [&](const std::vector<uint64_t>& pq) {
        auto img = nu_map(F, pq[0], pq[1], pq[0], pq[1]);
        o1_points_.insert(normalize_point(F, img));
      });
    }
  }

  const SplitModel& model() const { return model_; }

  OrbitLabel classify(const std::vector<uint64_t>& a_in) const {
    const GF& F = model_.F;
    auto a = normalize_point(F, a_in);
    if (!model_.on_model(a)) throw ring_error("point is not on the model");
    if (F.p != 2) {
      if (model_.divisor_D(a) != 0) return OrbitLabel::O3;
      if (o1_points_.count(a)) return OrbitLabel::O1;
      return OrbitLabel::O2;
    }
    if (a[3] != 0) return OrbitLabel::O3;
    // nu'-image membership: the twisted cubic has a1 = a3 = a5 = 0, the
    // exceptional line has a0 = a2 = a4 = a6 = 0, else O2
    if (a[1] == 0 && a[5] == 0) return OrbitLabel::O1;
    if (a[0] == 0 && a[2] == 0 && a[4] == 0 && a[6] == 0) return OrbitLabel::O1prime;
    return OrbitLabel::O2;
  }

 private:
  SplitModel model_;
  std::set<std::vector<uint64_t>> o1_points_;
};

// ---------------------------------------------------------------------------
// Lines through a point of Y_spl(F_q); k <= 3 extension search (the <= 3
// lines through a point are permuted by Frobenius, so each is defined over
// F_{q^k} with k <= 3).
// ---------------------------------------------------------------------------
struct FoundLine {
  std::vector<uint64_t> p0, p1;   // spanning points over F_{q^k}, embedded in F_{q^6}
  uint32_t field_degree;          // minimal k in {1,2,3}
  LineType type;
  std::vector<uint64_t> sigma_label;  // over F_{q^6}
};

namespace detail {

// polarization B(p, y) of the split quadrics: 5 x 7 matrix of linear forms
inline Matrix<GF> polarization_matrix(const GF& F, const std::vector<uint64_t>& p) {
  // q(x) = sum c_ab x_a x_b (a<=b); B(p,y)_i = sum_{a<b} c_ab (p_a y_b + p_b y_a) + 2 sum c_aa p_a y_a
  struct Q {
    int a, b;
    int c;
  };
  static const std::vector<std::vector<Q>> quadrics = {{{0, 4, 1}, {1, 3, -1}, {2, 2, 1}},
                                                       {{0, 5, 1}, {1, 4, -1}, {2, 3, 1}},
                                                       {{0, 6, 1}, {2, 4, -1}, {3, 3, 1}},
                                                       {{1, 6, 1}, {2, 5, -1}, {3, 4, 1}},
                                                       {{2, 6, 1}, {3, 5, -1}, {4, 4, 1}}};
  Matrix<GF> m(F, 5, 7);
  for (size_t i = 0; i < 5; ++i)
    for (const auto& t : quadrics[i]) {
      auto c = F.from_int(t.c);
      if (t.a == t.b) {
        auto v = F.mul(F.from_int(2), F.mul(c, p[size_t(t.a)]));
        m.at(i, size_t(t.a)) = F.add(m.at(i, size_t(t.a)), v);
      } else {
        m.at(i, size_t(t.b)) = F.add(m.at(i, size_t(t.b)), F.mul(c, p[size_t(t.a)]));
        m.at(i, size_t(t.a)) = F.add(m.at(i, size_t(t.a)), F.mul(c, p[size_t(t.b)]));
      }
    }
  return m;
}

// canonical RREF key of the span of two points, for dedup
inline std::vector<uint64_t> line_key(const GF& F, const std::vector<uint64_t>& p, const std::vector<uint64_t>& y) {
  Matrix<GF> m(F, 2, 7);
  for (size_t j = 0; j < 7; ++j) {
    m.at(0, j) = p[j];
    m.at(1, j) = y[j];
  }
  rref(m);
  return m.a;
}

}  // namespace detail

// sigma label of a line through two given points (the net point (x,y,z) with
// ker(xA+yB+zC) = the common kernel line V1 of the two bivectors)
inline std::vector<uint64_t> line_sigma_label(const GF& F, const std::vector<uint64_t>& p0,
                                              const std::vector<uint64_t>& p1) {
  auto net = split_net(F);
  // V1 = intersection of the 2-planes of the two bivectors: solve for v with
  // v in span(cols of Omega0) and span(cols of Omega1):
  auto cols = [&](const std::vector<uint64_t>& a) {
    auto b = bivector_from_split_point(F, a);
    Matrix<GF> om(F, 5, 5);
    for (int i = 1; i <= 5; ++i)
      for (int j = i + 1; j <= 5; ++j) {
        om.at(size_t(i - 1), size_t(j - 1)) = b[plucker_index(i, j)];
        om.at(size_t(j - 1), size_t(i - 1)) = F.neg(b[plucker_index(i, j)]);
      }
    return om;
  };
  auto om0 = cols(p0), om1 = cols(p1);
  // common column space: v = om0 u = om1 w -> solve [om0 | -om1] kernel
  Matrix<GF> sys(F, 5, 10);
  for (size_t i = 0; i < 5; ++i)
    for (size_t j = 0; j < 5; ++j) {
      sys.at(i, j) = om0.at(i, j);
      sys.at(i, 5 + j) = F.neg(om1.at(i, j));
    }
  auto ker = kernel_basis(sys);
  std::vector<uint64_t> v1;
  for (const auto& kv : ker) {
    std::vector<uint64_t> u(kv.begin(), kv.begin() + 5);
    auto v = om0.apply(u);
    bool nz = false;
    for (auto x : v) nz |= (x != 0);
    if (nz) {
      v1 = v;
      break;
    }
  }
  if (v1.empty()) throw ring_error("lines do not share a kernel direction");
  // solve (xA + yB + zC) v1 = 0 for (x,y,z)
  Matrix<GF> lin(F, 5, 3);
  for (size_t i = 0; i < 5; ++i) {
    lin.at(i, 0) = net.A.apply(v1)[i];
    lin.at(i, 1) = net.B.apply(v1)[i];
    lin.at(i, 2) = net.C.apply(v1)[i];
  }
  auto sol = kernel_basis(lin);
  if (sol.size() != 1) throw ring_error("sigma label is not unique");
  return normalize_point(F, sol[0]);
}

inline LineType line_type_from_label(const GF& F, const std::vector<uint64_t>& xyz) {
  if (F.p != 2) {
    auto conic = F.sub(F.mul(xyz[2], xyz[2]), F.mul(F.from_int(2), F.mul(xyz[0], xyz[1])));
    return conic == 0 ? LineType::special : LineType::ordinary;
  }
  if (xyz[0] == 0 && xyz[1] == 0) return LineType::exceptional;
  if (xyz[2] == 0) return LineType::special;
  return LineType::ordinary;
}

// all geometric lines through p (defined over F_{q^k}, k <= 3)
inline std::vector<FoundLine> lines_through(const GF& F, const std::vector<uint64_t>& p_in) {
  SplitModel base(F);
  auto p = normalize_point(F, p_in);
  if (!base.on_model(p)) throw ring_error("point is not on the model");
  GF F6 = extension_of(F, 6);
  std::vector<FoundLine> out;
  std::set<std::vector<uint64_t>> seen;  // line keys over F6
  for (uint32_t k = 1; k <= 3; ++k) {
    GF Fk = extension_of(F, k);
    SplitModel mk(Fk);
    std::vector<uint64_t> pk(7);
    for (size_t i = 0; i < 7; ++i) pk[i] = F.embed_into(Fk, p[i]);
    auto lin = detail::polarization_matrix(Fk, pk);
    auto V = kernel_basis(lin);
    size_t d = V.size();
    if (d < 2) continue;
    // quadrics restricted to V-coordinates:
    // Q_i(t) = q_i(sum t_j V_j): represent via symmetric value tables
    auto eval_point = [&](const std::vector<uint64_t>& t) {
      std::vector<uint64_t> y(7, 0);
      for (size_t j = 0; j < d; ++j) {
        if (!t[j]) continue;
        for (size_t i = 0; i < 7; ++i) y[i] = Fk.add(y[i], Fk.mul(t[j], V[j][i]));
      }
      return y;
    };
    auto consider = [&](const std::vector<uint64_t>& y) {
      bool nz = false;
      for (auto x : y) nz |= (x != 0);
      if (!nz || !mk.on_model(y)) return;
      // y must not be proportional to p
      if (proj_equal(Fk, y, pk)) return;
      auto key_k = detail::line_key(Fk, pk, y);
      // embed into F6 for global dedup
      std::vector<uint64_t> key6;
      for (auto x : key_k) key6.push_back(Fk.embed_into(F6, x));
      if (seen.count(key6)) return;
      seen.insert(key6);
      FoundLine fl;
      fl.field_degree = k;
      fl.p0.resize(7);
      fl.p1.resize(7);
      for (size_t i = 0; i < 7; ++i) {
        fl.p0[i] = Fk.embed_into(F6, pk[i]);
        fl.p1[i] = Fk.embed_into(F6, y[i]);
      }
      auto label = line_sigma_label(Fk, pk, y);
      fl.sigma_label.resize(3);
      for (size_t i = 0; i < 3; ++i) fl.sigma_label[i] = Fk.embed_into(F6, label[i]);
      fl.type = line_type_from_label(Fk, label);
      out.push_back(fl);
    };
    // enumerate P(V): prefix over P^{d-2} with last coordinate solved from the
    // first quadric that does not vanish identically on the fiber line, plus
    // the lone point (0,...,0,1)
    FieldSolver solver(Fk);
    std::vector<uint64_t> t(d, 0);
    t[d - 1] = 1;
    consider(eval_point(t));
    if (d >= 2) {
      for_each_proj_point(Fk, d - 1, [&](const std::vector<uint64_t>& prefix) {
        std::vector<uint64_t> tt(d, 0);
        for (size_t i = 0; i + 1 < d; ++i) tt[i] = prefix[i];
        // base point and direction of the z-line
        auto y0 = eval_point(tt);
        const auto& dir = V[d - 1];
        // restrict each quadric: q(y0 + z dir) = q(y0) + z B(y0,dir) + z^2 q(dir)
        // find candidates from the first non-identically-zero restriction
        bool whole_line = true;
        std::vector<uint64_t> candidates;
        auto quad_eval = [&](const std::vector<uint64_t>& a, size_t i) -> uint64_t {
          auto m = [&](uint64_t u, uint64_t v) { return Fk.mul(u, v); };
          switch (i) {
            case 0: return Fk.add(Fk.sub(m(a[0], a[4]), m(a[1], a[3])), m(a[2], a[2]));
            case 1: return Fk.add(Fk.sub(m(a[0], a[5]), m(a[1], a[4])), m(a[2], a[3]));
            case 2: return Fk.add(Fk.sub(m(a[0], a[6]), m(a[2], a[4])), m(a[3], a[3]));
            case 3: return Fk.add(Fk.sub(m(a[1], a[6]), m(a[2], a[5])), m(a[3], a[4]));
            default: return Fk.add(Fk.sub(m(a[2], a[6]), m(a[3], a[5])), m(a[4], a[4]));
          }
        };
        auto polar_eval = [&](const std::vector<uint64_t>& u, const std::vector<uint64_t>& v, size_t i) {
          auto s = quad_eval(std::vector<uint64_t>{Fk.add(u[0], v[0]), Fk.add(u[1], v[1]), Fk.add(u[2], v[2]),
                                                   Fk.add(u[3], v[3]), Fk.add(u[4], v[4]), Fk.add(u[5], v[5]),
                                                   Fk.add(u[6], v[6])},
                             i);
          s = Fk.sub(s, quad_eval(u, i));
          return Fk.sub(s, quad_eval(v, i));
        };
        std::vector<uint64_t> dir7(dir.begin(), dir.end());
        for (size_t i = 0; i < 5 && whole_line; ++i) {
          uint64_t c2 = quad_eval(dir7, i);
          uint64_t c1 = polar_eval(y0, dir7, i);
          uint64_t c0 = quad_eval(y0, i);
          if (c2 == 0 && c1 == 0 && c0 == 0) continue;
          whole_line = false;
          auto roots = solver.quadratic_roots(c2, c1, c0);
          if (roots.has_value()) candidates = *roots;
        }
        if (whole_line) {
          // the whole fiber line lies on Y: all its points are candidates
          for (uint64_t z = 0; z < Fk.order(); ++z) candidates.push_back(z);
        }
        for (auto z : candidates) {
          std::vector<uint64_t> ttz = tt;
          ttz[d - 1] = z;
          consider(eval_point(ttz));
        }
      });
    }
  }
  // Galois closure sanity: Frobenius x -> x^q permutes the found lines
  {
    std::set<std::vector<uint64_t>> keys = seen;
    for (const auto& key : keys) {
      std::vector<uint64_t> fr;
      for (auto x : key) fr.push_back(F6.pow(x, F.order()));
      // renormalize as a span key
      Matrix<GF> m(F6, 2, 7);
      for (size_t j = 0; j < 7; ++j) {
        m.at(0, j) = fr[j];
        m.at(1, j) = fr[7 + j];
      }
      rref(m);
      if (!keys.count(m.a)) throw ring_error("line set is not Galois stable");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Census of Y_spl(F_q).
// ---------------------------------------------------------------------------
struct CensusReport {
  uint64_t q = 0;
  uint64_t total = 0;
  std::map<std::string, uint64_t> orbit_sizes;
  // orbit label -> sorted list of (ordinary, special, exceptional) counts
  // observed through points of that orbit (one distinct profile expected)
  std::map<std::string, std::map<std::string, uint64_t>> line_profiles;
  bool line_profiles_uniform = true;
  bool lines_checked = false;
};

inline CensusReport census(const GF& F, bool with_lines) {
  CensusReport rep;
  rep.q = F.order();
  PointClassifier cls(F);
  for_each_proj_point(F, 7, [&](const std::vector<uint64_t>& a) {
    if (!cls.model().on_model(a)) return;
    ++rep.total;
    auto label = to_string(cls.classify(a));
    ++rep.orbit_sizes[label];
    if (with_lines) {
      auto lines = lines_through(F, a);
      unsigned no = 0, ns = 0, ne = 0;
      for (const auto& l : lines) {
        if (l.type == LineType::ordinary) ++no;
        if (l.type == LineType::special) ++ns;
        if (l.type == LineType::exceptional) ++ne;
      }
      std::string profile =
          std::to_string(no) + " ordinary, " + std::to_string(ns) + " special, " + std::to_string(ne) + " exceptional";
      ++rep.line_profiles[label][profile];
    }
  });
  rep.lines_checked = with_lines;
  for (auto& [label, profs] : rep.line_profiles)
    if (profs.size() != 1) rep.line_profiles_uniform = false;
  return rep;
}

// expected line profile per orbit label
inline std::string expected_line_profile(OrbitLabel o) {
  switch (o) {
    case OrbitLabel::O3: return "3 ordinary, 0 special, 0 exceptional";
    case OrbitLabel::O2: return "1 ordinary, 1 special, 0 exceptional";
    case OrbitLabel::O1: return "0 ordinary, 1 special, 0 exceptional";
    default: return "0 ordinary, 1 special, 1 exceptional";
  }
}

// ---------------------------------------------------------------------------
// Orbits of the reduced automorphism group on Sigma(Y) = P^2 (Cor 5.5).
// ---------------------------------------------------------------------------
struct SigmaOrbitsReport {
  // partition name -> points (normalized reps)
  std::map<std::string, std::vector<std::vector<uint64_t>>> parts;
  bool closed_under_group = false;
};

inline SigmaOrbitsReport sigma_orbits_on_lines(const GF& F) {
  SigmaOrbitsReport rep;
  auto part_of = [&](const std::vector<uint64_t>& xyz) -> std::string {
    if (F.p != 2) {
      auto conic = F.sub(F.mul(xyz[2], xyz[2]), F.mul(F.from_int(2), F.mul(xyz[0], xyz[1])));
      return conic == 0 ? "V(z^2-2xy)" : "open";
    }
    if (xyz[0] == 0 && xyz[1] == 0) return "{(0,0,1)}";
    if (xyz[2] == 0) return "V(z)";
    return "open";
  };
  for_each_proj_point(F, 3, [&](const std::vector<uint64_t>& xyz) { rep.parts[part_of(xyz)].push_back(xyz); });
  // group preservation: apply the embedded PGL2 / SL2 elements to each point
  bool ok = true;
  uint64_t q = F.order();
  for (uint64_t a = 0; a < q && ok; ++a)
    for (uint64_t b = 0; b < q && ok; ++b)
      for (uint64_t c = 0; c < q && ok; ++c)
        for (uint64_t d = 0; d < q && ok; ++d) {
          auto det = F.sub(F.mul(a, d), F.mul(b, c));
          if (F.p == 2 ? det != 1 : det == 0) continue;
          Matrix<GF> T = F.p == 2 ? embed_sl2_char2(F, a, b, c, d) : embed_pgl2(F, a, b, c, d);
          for (auto& [name, pts] : rep.parts) {
            for (auto& pt : pts) {
              auto img = T.apply(pt);
              if (part_of(normalize_point(F, img)) != name) {
                ok = false;
                break;
              }
            }
            if (!ok) break;
          }
        }
  rep.closed_under_group = ok;
  return rep;
}

// ---------------------------------------------------------------------------
// Trisecant intersection (Theorem 6.9): the line P(V2) in P^4 = P(U5) meets
// the projected Veronese surface in a length-3 scheme; points and
// multiplicities are read off the gcd of the pulled-back cubic generators of
// the surface ideal.
// ---------------------------------------------------------------------------
template <class R>
struct TrisecantPoint {
  std::array<typename R::Elem, 3> source;  // (x,y,z) in P^2
  std::vector<typename R::Elem> image;     // point of P^4 on the line
  unsigned multiplicity;
  uint32_t field_degree;  // over the base field (1 unless an extension was needed)
};

// cubic generators of the ideal of the projected Veronese surface over a field
template <class R>
std::vector<Poly<R>> veronese_cubic_ideal(const R& rg) {
  std::vector<std::string> vvars = {"v0", "v1", "v2", "v3", "v4"};
  std::vector<std::string> xyz = {"x", "y", "z"};
  auto X = Poly<R>::variable(rg, xyz, 0), Y = Poly<R>::variable(rg, xyz, 1), Z = Poly<R>::variable(rg, xyz, 2);
  std::vector<Poly<R>> comp = {-(X * X), Z * X, -(Z * Z) - X * Y, Y * Z, -(Y * Y)};
  // cubic monomials in v
  std::vector<std::array<unsigned, 5>> mons;
  for (unsigned i = 0; i < 5; ++i)
    for (unsigned j = i; j < 5; ++j)
      for (unsigned k = j; k < 5; ++k) mons.push_back({0, 0, 0, 0, 0}), mons.back()[i]++, mons.back()[j]++, mons.back()[k]++;
  // pullbacks as degree-6 ternary forms
  std::vector<std::array<unsigned, 3>> tmons;
  for (unsigned i = 0; i <= 6; ++i)
    for (unsigned j = 0; i + j <= 6; ++j) tmons.push_back({i, j, 6 - i - j});
  Matrix<R> M(rg, mons.size(), tmons.size());
  for (size_t r_ = 0; r_ < mons.size(); ++r_) {
    Poly<R> prod = Poly<R>::constant(rg, rg.one());
    for (size_t c_ = 0; c_ < 5; ++c_)
      for (unsigned e = 0; e < mons[r_][c_]; ++e) prod = prod * comp[c_];
    for (const auto& t : prod.terms) {
      std::array<unsigned, 3> key = {t.m.e[0], t.m.e[1], t.m.e[2]};
      size_t col = 0;
      for (; col < tmons.size(); ++col)
        if (tmons[col] == key) break;
      M.at(r_, col) = t.c;
    }
  }
  auto ker = kernel_basis(M.transpose());  // left kernel: row combinations vanishing identically
  std::vector<Poly<R>> cubics;
  for (const auto& kvec : ker) {
    Poly<R> c(rg, vvars);
    for (size_t m = 0; m < mons.size(); ++m) {
      if (rg.is_zero(kvec[m])) continue;
      Mono mo;
      unsigned d = 0;
      for (size_t v = 0; v < 5; ++v) {
        mo.e[v] = uint8_t(mons[m][v]);
        d += mons[m][v];
      }
      mo.deg = uint16_t(d);
      c.terms.push_back({mo, kvec[m]});
    }
    c.normalize();
    cubics.push_back(c);
  }
  return cubics;
}

// binary cubic coefficients of cubic(s*u + t*w): returns c[i] = coeff of
// s^{3-i} t^i
template <class R>
std::array<typename R::Elem, 4> pullback_cubic_to_line(const R& rg, const Poly<R>& cubic,
                                                       const std::vector<typename R::Elem>& u,
                                                       const std::vector<typename R::Elem>& w) {
  std::array<typename R::Elem, 4> out{rg.zero(), rg.zero(), rg.zero(), rg.zero()};
  for (const auto& t : cubic.terms) {
    // expand prod over variables of (u_i s + w_i t)^{e_i}
    std::vector<typename R::Elem> acc = {t.c};  // coefficients in t-degree
    for (size_t v = 0; v < 5; ++v) {
      for (unsigned e = 0; e < t.m.e[v]; ++e) {
        std::vector<typename R::Elem> nxt(acc.size() + 1, rg.zero());
        for (size_t i = 0; i < acc.size(); ++i) {
          nxt[i] = rg.add(nxt[i], rg.mul(acc[i], u[v]));
          nxt[i + 1] = rg.add(nxt[i + 1], rg.mul(acc[i], w[v]));
        }
        acc = nxt;
      }
    }
    for (size_t i = 0; i < acc.size() && i < 4; ++i) out[i] = rg.add(out[i], acc[i]);
  }
  return out;
}

// rank-2 factorization of a split-model point: returns the 2-plane basis
template <class R>
std::pair<std::vector<typename R::Elem>, std::vector<typename R::Elem>> plane_of_point(
    const R& rg, const std::vector<typename R::Elem>& a) {
  static_assert(R::is_field);
  auto b = bivector_from_split_point(rg, a);
  Matrix<R> om(rg, 5, 5);
  for (int i = 1; i <= 5; ++i)
    for (int j = i + 1; j <= 5; ++j) {
      om.at(size_t(i - 1), size_t(j - 1)) = b[plucker_index(i, j)];
      om.at(size_t(j - 1), size_t(i - 1)) = rg.neg(b[plucker_index(i, j)]);
    }
  // two independent columns
  std::vector<typename R::Elem> u, w;
  for (size_t j = 0; j < 5 && w.empty(); ++j) {
    std::vector<typename R::Elem> col(5);
    bool nz = false;
    for (size_t i = 0; i < 5; ++i) {
      col[i] = om.at(i, j);
      nz |= !rg.is_zero(col[i]);
    }
    if (!nz) continue;
    if (u.empty()) {
      u = col;
      continue;
    }
    Matrix<R> test(rg, 2, 5);
    for (size_t i = 0; i < 5; ++i) {
      test.at(0, i) = u[i];
      test.at(1, i) = col[i];
    }
    if (rank_of(test) == 2) w = col;
  }
  if (w.empty()) throw ring_error("point bivector does not have rank 2");
  return {u, w};
}

// Trisecant points over finite fields (roots may live in F_{q^k}, k <= 3).
inline std::vector<TrisecantPoint<GF>> trisecant_points(const GF& F, const std::vector<uint64_t>& a_in) {
  SplitModel model(F);
  auto a = normalize_point(F, a_in);
  if (!model.on_model(a)) throw ring_error("point is not on the model");
  auto [u, w] = plane_of_point(F, a);
  auto cubics = veronese_cubic_ideal(F);
  if (cubics.empty()) throw ring_error("veronese ideal has no cubics");
  // binary cubic gcd of the pullbacks
  std::vector<std::array<uint64_t, 4>> forms;
  for (const auto& c : cubics) forms.push_back(pullback_cubic_to_line(F, c, u, w));
  // represent as univariate in t (coefficient of s^{3-i} t^i -> t^i) and
  // track the multiplicity at (0:1) via degree drop
  unsigned inf_mult = 3;
  UniPoly<GF> g;
  for (const auto& f : forms) {
    UniPoly<GF> p;
    p.c.assign(f.begin(), f.end());
    p = UniPoly<GF>::trim(F, p);
    if (p.is_zero()) continue;
    inf_mult = std::min(inf_mult, unsigned(3 - p.degree()));
    g = g.is_zero() ? p : uni_gcd(F, g, p);
  }
  if (g.is_zero()) throw ring_error("intersection is not zero-dimensional (model bug)");
  unsigned total = unsigned(g.degree()) + inf_mult;
  if (total != 3) throw ring_error("intersection scheme has length " + std::to_string(total) + ", expected 3");
  std::vector<TrisecantPoint<GF>> out;
  auto emit = [&](const GF& Fk, uint32_t k, uint64_t s0, uint64_t t0, unsigned mult) {
    // point on the line: s0*u + t0*w over Fk
    std::vector<uint64_t> pt(5);
    for (size_t i = 0; i < 5; ++i)
      pt[i] = Fk.add(Fk.mul(s0, F.embed_into(Fk, u[i])), Fk.mul(t0, F.embed_into(Fk, w[i])));
    auto src = veronese_inverse(Fk, pt);
    TrisecantPoint<GF> tp;
    tp.source = src;
    tp.image = normalize_point(Fk, pt);
    tp.multiplicity = mult;
    tp.field_degree = k;
    out.push_back(tp);
  };
  if (inf_mult > 0) emit(F, 1, 0, 1, inf_mult);
  unsigned found = inf_mult;
  for (uint32_t k = 1; k <= 3 && found < 3; ++k) {
    GF Fk = extension_of(F, k);
    UniPoly<GF> gk;
    for (auto c : g.c) gk.c.push_back(F.embed_into(Fk, c));
    for (uint64_t tau = 0; tau < Fk.order() && found < 3; ++tau) {
      if (k > 1 && Fk.pow(tau, F.order()) == tau) continue;  // already found over a smaller field
      unsigned m = uni_root_multiplicity(Fk, gk, tau);
      if (m) {
        emit(Fk, k, 1, tau, m);
        found += m;
      }
    }
  }
  if (found != 3) throw ring_error("could not split the intersection scheme over degree <= 3");
  return out;
}

// Trisecant points over QQ (rational roots only; the worked example of the
// paper is rational).
inline std::vector<TrisecantPoint<QQ>> trisecant_points_rational(const std::vector<Rat>& a_in) {
  QQ rg;
  auto Y = y_split_ideal(rg);
  auto a = normalize_point(rg, a_in);
  if (!membership(rg, a, Y)) throw ring_error("point is not on the model");
  auto [u, w] = plane_of_point(rg, a);
  auto cubics = veronese_cubic_ideal(rg);
  UniPoly<QQ> g;
  unsigned inf_mult = 3;
  for (const auto& c : cubics) {
    auto f = pullback_cubic_to_line(rg, c, u, w);
    UniPoly<QQ> p;
    p.c.assign(f.begin(), f.end());
    p = UniPoly<QQ>::trim(rg, p);
    if (p.is_zero()) continue;
    inf_mult = std::min(inf_mult, unsigned(3 - p.degree()));
    g = g.is_zero() ? p : uni_gcd(rg, g, p);
  }
  if (g.is_zero()) throw ring_error("intersection is not zero-dimensional (model bug)");
  if (unsigned(g.degree()) + inf_mult != 3) throw ring_error("intersection scheme does not have length 3");
  std::vector<TrisecantPoint<QQ>> out;
  auto emit = [&](const Rat& s0, const Rat& t0, unsigned mult) {
    std::vector<Rat> pt(5);
    for (size_t i = 0; i < 5; ++i) pt[i] = s0 * u[i] + t0 * w[i];
    auto src = veronese_inverse(rg, pt);
    out.push_back(TrisecantPoint<QQ>{src, normalize_point(rg, pt), mult, 1});
  };
  if (inf_mult > 0) emit(Rat(0), Rat(1), inf_mult);
  unsigned found = inf_mult;
  // roots at t = 0 first, then the rational-root search on the cofactor
  UniPoly<QQ> p = g;
  unsigned m0 = uni_root_multiplicity(rg, p, Rat(0));
  if (m0) {
    emit(Rat(1), Rat(0), m0);
    found += m0;
    UniPoly<QQ> lin, quot;
    lin.c = {Rat(0), Rat(1)};
    for (unsigned i = 0; i < m0; ++i) {
      uni_divmod(rg, p, lin, &quot);
      p = quot;
    }
  }
  if (p.degree() >= 1) {
    Int lcm = 1;
    for (auto& c : p.c) lcm = boost::multiprecision::lcm(lcm, denominator(c));
    std::vector<Int> ic;
    for (auto& c : p.c) ic.push_back(numerator(c * Rat(lcm)));
    Int a0 = ic.front(), an = ic.back();
    auto divisors = [](Int n) {
      std::vector<Int> ds;
      n = abs(n);
      for (Int d = 1; d * d <= n; ++d)
        if (n % d == 0) {
          ds.push_back(d);
          ds.push_back(n / d);
        }
      return ds;
    };
    std::set<Rat> cands;
    for (const Int& num : divisors(a0))
      for (const Int& den : divisors(an))
        for (int sgn : {1, -1}) cands.insert(Rat(num * sgn, den));
    for (const Rat& cand : cands) {
      unsigned m = uni_root_multiplicity(rg, p, cand);
      if (m) {
        emit(Rat(1), cand, m);
        found += m;
      }
    }
  }
  if (found != 3) throw ring_error("trisecant scheme has irrational points; extension solving is finite-field only");
  return out;
}

}  // namespace qf

#endif
