#ifndef QF_ARITHMETIC_HPP
#define QF_ARITHMETIC_HPP

#include <unordered_set>

#include "qf/forms.hpp"

namespace qf {

// ---------------------------------------------------------------------------
// Places of Q and half-integer class vectors.
// ---------------------------------------------------------------------------
struct Place {
  bool infinite = false;
  Int p = 0;  // finite prime when !infinite

  static Place real() { return Place{true, 0}; }
  static Place finite(Int prime) {
    if (prime < 2) throw ring_error("bad prime");
    return Place{false, std::move(prime)};
  }
  bool operator<(const Place& o) const {
    if (infinite != o.infinite) return !infinite && o.infinite ? false : infinite;
    return p < o.p;
  }
  bool operator==(const Place& o) const { return infinite == o.infinite && p == o.p; }
  std::string str() const { return infinite ? "oo" : p.str(); }
};

// finite-support map Place -> {0, 1/2} in (1/2)Z/Z, encoded by the support set
struct PlaceVector {
  std::set<Place> support;  // places with value 1/2

  bool zero_sum() const { return support.size() % 2 == 0; }
};

// ---------------------------------------------------------------------------
// Hilbert symbol over Q.
// ---------------------------------------------------------------------------
inline int legendre(Int a, const Int& p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  // Euler criterion
  Int e = (p - 1) / 2, base = a, r = 1;
  while (e > 0) {
    if ((e & 1) != 0) r = r * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

inline unsigned valuation(Int& a, const Int& p) {
  unsigned v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

inline int hilbert_symbol(const Rat& a_in, const Rat& b_in, const Place& v) {
  if (a_in == 0 || b_in == 0) throw ring_error("hilbert symbol needs nonzero arguments");
  if (v.infinite) return (a_in < 0 && b_in < 0) ? -1 : 1;
  const Int& p = v.p;
  // valuations and unit parts of a rational at p
  auto split = [&](const Rat& x, Int& unit_num, Int& unit_den) {
    Int n = numerator(x), d = denominator(x);
    long alpha = 0;
    while (n % p == 0) {
      n /= p;
      ++alpha;
    }
    while (d % p == 0) {
      d /= p;
      --alpha;
    }
    unit_num = n;
    unit_den = d;
    return alpha;
  };
  Int un, ud, wn, wd;
  long alpha = split(a_in, un, ud);
  long beta = split(b_in, wn, wd);
  if (p == 2) {
    // (-1)^{eps(u) eps(w) + alpha omega(w) + beta omega(u)}
    auto eps = [&](const Int& n, const Int& d) {
      // (u - 1)/2 mod 2 for u = n/d odd: compute u mod 8 via d inverse mod 8
      long nn = long(((n % 8) + 8) % 8), dd = long(((d % 8) + 8) % 8);
      static const long inv8[8] = {0, 1, 0, 3, 0, 5, 0, 7};
      long u = (nn * inv8[dd]) % 8;
      return ((u - 1) / 2) % 2 != 0;
    };
    auto omega = [&](const Int& n, const Int& d) {
      long nn = long(((n % 8) + 8) % 8), dd = long(((d % 8) + 8) % 8);
      static const long inv8[8] = {0, 1, 0, 3, 0, 5, 0, 7};
      long u = (nn * inv8[dd]) % 8;
      return ((u * u - 1) / 8) % 2 != 0;
    };
    bool exp_odd = false;
    if (eps(un, ud) && eps(wn, wd)) exp_odd = !exp_odd;
    if ((alpha % 2 != 0) && omega(wn, wd)) exp_odd = !exp_odd;
    if ((beta % 2 != 0) && omega(un, ud)) exp_odd = !exp_odd;
    return exp_odd ? -1 : 1;
  }
  // odd p: (-1)^{alpha beta eps(p)} (u|p)^beta (w|p)^alpha
  int sym = 1;
  bool eps_p = ((p - 1) / 2) % 2 != 0;
  if ((alpha % 2 != 0) && (beta % 2 != 0) && eps_p) sym = -sym;
  auto leg_rat = [&](const Int& n, const Int& d) { return legendre(n, p) * legendre(d, p); };
  if (beta % 2 != 0) sym *= leg_rat(un, ud);
  if (alpha % 2 != 0) sym *= leg_rat(wn, wd);
  return sym;
}

// ---------------------------------------------------------------------------
// Independent oracle: primitive solubility of a x^2 + b y^2 = z^2 over
// Z/p^N. N is Hensel-safe for the valuations this artifact tests
// (alpha + beta + 2 at odd p, alpha + beta + 5 at p = 2); callers keep
// p^N below ~2^15 so the (p^N)^2 scan stays cheap.
// ---------------------------------------------------------------------------
inline bool conic_solvable_mod_oracle(long a, long b, const Place& v) {
  if (v.infinite) return !(a < 0 && b < 0);
  long p = long(v.p);
  auto val = [&](long x) {
    unsigned n = 0;
    while (x % p == 0) {
      x /= p;
      ++n;
    }
    return n;
  };
  unsigned alpha = val(a), beta = val(b);
  unsigned N = (p == 2) ? alpha + beta + 5 : alpha + beta + 2;
  long long M = 1;
  for (unsigned i = 0; i < N; ++i) M *= p;
  if (M > (1 << 15)) throw ring_error("oracle modulus too large");
  auto mod = [&](long long x) {
    x %= M;
    if (x < 0) x += M;
    return x;
  };
  // squares: all and unit-square markers
  std::vector<uint8_t> sq(size_t(M), 0);  // 1 = square, 2 = square of a unit
  for (long long z = 0; z < M; ++z) {
    long long s = mod(z * z);
    sq[size_t(s)] = std::max<uint8_t>(sq[size_t(s)], (z % p != 0) ? 2 : 1);
  }
  long long am = mod(a), bm = mod(b);
  for (long long x = 0; x < M; ++x)
    for (long long y = 0; y < M; ++y) {
      long long w = mod(am * mod(x * x) + bm * mod(y * y));
      bool xy_primitive = (x % p != 0) || (y % p != 0);
      if (xy_primitive ? sq[size_t(w)] >= 1 : sq[size_t(w)] == 2) return true;
    }
  return false;
}

// ---------------------------------------------------------------------------
// Local classification of a rational ternary form: split iff the associated
// conic is isotropic over Q_v. Diagonalize to <d1,d2,d3>; isotropy is
// (-d1 d3, -d2 d3)_v = 1.
// ---------------------------------------------------------------------------
inline std::array<Rat, 3> diagonalize_rational(const Matrix<QQ>& Qin) {
  if (!Qin.is_symmetric() || Qin.r != 3) throw ring_error("need a symmetric 3x3 matrix");
  if (determinant(Qin) == 0) throw ring_error("degenerate form");
  Matrix<QQ> m = Qin;
  size_t n = 3;
  std::array<Rat, 3> diag;
  for (size_t k = 0; k < n; ++k) {
    if (m.at(k, k) == 0) {
      size_t d = k + 1;
      while (d < n && m.at(d, d) == 0) ++d;
      if (d < n) {
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
        if (!found) throw ring_error("degenerate form");
        for (size_t t = 0; t < n; ++t) m.at(fi, t) += m.at(fj, t);
        for (size_t t = 0; t < n; ++t) m.at(t, fi) += m.at(t, fj);
        if (fi != k) {
          for (size_t t = 0; t < n; ++t) std::swap(m.at(k, t), m.at(fi, t));
          for (size_t t = 0; t < n; ++t) std::swap(m.at(t, k), m.at(t, fi));
        }
      }
    }
    Rat piv = m.at(k, k);
    diag[k] = piv;
    for (size_t i = k + 1; i < n; ++i) {
      if (m.at(i, k) == 0) continue;
      Rat f = m.at(i, k) / piv;
      for (size_t j = 0; j < n; ++j) m.at(i, j) -= f * m.at(k, j);
      for (size_t j = 0; j < n; ++j) m.at(j, i) -= f * m.at(j, k);
    }
  }
  return diag;
}

enum class LocalClass { split, nonsplit };

inline LocalClass local_class(const Matrix<QQ>& Q, const Place& v) {
  auto d = diagonalize_rational(Q);
  // isotropy of d1 x^2 + d2 y^2 + d3 z^2 = 0 over Q_v
  Rat a = -d[0] * d[2], b = -d[1] * d[2];
  return hilbert_symbol(a, b, v) == 1 ? LocalClass::split : LocalClass::nonsplit;
}

inline LocalClass local_class(const TernarySymForm<QQ>& q, const Place& v) { return local_class(q.Q, v); }

inline Matrix<QQ> rational_matrix(const Matrix<ZZ>& m) {
  QQ rq;
  Matrix<QQ> out(rq, m.r, m.c);
  for (size_t i = 0; i < m.a.size(); ++i) out.a[i] = Rat(m.a[i]);
  return out;
}

// good reduction at p: automatic at 2, split condition elsewhere
inline bool good_reduction(const Matrix<QQ>& Q, const Int& p) {
  if (determinant(Q) == 0) throw ring_error("degenerate form");
  if (p == 2) return true;
  return local_class(Q, Place::finite(p)) == LocalClass::split;
}

// ---------------------------------------------------------------------------
// Z-classification (Cor 3.7): unimodular ternary forms fall into the split
// model class (indefinite) or the definite class.
// ---------------------------------------------------------------------------
enum class ZClass { split_model, definite };

inline ZClass z_classification(const TernarySymForm<ZZ>& q) {
  auto det = determinant(q.Q);
  if (det != 1 && det != -1) throw ring_error("z_classification needs |det| = 1");
  auto [pos, neg] = signature_pair(q);
  if ((pos == 2 && neg == 1) || (pos == 1 && neg == 2)) return ZClass::split_model;
  return ZClass::definite;
}

// ---------------------------------------------------------------------------
// Shafarevich count (Theorem 7.6) over Q: places S u {2, oo}; the classes
// are the zero-sum (1/2)Z/Z vectors, 2^{r-1} of them; each gets a verified
// diagonal representative.
// ---------------------------------------------------------------------------
struct ShafarevichEntry {
  PlaceVector pattern;                 // places where the form is nonsplit
  std::optional<Matrix<ZZ>> form;      // diagonal representative
  bool verified = false;
};

struct ShafarevichReport {
  std::vector<Place> places;  // S u {2, oo}
  uint64_t count = 0;         // 2^{r-1}
  std::vector<ShafarevichEntry> entries;
  bool all_verified = false;
  bool warned_2_in_S = false;
};

// searches a diagonal form <d1, d2, 1> (|di| <= 200) that is nonsplit exactly
// on the support
inline std::optional<Matrix<ZZ>> find_representative(const std::set<Place>& support,
                                                     const std::vector<Place>& all_places) {
  ZZ rz;
  QQ rq;
  if (support.empty()) {
    // split everywhere: the split form itself
    return split_form(rz).Q;
  }
  std::vector<Place> spot;
  {
    // 5 odd primes outside the declared place set, for the spot check
    Int p = 3;
    while (spot.size() < 5) {
      bool used = false;
      for (const auto& v : all_places) used |= (!v.infinite && v.p == p);
      bool divides = false;  // representatives below have entries +-1..200
      if (!used && !divides) spot.push_back(Place::finite(p));
      // next prime
      do {
        ++p;
      } while (!detail::is_prime_u64(p.convert_to<uint64_t>()));
    }
  }
  auto try_pair = [&](long d1, long d2) -> bool {
    if (d1 == 0 || d2 == 0) return false;
    Matrix<QQ> Q(rq, 3, 3);
    Q.at(0, 0) = Rat(d1);
    Q.at(1, 1) = Rat(d2);
    Q.at(2, 2) = Rat(1);
    for (const auto& v : all_places) {
      bool want_nonsplit = support.count(v) > 0;
      if ((local_class(Q, v) == LocalClass::nonsplit) != want_nonsplit) return false;
    }
    // ramification of (-d1,-d2) is supported on 2, oo and the primes
    // dividing d1 d2: every odd prime factor outside the declared places
    // must be split
    long n = std::abs(d1) * std::abs(d2);
    for (long p = 3; p * p <= n; p += 2) {
      if (n % p != 0) continue;
      while (n % p == 0) n /= p;
      bool declared = false;
      for (const auto& v : all_places) declared |= (!v.infinite && v.p == p);
      if (!declared && local_class(Q, Place::finite(p)) == LocalClass::nonsplit) return false;
    }
    if (n > 2 && n % 2 == 1) {
      bool declared = false;
      for (const auto& v : all_places) declared |= (!v.infinite && v.p == n);
      if (!declared && local_class(Q, Place::finite(n)) == LocalClass::nonsplit) return false;
    }
    for (const auto& v : spot)
      if (local_class(Q, v) == LocalClass::nonsplit) return false;
    return true;
  };
  auto pack = [&](long d1, long d2) {
    Matrix<ZZ> out(rz, 3, 3);
    out.at(0, 0) = d1;
    out.at(1, 1) = d2;
    out.at(2, 2) = 1;
    return out;
  };
  // shells by max(|d1|, |d2|), deterministic order
  for (long mag = 1; mag <= 200; ++mag)
    for (long d1 = -mag; d1 <= mag; ++d1)
      for (long d2 = -mag; d2 <= mag; ++d2) {
        if (std::max(std::abs(d1), std::abs(d2)) != mag) continue;
        if (try_pair(d1, d2)) return pack(d1, d2);
      }
  // fallback: signed products of the declared odd primes and 2 (the
  // two-unit local pattern glued globally)
  std::vector<long> odd;
  for (const auto& v : all_places)
    if (!v.infinite && v.p != 2) odd.push_back(long(v.p));
  std::vector<long> cand;
  for (uint64_t mask = 0; mask < (uint64_t(1) << odd.size()); ++mask)
    for (int e2 = 0; e2 <= 1; ++e2)
      for (int sgn : {1, -1}) {
        long v = sgn * (e2 ? 2 : 1);
        for (size_t i = 0; i < odd.size(); ++i)
          if (mask & (uint64_t(1) << i)) v *= odd[i];
        cand.push_back(v);
      }
  std::sort(cand.begin(), cand.end(), [](long x, long y) {
    return std::abs(x) != std::abs(y) ? std::abs(x) < std::abs(y) : x < y;
  });
  for (long d1 : cand)
    for (long d2 : cand)
      if (try_pair(d1, d2)) return pack(d1, d2);
  return std::nullopt;
}

inline ShafarevichReport shafarevich_count(std::set<Int> S_in) {
  ShafarevichReport rep;
  if (S_in.count(2)) {
    S_in.erase(2);
    rep.warned_2_in_S = true;  // 2 belongs to T, not S
  }
  for (const auto& p : S_in) {
    if (p < 3 || !detail::is_prime_u64(p.convert_to<uint64_t>())) throw ring_error("S must contain odd primes");
    rep.places.push_back(Place::finite(p));
  }
  rep.places.push_back(Place::finite(2));
  rep.places.push_back(Place::real());
  size_t r = rep.places.size();
  rep.count = uint64_t(1) << (r - 1);
  // all even-size subsets of the places
  for (uint64_t mask = 0; mask < (uint64_t(1) << r); ++mask) {
    if (__builtin_popcountll(mask) % 2 != 0) continue;
    ShafarevichEntry e;
    for (size_t i = 0; i < r; ++i)
      if (mask & (uint64_t(1) << i)) e.pattern.support.insert(rep.places[i]);
    e.form = find_representative(e.pattern.support, rep.places);
    if (e.form) {
      // final verification pass
      auto Q = rational_matrix(*e.form);
      e.verified = true;
      for (const auto& v : rep.places) {
        bool want = e.pattern.support.count(v) > 0;
        if ((local_class(Q, v) == LocalClass::nonsplit) != want) e.verified = false;
      }
    }
    rep.entries.push_back(std::move(e));
  }
  rep.all_verified = true;
  for (const auto& e : rep.entries) rep.all_verified &= e.verified;
  // patterns are pairwise distinct by construction (distinct subsets)
  return rep;
}

}  // namespace qf

#endif
