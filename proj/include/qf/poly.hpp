#ifndef QF_POLY_HPP
#define QF_POLY_HPP

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "qf/ring.hpp"

namespace qf {

struct budget_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Term-operation budget guarding symbolic computations. A "term operation" is
// one term-by-term product during polynomial multiplication.
struct TermBudget {
  uint64_t used = 0;
  uint64_t cap = 0;

  static TermBudget& instance() {
    thread_local TermBudget b{0, default_cap()};
    return b;
  }
  static uint64_t default_cap() {
    if (const char* e = std::getenv("QF_TERM_BUDGET")) {
      uint64_t v = std::strtoull(e, nullptr, 10);
      if (v > 0) return v;
    }
    return 100000000ull;  // 1e8
  }
  static void reset(uint64_t cap = 0) {
    auto& b = instance();
    b.used = 0;
    b.cap = cap ? cap : default_cap();
  }
  static void charge(uint64_t n) {
    auto& b = instance();
    b.used += n;
    if (b.used > b.cap) throw budget_exceeded("term-operation budget exceeded (" + std::to_string(b.cap) + ")");
  }
  static uint64_t spent() { return instance().used; }
};

// Exponent vector with a fixed capacity of 32 variables.
constexpr size_t kMaxVars = 32;

struct Mono {
  std::array<uint8_t, kMaxVars> e{};
  uint16_t deg = 0;

  void recompute_deg() {
    unsigned d = 0;
    for (auto x : e) d += x;
    deg = uint16_t(d);
  }
  bool operator==(const Mono& o) const { return deg == o.deg && e == o.e; }
};

// graded lexicographic, higher first when used with std::sort via grlex_less
inline bool grlex_less(const Mono& a, const Mono& b) {
  if (a.deg != b.deg) return a.deg < b.deg;
  for (size_t i = 0; i < kMaxVars; ++i)
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
  return false;
}

struct MonoHash {
  size_t operator()(const Mono& m) const {
    uint64_t h = 1469598103934665603ull;
    const uint64_t* w = reinterpret_cast<const uint64_t*>(m.e.data());
    for (int i = 0; i < 4; ++i) {
      h ^= w[i];
      h *= 1099511628211ull;
    }
    // splitmix64 finalizer; the accumulator masks with a power of two, so the
    // low bits must carry full entropy
    h ^= h >> 30;
    h *= 0xbf58476d1ce4e5b9ull;
    h ^= h >> 27;
    h *= 0x94d049bb133111ebull;
    h ^= h >> 31;
    return size_t(h);
  }
};

template <class R>
class Poly {
 public:
  using Elem = typename R::Elem;
  struct Term {
    Mono m;
    Elem c;
  };

  R ring;
  std::vector<std::string> vars;
  std::vector<uint8_t> caps;  // per-variable cap (x^cap = 0), 0 = none
  std::vector<Term> terms;    // grlex descending, no zero coefficients

  Poly() = default;
  explicit Poly(R r, std::vector<std::string> vs = {}) : ring(std::move(r)), vars(std::move(vs)) {
    if (vars.size() > kMaxVars) throw ring_error("too many variables (max 32)");
    caps.assign(vars.size(), 0);
  }

  static Poly constant(R r, Elem c) {
    Poly p(std::move(r));
    if (!p.ring.is_zero(c)) {
      Term t;
      t.c = std::move(c);
      p.terms.push_back(std::move(t));
    }
    return p;
  }
  static Poly zero(R r, std::vector<std::string> vs = {}) { return Poly(std::move(r), std::move(vs)); }
  static Poly variable(R r, const std::vector<std::string>& vs, size_t idx, unsigned exp = 1) {
    Poly p(std::move(r), vs);
    Term t;
    t.m.e[idx] = uint8_t(exp);
    t.m.recompute_deg();
    t.c = p.ring.one();
    p.terms.push_back(std::move(t));
    p.normalize();
    return p;
  }

  bool is_zero() const { return terms.empty(); }
  bool is_constant() const { return terms.empty() || (terms.size() == 1 && terms[0].m.deg == 0); }
  Elem constant_term() const {
    for (const auto& t : terms)
      if (t.m.deg == 0) return t.c;
    return ring.zero();
  }
  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& t : terms) d = std::max(d, unsigned(t.m.deg));
    return d;
  }
  unsigned degree_in(size_t var) const {
    unsigned d = 0;
    for (const auto& t : terms) d = std::max(d, unsigned(t.m.e[var]));
    return d;
  }
  size_t term_count() const { return terms.size(); }

  void set_cap(const std::string& var, uint8_t cap) {
    for (size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == var) {
        caps[i] = cap;
        normalize();
        return;
      }
    vars.push_back(var);
    caps.push_back(cap);
    if (vars.size() > kMaxVars) throw ring_error("too many variables (max 32)");
  }

  // Restores the sorted/combined/truncated invariant.
  void normalize() {
    bool capped = false;
    for (auto c : caps) capped |= (c != 0);
    if (capped) {
      for (auto& t : terms) {
        for (size_t i = 0; i < caps.size(); ++i)
          if (caps[i] && t.m.e[i] >= caps[i]) {
            t.c = ring.zero();
            break;
          }
      }
    }
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return grlex_less(b.m, a.m); });
    std::vector<Term> out;
    out.reserve(terms.size());
    for (auto& t : terms) {
      if (!out.empty() && out.back().m == t.m)
        out.back().c = ring.add(out.back().c, t.c);
      else
        out.push_back(std::move(t));
    }
    terms.clear();
    for (auto& t : out)
      if (!ring.is_zero(t.c)) terms.push_back(std::move(t));
  }

  bool same_vars(const Poly& o) const { return vars == o.vars && caps == o.caps; }

  bool equals(const Poly& o) const {
    Poly a = *this, b = o;
    align(a, b);
    if (a.terms.size() != b.terms.size()) return false;
    for (size_t i = 0; i < a.terms.size(); ++i)
      if (!(a.terms[i].m == b.terms[i].m) || !ring.eq(a.terms[i].c, b.terms[i].c)) return false;
    return true;
  }

  // Merges the variable universes of a and b (a's order first, then b's new
  // ones); exponents are remapped in place.
  static void align(Poly& a, Poly& b) {
    if (!a.ring.same(b.ring)) throw ring_error("ring mismatch");
    if (a.same_vars(b)) return;
    std::vector<std::string> u = a.vars;
    std::vector<uint8_t> uc = a.caps;
    for (size_t j = 0; j < b.vars.size(); ++j) {
      auto it = std::find(u.begin(), u.end(), b.vars[j]);
      if (it == u.end()) {
        u.push_back(b.vars[j]);
        uc.push_back(b.caps[j]);
      } else {
        size_t i = size_t(it - u.begin());
        if (uc[i] != b.caps[j] && b.caps[j] != 0 && uc[i] != 0) throw ring_error("cap mismatch on variable " + b.vars[j]);
        if (uc[i] == 0) uc[i] = b.caps[j];
      }
    }
    if (u.size() > kMaxVars) throw ring_error("too many variables (max 32)");
    a.remap(u, uc);
    b.remap(u, uc);
  }

  void remap(const std::vector<std::string>& u, const std::vector<uint8_t>& uc) {
    std::vector<size_t> pos(vars.size());
    for (size_t i = 0; i < vars.size(); ++i) {
      auto it = std::find(u.begin(), u.end(), vars[i]);
      pos[i] = size_t(it - u.begin());
    }
    for (auto& t : terms) {
      Mono m;
      for (size_t i = 0; i < vars.size(); ++i) m.e[pos[i]] = t.m.e[i];
      m.deg = t.m.deg;
      t.m = m;
    }
    vars = u;
    caps = uc;
    normalize();
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& t : r.terms) t.c = ring.neg(t.c);
    return r;
  }

  friend Poly operator+(Poly a, Poly b) {
    align(a, b);
    a.terms.insert(a.terms.end(), b.terms.begin(), b.terms.end());
    a.normalize();
    return a;
  }
  friend Poly operator-(Poly a, Poly b) { return std::move(a) + (-b); }

  friend Poly operator*(Poly a, Poly b) {
    align(a, b);
    Poly r(a.ring, a.vars);
    r.caps = a.caps;
    if (a.terms.empty() || b.terms.empty()) return r;
    TermBudget::charge(uint64_t(a.terms.size()) * b.terms.size());
    bool capped = false;
    for (auto c : a.caps) capped |= (c != 0);

    // open-addressing accumulator (linear probing, grown at 0.7 load)
    size_t cap = 16;
    uint64_t guess = 4 * uint64_t(std::max(a.terms.size(), b.terms.size()));
    guess = std::min(guess, uint64_t(a.terms.size()) * b.terms.size());
    while (cap < guess && cap < (size_t(1) << 22)) cap <<= 1;
    std::vector<Term> slots(cap);
    std::vector<uint8_t> used(cap, 0);
    size_t count = 0;
    MonoHash hasher;
    auto insert_add = [&](const Mono& m, Elem&& v) {
      size_t mask = slots.size() - 1;
      size_t i = hasher(m) & mask;
      while (used[i]) {
        if (slots[i].m == m) {
          slots[i].c = a.ring.add(slots[i].c, v);
          return;
        }
        i = (i + 1) & mask;
      }
      used[i] = 1;
      slots[i].m = m;
      slots[i].c = std::move(v);
      ++count;
    };
    auto maybe_grow = [&]() {
      if (count * 10 < slots.size() * 7) return;
      std::vector<Term> old = std::move(slots);
      std::vector<uint8_t> oldu = std::move(used);
      slots.assign(old.size() * 2, Term{});
      used.assign(old.size() * 2, 0);
      size_t mask = slots.size() - 1;
      for (size_t i = 0; i < old.size(); ++i) {
        if (!oldu[i]) continue;
        size_t j = hasher(old[i].m) & mask;
        while (used[j]) j = (j + 1) & mask;
        used[j] = 1;
        slots[j] = std::move(old[i]);
      }
    };

    for (const auto& ta : a.terms) {
      for (const auto& tb : b.terms) {
        Mono m;
        unsigned d = 0;
        bool dead = false;
        for (size_t i = 0; i < kMaxVars; ++i) {
          unsigned s = unsigned(ta.m.e[i]) + tb.m.e[i];
          if (s > 255) throw ring_error("exponent overflow");
          m.e[i] = uint8_t(s);
          d += s;
        }
        if (capped) {
          for (size_t i = 0; i < a.caps.size(); ++i)
            if (a.caps[i] && m.e[i] >= a.caps[i]) {
              dead = true;
              break;
            }
        }
        if (dead) continue;
        m.deg = uint16_t(d);
        insert_add(m, a.ring.mul(ta.c, tb.c));
        maybe_grow();
      }
    }
    r.terms.reserve(count);
    for (size_t i = 0; i < slots.size(); ++i) {
      if (used[i] && !r.ring.is_zero(slots[i].c)) r.terms.push_back(std::move(slots[i]));
    }
    std::sort(r.terms.begin(), r.terms.end(), [](const Term& x, const Term& y) { return grlex_less(y.m, x.m); });
    return r;
  }

  Poly scaled(const Elem& c) const {
    Poly r = *this;
    if (ring.is_zero(c)) {
      r.terms.clear();
      return r;
    }
    for (auto& t : r.terms) t.c = ring.mul(t.c, c);
    r.normalize();
    return r;
  }

  // Full evaluation: every variable must be assigned a ring element.
  Elem evaluate(const std::map<std::string, Elem>& asg) const {
    for (size_t i = 0; i < vars.size(); ++i)
      if (degree_in(i) > 0 && !asg.count(vars[i])) throw ring_error("missing assignment for variable " + vars[i]);
    Elem total = ring.zero();
    for (const auto& t : terms) {
      Elem prod = t.c;
      for (size_t i = 0; i < vars.size(); ++i) {
        for (unsigned k = 0; k < t.m.e[i]; ++k) prod = ring.mul(prod, asg.at(vars[i]));
      }
      total = ring.add(total, prod);
    }
    return total;
  }

  // Substitute polynomials for variables (full composition; every variable
  // appearing with positive degree must be present in the map).
  Poly substitute(const std::map<std::string, Poly>& sub) const {
    Poly total = Poly::zero(ring, vars);
    total.caps = caps;
    for (const auto& t : terms) {
      Poly prod = Poly::constant(ring, t.c);
      for (size_t i = 0; i < vars.size(); ++i) {
        if (!t.m.e[i]) continue;
        auto it = sub.find(vars[i]);
        if (it == sub.end()) throw ring_error("missing substitution for variable " + vars[i]);
        for (unsigned k = 0; k < t.m.e[i]; ++k) prod = prod * it->second;
      }
      total = total + prod;
    }
    return total;
  }

  // Multidegree with respect to a partition of the variables given by name
  // prefixes; returns the max over terms of per-block degree, per block.
  std::vector<unsigned> multidegree(const std::vector<std::vector<size_t>>& blocks) const {
    std::vector<unsigned> md(blocks.size(), 0);
    for (const auto& t : terms) {
      for (size_t b = 0; b < blocks.size(); ++b) {
        unsigned d = 0;
        for (size_t i : blocks[b]) d += t.m.e[i];
        md[b] = std::max(md[b], d);
      }
    }
    return md;
  }

  std::string str() const {
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms) {
      std::string cs = ring.to_string(t.c);
      bool negated = !cs.empty() && cs[0] == '-';
      if (first) {
        first = false;
        if (negated) {
          out += "-";
          cs = cs.substr(1);
        }
      } else {
        out += negated ? " - " : " + ";
        if (negated) cs = cs.substr(1);
      }
      std::string monos;
      for (size_t i = 0; i < vars.size(); ++i) {
        if (!t.m.e[i]) continue;
        if (!monos.empty()) monos += "*";
        monos += vars[i];
        if (t.m.e[i] > 1) monos += "^" + std::to_string(unsigned(t.m.e[i]));
      }
      if (monos.empty())
        out += cs;
      else if (cs == "1")
        out += monos;
      else
        out += cs + "*" + monos;
    }
    return out;
  }
};

// Polynomial ring over a base ring as a ring in its own right (elements are
// polynomials; variable universes merge on demand).
template <class B>
struct PolyRing {
  using Elem = Poly<B>;
  static constexpr bool is_field = false;

  B base;
  std::vector<std::string> vars;

  PolyRing() = default;
  explicit PolyRing(B b, std::vector<std::string> vs = {}) : base(std::move(b)), vars(std::move(vs)) {}

  Elem zero() const { return Poly<B>::zero(base, vars); }
  Elem one() const { return Poly<B>::constant(base, base.one()); }
  Elem from_int(long v) const { return Poly<B>::constant(base, base.from_int(v)); }
  Elem variable(size_t i) const { return Poly<B>::variable(base, vars, i); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  bool eq(const Elem& a, const Elem& b) const { return a.equals(b); }
  bool is_unit(const Elem& a) const { return a.is_constant() && base.is_unit(a.constant_term()); }
  Elem inv(const Elem& a) const {
    if (!is_unit(a)) throw ring_error("non-unit polynomial");
    return Poly<B>::constant(base, base.inv(a.constant_term()));
  }
  Elem exact_div(const Elem& a, const Elem& b) const;
  unsigned long characteristic() const { return base.characteristic(); }
  std::string to_string(const Elem& a) const { return a.str(); }
  Elem parse(const std::string& s) const { return Poly<B>::constant(base, base.parse(s)); }
  bool same(const PolyRing& o) const { return base.same(o.base); }
  std::string name() const { return base.name() + "[...]"; }
};

// Exact polynomial division: returns q with a = q*b, throws if b does not
// divide a (uses grlex leading-term elimination; coefficient divisions must be
// exact in the ring).
template <class R>
Poly<R> exact_div_poly(Poly<R> a, Poly<R> b) {
  Poly<R>::align(a, b);
  if (b.is_zero()) throw ring_error("polynomial division by zero");
  Poly<R> q(a.ring, a.vars);
  q.caps = a.caps;
  const auto& lt = b.terms.front();
  while (!a.is_zero()) {
    const auto& la = a.terms.front();
    Mono m;
    unsigned d = 0;
    for (size_t i = 0; i < kMaxVars; ++i) {
      if (la.m.e[i] < lt.m.e[i]) throw ring_error("inexact polynomial division");
      m.e[i] = uint8_t(la.m.e[i] - lt.m.e[i]);
      d += m.e[i];
    }
    m.deg = uint16_t(d);
    typename R::Elem c = a.ring.exact_div(la.c, lt.c);
    Poly<R> piece(a.ring, a.vars);
    piece.caps = a.caps;
    piece.terms.push_back({m, c});
    q = q + piece;
    a = a - piece * b;
  }
  return q;
}

template <class B>
typename PolyRing<B>::Elem PolyRing<B>::exact_div(const Elem& a, const Elem& b) const {
  return exact_div_poly(a, b);
}

}  // namespace qf

#endif
