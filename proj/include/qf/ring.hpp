#ifndef QF_RING_HPP
#define QF_RING_HPP

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qf/bigint.hpp"

namespace qf {

struct ring_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Integers.
// ---------------------------------------------------------------------------
struct ZZ {
  using Elem = Int;
  static constexpr bool is_field = false;

  Elem zero() const { return Int(0); }
  Elem one() const { return Int(1); }
  Elem from_int(long v) const { return Int(v); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  bool is_unit(const Elem& a) const { return a == 1 || a == -1; }
  Elem inv(const Elem& a) const {
    if (!is_unit(a)) throw ring_error("non-unit integer has no inverse");
    return a;
  }
  // Exact division; throws when b does not divide a.
  Elem exact_div(const Elem& a, const Elem& b) const {
    if (b == 0) throw ring_error("division by zero");
    Int q = a / b;
    if (q * b != a) throw ring_error("inexact integer division");
    return q;
  }
  unsigned long characteristic() const { return 0; }
  std::string to_string(const Elem& a) const { return a.str(); }
  Elem parse(const std::string& s) const { return int_from_string(s); }
  bool same(const ZZ&) const { return true; }
  std::string name() const { return "ZZ"; }
};

// ---------------------------------------------------------------------------
// Checked 64-bit integers: exact as long as nothing overflows, and every
// overflow throws so callers can fall back to ZZ. Used as a fast coefficient
// ring for the large symbolic computations.
// ---------------------------------------------------------------------------
struct int64_overflow : std::runtime_error {
  int64_overflow() : std::runtime_error("int64 coefficient overflow") {}
};

struct ZZ64 {
  using Elem = int64_t;
  static constexpr bool is_field = false;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long v) const { return v; }
  Elem add(Elem a, Elem b) const {
    Elem r;
    if (__builtin_add_overflow(a, b, &r)) throw int64_overflow{};
    return r;
  }
  Elem sub(Elem a, Elem b) const {
    Elem r;
    if (__builtin_sub_overflow(a, b, &r)) throw int64_overflow{};
    return r;
  }
  Elem mul(Elem a, Elem b) const {
    Elem r;
    if (__builtin_mul_overflow(a, b, &r)) throw int64_overflow{};
    return r;
  }
  Elem neg(Elem a) const {
    if (a == INT64_MIN) throw int64_overflow{};
    return -a;
  }
  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }
  bool is_unit(Elem a) const { return a == 1 || a == -1; }
  Elem inv(Elem a) const {
    if (!is_unit(a)) throw ring_error("non-unit integer has no inverse");
    return a;
  }
  Elem exact_div(Elem a, Elem b) const {
    if (b == 0) throw ring_error("division by zero");
    if (a % b != 0) throw ring_error("inexact integer division");
    return a / b;
  }
  unsigned long characteristic() const { return 0; }
  std::string to_string(Elem a) const { return std::to_string(a); }
  Elem parse(const std::string& s) const { return int64_t(std::stoll(s)); }
  bool same(const ZZ64&) const { return true; }
  std::string name() const { return "ZZ64"; }
};

// ---------------------------------------------------------------------------
// Rationals, stored reduced with positive denominator (cpp_rational invariant).
// ---------------------------------------------------------------------------
struct QQ {
  using Elem = Rat;
  static constexpr bool is_field = true;

  Elem zero() const { return Rat(0); }
  Elem one() const { return Rat(1); }
  Elem from_int(long v) const { return Rat(v); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  bool is_unit(const Elem& a) const { return a != 0; }
  Elem inv(const Elem& a) const {
    if (a == 0) throw ring_error("division by zero");
    return 1 / a;
  }
  Elem exact_div(const Elem& a, const Elem& b) const { return a * inv(b); }
  unsigned long characteristic() const { return 0; }
  std::string to_string(const Elem& a) const { return rat_to_string(a); }
  Elem parse(const std::string& s) const { return rat_from_string(s); }
  bool same(const QQ&) const { return true; }
  std::string name() const { return "QQ"; }
};

// ---------------------------------------------------------------------------
// Finite fields F_{p^d}.
//
// Elements are encoded as a single uint64:
//   d == 1 : the residue in [0, p)
//   d >= 2 : sum c_i p^i for the coordinate vector (c_0 .. c_{d-1})
// Extension arithmetic uses log/exp tables, so q = p^d must stay <= 2^20 for
// d >= 2; prime fields allow p up to 2^31 - 1.
//
// Moduli for the fields named in the JSON surface are fixed:
//   F4 = F2[w]/(w^2+w+1), F8 = F2[u]/(u^3+u+1),
//   F9 = F3[i]/(i^2+1),   F16 = F2[v]/(v^4+v+1).
// Other degrees (internal closure searches) use the lexicographically least
// monic irreducible.
// ---------------------------------------------------------------------------
namespace detail {

inline bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Dense univariate arithmetic mod p, used only to build field tables.
using UPoly = std::vector<uint32_t>;

inline UPoly upoly_trim(UPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

inline UPoly upoly_mulmod(const UPoly& a, const UPoly& b, const UPoly& mod, uint64_t p) {
  std::vector<uint64_t> acc(a.size() + b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) acc[i + j] = (acc[i + j] + uint64_t(a[i]) * b[j]) % p;
  // reduce mod the monic modulus
  size_t dm = mod.size() - 1;
  for (size_t i = acc.size(); i-- > dm;) {
    uint64_t c = acc[i] % p;
    if (!c) continue;
    for (size_t j = 0; j < dm; ++j) {
      uint64_t s = acc[i - dm + j] + p - (c * mod[j]) % p;
      acc[i - dm + j] = s % p;
    }
    acc[i] = 0;
  }
  UPoly r(dm, 0);
  for (size_t i = 0; i < dm && i < acc.size(); ++i) r[i] = uint32_t(acc[i] % p);
  return r;
}

inline UPoly upoly_powmod(UPoly base, Int e, const UPoly& mod, uint64_t p) {
  UPoly r{1};
  r.resize(mod.size() - 1, 0);
  while (e > 0) {
    if ((e & 1) != 0) r = upoly_mulmod(r, base, mod, p);
    base = upoly_mulmod(base, base, mod, p);
    e >>= 1;
  }
  return r;
}

inline UPoly upoly_gcd(UPoly a, UPoly b, uint64_t p) {
  a = upoly_trim(a);
  b = upoly_trim(b);
  while (!b.empty()) {
    // a mod b with b made monic on the fly
    uint64_t lb = b.back();
    // inverse of lb mod p
    uint64_t inv = 1, base = lb % p, e = p - 2;
    while (e) {
      if (e & 1) inv = inv * base % p;
      base = base * base % p;
      e >>= 1;
    }
    UPoly r = a;
    while (r.size() >= b.size()) {
      r = upoly_trim(r);
      if (r.size() < b.size()) break;
      uint64_t c = uint64_t(r.back()) * inv % p;
      size_t off = r.size() - b.size();
      for (size_t j = 0; j < b.size(); ++j) {
        uint64_t s = r[off + j] + p - c * b[j] % p;
        r[off + j] = uint32_t(s % p);
      }
      r = upoly_trim(r);
    }
    a = b;
    b = upoly_trim(r);
  }
  return a;
}

inline bool upoly_irreducible(const UPoly& f, uint64_t p) {
  // f monic of degree d: irreducible iff x^{p^d} = x mod f and
  // gcd(x^{p^{d/l}} - x, f) = 1 for every prime l | d.
  size_t d = f.size() - 1;
  UPoly x{0, 1};
  x.resize(d, 0);
  if (d == 1) return true;
  UPoly xp = upoly_powmod(x, pow_int(Int(uint64_t(p)), unsigned(d)), f, p);
  if (upoly_trim(xp) != upoly_trim(x)) return false;
  for (size_t l = 2; l <= d; ++l) {
    if (d % l != 0 || !is_prime_u64(l)) continue;
    UPoly xq = upoly_powmod(x, pow_int(Int(uint64_t(p)), unsigned(d / l)), f, p);
    // xq - x
    UPoly diff = xq;
    diff.resize(std::max(diff.size(), x.size()), 0);
    for (size_t i = 0; i < x.size(); ++i) diff[i] = uint32_t((diff[i] + p - x[i]) % p);
    UPoly g = upoly_gcd(diff, f, p);
    if (g.size() > 1) return false;
  }
  return true;
}

}  // namespace detail

struct GF {
  uint64_t p = 2;
  uint32_t deg = 1;
  std::vector<uint32_t> modulus;  // monic, coeffs mod p, size deg+1 (empty when deg == 1)
  using Elem = uint64_t;
  static constexpr bool is_field = true;

 private:
  struct Tables {
    uint64_t q = 0;
    std::vector<uint32_t> log;   // index by encoded element, log of nonzero
    std::vector<uint64_t> exp;   // exp[i] = g^i, length q-1
  };
  std::shared_ptr<Tables> tab_;

  uint64_t mul_raw(uint64_t a, uint64_t b) const {  // polynomial mult mod (modulus, p)
    std::array<uint64_t, 33> acc{};
    std::array<uint32_t, 17> da{}, db{};
    decode(a, da);
    decode(b, db);
    for (uint32_t i = 0; i < deg; ++i)
      if (da[i])
        for (uint32_t j = 0; j < deg; ++j) acc[i + j] = (acc[i + j] + uint64_t(da[i]) * db[j]) % p;
    for (uint32_t i = 2 * deg - 2; i >= deg && i < 33; --i) {
      uint64_t c = acc[i];
      if (!c) continue;
      for (uint32_t j = 0; j < deg; ++j)
        acc[i - deg + j] = (acc[i - deg + j] + (p - (c * modulus[j]) % p)) % p;
      acc[i] = 0;
    }
    std::array<uint32_t, 17> dr{};
    for (uint32_t i = 0; i < deg; ++i) dr[i] = uint32_t(acc[i]);
    return encode(dr);
  }

  void build_tables() {
    uint64_t q = order();
    if (deg == 1) return;
    if (q > (1u << 20)) throw ring_error("extension field too large for table arithmetic");
    auto t = std::make_shared<Tables>();
    t->q = q;
    t->log.assign(q, 0);
    t->exp.clear();
    // find a generator
    for (uint64_t g = 1; g < q; ++g) {
      if (deg > 1 && g < p) continue;  // a generator must involve the variable unless deg==1
      uint64_t x = 1;
      uint64_t n = 0;
      bool ok = true;
      std::vector<uint64_t> seen;
      seen.reserve(q - 1);
      do {
        seen.push_back(x);
        x = mul_raw(x, g);
        ++n;
        if (n > q) {
          ok = false;
          break;
        }
      } while (x != 1);
      if (ok && n == q - 1) {
        t->exp.assign(seen.begin(), seen.end());
        for (uint64_t i = 0; i + 1 < q; ++i) t->log[t->exp[i]] = uint32_t(i);
        tab_ = std::move(t);
        return;
      }
    }
    throw ring_error("no field generator found (modulus not irreducible?)");
  }

 public:
  GF() = default;
  GF(uint64_t p_, uint32_t deg_ = 1, std::vector<uint32_t> mod = {}) : p(p_), deg(deg_), modulus(std::move(mod)) {
    if (!detail::is_prime_u64(p)) throw ring_error("characteristic is not prime");
    if (p > (uint64_t(1) << 31)) throw ring_error("prime too large");
    if (deg < 1) throw ring_error("bad extension degree");
    if (deg == 1) {
      modulus.clear();
      return;
    }
    if (modulus.empty()) modulus = default_modulus(p, deg);
    if (modulus.size() != deg + 1 || modulus[deg] != 1) throw ring_error("modulus must be monic of the stated degree");
    detail::UPoly f(modulus.begin(), modulus.end());
    if (!detail::upoly_irreducible(f, p)) throw ring_error("modulus is reducible");
    build_tables();
  }

  // F4, F8, F9, F16 use the pinned table; everything else takes the
  // lexicographically least monic irreducible over F_p.
  static std::vector<uint32_t> default_modulus(uint64_t p, uint32_t deg) {
    if (p == 2 && deg == 2) return {1, 1, 1};        // w^2+w+1
    if (p == 2 && deg == 3) return {1, 1, 0, 1};     // u^3+u+1
    if (p == 3 && deg == 2) return {1, 0, 1};        // i^2+1
    if (p == 2 && deg == 4) return {1, 1, 0, 0, 1};  // v^4+v+1
    // smallest monic irreducible in lex order on (c_0, ..., c_{deg-1})
    uint64_t total = 1;
    for (uint32_t i = 0; i < deg; ++i) {
      total *= p;
      if (total > (1u << 24)) throw ring_error("modulus search space too large");
    }
    for (uint64_t code = 0; code < total; ++code) {
      std::vector<uint32_t> f(deg + 1, 0);
      uint64_t c = code;
      for (uint32_t i = 0; i < deg; ++i) {
        f[i] = uint32_t(c % p);
        c /= p;
      }
      f[deg] = 1;
      detail::UPoly g(f.begin(), f.end());
      if (detail::upoly_irreducible(g, p)) return f;
    }
    throw ring_error("no irreducible polynomial found");
  }

  uint64_t order() const {
    uint64_t q = 1;
    for (uint32_t i = 0; i < deg; ++i) q *= p;
    return q;
  }

  template <size_t N>
  void decode(uint64_t a, std::array<uint32_t, N>& out) const {
    for (uint32_t i = 0; i < deg; ++i) {
      out[i] = uint32_t(a % p);
      a /= p;
    }
  }
  template <size_t N>
  uint64_t encode(const std::array<uint32_t, N>& in) const {
    uint64_t a = 0;
    for (uint32_t i = deg; i-- > 0;) a = a * p + in[i];
    return a;
  }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long v) const {
    long long m = v % (long long)p;
    if (m < 0) m += p;
    return Elem(m);
  }
  Elem from_Int(const Int& v) const {
    Int m = v % Int(p);
    if (m < 0) m += p;
    return m.convert_to<uint64_t>();
  }
  Elem add(Elem a, Elem b) const {
    if (deg == 1) {
      uint64_t s = a + b;
      return s >= p ? s - p : s;
    }
    if (p == 2) return a ^ b;
    std::array<uint32_t, 17> da{}, db{};
    decode(a, da);
    decode(b, db);
    for (uint32_t i = 0; i < deg; ++i) {
      da[i] += db[i];
      if (da[i] >= p) da[i] -= uint32_t(p);
    }
    return encode(da);
  }
  Elem neg(Elem a) const {
    if (deg == 1) return a ? p - a : 0;
    if (p == 2) return a;
    std::array<uint32_t, 17> da{};
    decode(a, da);
    for (uint32_t i = 0; i < deg; ++i) da[i] = da[i] ? uint32_t(p) - da[i] : 0;
    return encode(da);
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (deg == 1) return (a * b) % p;  // p < 2^31, no overflow
    if (!a || !b) return 0;
    const auto& t = *tab_;
    uint64_t s = uint64_t(t.log[a]) + t.log[b];
    if (s >= t.q - 1) s -= t.q - 1;
    return t.exp[s];
  }
  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }
  bool is_unit(Elem a) const { return a != 0; }
  Elem inv(Elem a) const {
    if (!a) throw ring_error("division by zero");
    if (deg == 1) {
      // Fermat
      uint64_t r = 1, base = a, e = p - 2;
      while (e) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
      }
      return r;
    }
    const auto& t = *tab_;
    uint64_t l = t.log[a];
    return l == 0 ? 1 : t.exp[t.q - 1 - l];
  }
  Elem exact_div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, uint64_t e) const {
    Elem r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  Elem frobenius(Elem a) const { return pow(a, p); }
  unsigned long characteristic() const { return (unsigned long)p; }
  std::string to_string(Elem a) const { return std::to_string(a); }
  Elem parse(const std::string& s) const {
    Int v = int_from_string(s);
    if (deg == 1) return from_Int(v);
    Int q(order());
    Int m = v % q;
    if (m < 0) m += q;
    uint64_t enc = m.convert_to<uint64_t>();
    return enc;
  }
  bool same(const GF& o) const { return p == o.p && deg == o.deg && modulus == o.modulus; }
  std::string name() const {
    return deg == 1 ? "GF(" + std::to_string(p) + ")" : "GF(" + std::to_string(p) + "^" + std::to_string(deg) + ")";
  }

  // Embedding into an extension whose degree is a multiple of ours: the image
  // of the generator is the least root of our modulus in the target field.
  Elem embed_into(const GF& target, Elem a) const {
    if (target.p != p) throw ring_error("incompatible characteristic");
    if (deg == 1) return target.from_int(long(a));
    if (target.deg % deg != 0) throw ring_error("no field embedding");
    if (target.same(*this)) return a;
    uint64_t root = 0;
    bool found = false;
    for (uint64_t x = 0; x < target.order(); ++x) {
      // evaluate modulus at x
      uint64_t acc = 0;
      for (uint32_t i = deg + 1; i-- > 0;) acc = target.add(target.mul(acc, x), target.from_int(long(modulus[i])));
      if (acc == 0) {
        root = x;
        found = true;
        break;
      }
    }
    if (!found) throw ring_error("modulus has no root in target field");
    std::array<uint32_t, 17> da{};
    decode(a, da);
    uint64_t res = 0, xp = 1;
    for (uint32_t i = 0; i < deg; ++i) {
      res = target.add(res, target.mul(target.from_int(long(da[i])), xp));
      xp = target.mul(xp, root);
    }
    return res;
  }
};

// ---------------------------------------------------------------------------
// Runtime ring description (the JSON surface).
// ---------------------------------------------------------------------------
enum class RingKind { IntegerRing, RationalField, PrimeField, ExtensionField, TruncatedPolyRing };

struct RingSpec {
  RingKind kind = RingKind::IntegerRing;
  uint64_t p = 0;
  uint32_t degree = 1;
  std::shared_ptr<RingSpec> base;       // TruncatedPolyRing only
  std::vector<std::string> tvars;       // TruncatedPolyRing only
  std::vector<uint32_t> caps;           // TruncatedPolyRing only, cap e_i means x_i^{e_i} = 0

  static RingSpec integers() { return RingSpec{}; }
  static RingSpec rationals() {
    RingSpec s;
    s.kind = RingKind::RationalField;
    return s;
  }
  static RingSpec prime_field(uint64_t p) {
    RingSpec s;
    s.kind = RingKind::PrimeField;
    s.p = p;
    return s;
  }
  static RingSpec extension_field(uint64_t p, uint32_t d) {
    RingSpec s;
    s.kind = RingKind::ExtensionField;
    s.p = p;
    s.degree = d;
    if (d < 1 || d > 4) throw ring_error("extension degree must be 1..4");
    return s;
  }
  static RingSpec truncated(RingSpec base, std::vector<std::string> vars, std::vector<uint32_t> caps) {
    if (base.kind == RingKind::TruncatedPolyRing) throw ring_error("nested truncated rings unsupported");
    if (vars.size() != caps.size() || vars.empty()) throw ring_error("truncated ring needs one cap per variable");
    for (auto c : caps)
      if (c < 1) throw ring_error("caps must be >= 1");
    RingSpec s;
    s.kind = RingKind::TruncatedPolyRing;
    s.base = std::make_shared<RingSpec>(std::move(base));
    s.tvars = std::move(vars);
    s.caps = std::move(caps);
    return s;
  }

  bool operator==(const RingSpec& o) const {
    if (kind != o.kind || p != o.p || degree != o.degree || tvars != o.tvars || caps != o.caps) return false;
    if ((base == nullptr) != (o.base == nullptr)) return false;
    if (base && !(*base == *o.base)) return false;
    return true;
  }
};

}  // namespace qf

#endif
