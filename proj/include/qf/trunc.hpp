#ifndef QF_TRUNC_HPP
#define QF_TRUNC_HPP

#include "qf/poly.hpp"

namespace qf {

// Quotient of a polynomial ring by the monomial ideal (x_i^{e_i}).
// Elements are polynomials in the truncation variables over the base ring,
// canonically reduced (no term with x_i exponent >= e_i survives).
template <class B>
struct TruncRing {
  using Elem = Poly<B>;
  static constexpr bool is_field = false;

  B base;
  std::vector<std::string> tvars;
  std::vector<uint32_t> caps;

  TruncRing() = default;
  TruncRing(B b, std::vector<std::string> vs, std::vector<uint32_t> cs)
      : base(std::move(b)), tvars(std::move(vs)), caps(std::move(cs)) {
    if (tvars.size() != caps.size() || tvars.empty()) throw ring_error("truncated ring needs one cap per variable");
    for (auto c : caps)
      if (c < 1 || c > 255) throw ring_error("bad truncation cap");
  }

  Elem lift(Poly<B> p) const {
    for (size_t i = 0; i < tvars.size(); ++i) p.set_cap(tvars[i], uint8_t(caps[i]));
    return p;
  }
  Elem zero() const { return lift(Poly<B>::zero(base, tvars)); }
  Elem one() const { return lift(Poly<B>::constant(base, base.one())); }
  Elem from_int(long v) const { return lift(Poly<B>::constant(base, base.from_int(v))); }
  Elem generator(size_t i) const { return lift(Poly<B>::variable(base, tvars, i)); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  bool eq(const Elem& a, const Elem& b) const { return a.equals(b); }

  // units = unit constant part (the truncation variables are nilpotent)
  bool is_unit(const Elem& a) const { return base.is_unit(a.constant_term()); }
  Elem inv(const Elem& a) const {
    auto c = a.constant_term();
    if (!base.is_unit(c)) throw ring_error("non-unit in truncated ring");
    Elem cinv = lift(Poly<B>::constant(base, base.inv(c)));
    Elem n = sub(mul(a, cinv), one());  // nilpotent part scaled
    // 1/(1+n) = 1 - n + n^2 - ... terminates
    Elem acc = one(), pw = one();
    int guard = 0;
    while (true) {
      pw = mul(pw, n);
      if (is_zero(pw)) break;
      acc = (++guard % 2) ? sub(acc, pw) : add(acc, pw);
      if (guard > 512) throw ring_error("inverse did not terminate");
    }
    return mul(acc, cinv);
  }
  Elem exact_div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  unsigned long characteristic() const { return base.characteristic(); }
  std::string to_string(const Elem& a) const { return a.str(); }
  Elem parse(const std::string& s) const { return lift(Poly<B>::constant(base, base.parse(s))); }
  bool same(const TruncRing& o) const { return base.same(o.base) && tvars == o.tvars && caps == o.caps; }
  std::string name() const {
    std::string s = base.name() + "[";
    for (size_t i = 0; i < tvars.size(); ++i) s += (i ? "," : "") + tvars[i];
    s += "]/(";
    for (size_t i = 0; i < tvars.size(); ++i) s += (i ? "," : "") + tvars[i] + "^" + std::to_string(caps[i]);
    return s + ")";
  }
};

}  // namespace qf

#endif
