#ifndef QF_UNIVARIATE_HPP
#define QF_UNIVARIATE_HPP

#include "qf/ring.hpp"

namespace qf {

// Small dense univariate helpers over a field (coefficient vector, index =
// degree). Used for binary-form gcds and root multiplicities in the trisecant
// computation.
template <class R>
struct UniPoly {
  std::vector<typename R::Elem> c;

  static UniPoly trim(const R& rg, UniPoly p) {
    while (!p.c.empty() && rg.is_zero(p.c.back())) p.c.pop_back();
    return p;
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return int(c.size()) - 1; }
};

template <class R>
UniPoly<R> uni_divmod(const R& rg, UniPoly<R> a, const UniPoly<R>& b, UniPoly<R>* quot = nullptr) {
  if (b.is_zero()) throw ring_error("univariate division by zero");
  UniPoly<R> q;
  q.c.assign(a.c.size() > b.c.size() ? a.c.size() - b.c.size() + 1 : 1, rg.zero());
  auto binv = rg.inv(b.c.back());
  while (!a.is_zero() && a.c.size() >= b.c.size()) {
    auto f = rg.mul(a.c.back(), binv);
    size_t off = a.c.size() - b.c.size();
    q.c[off] = f;
    for (size_t i = 0; i < b.c.size(); ++i) a.c[off + i] = rg.sub(a.c[off + i], rg.mul(f, b.c[i]));
    a = UniPoly<R>::trim(rg, a);
  }
  if (quot) *quot = UniPoly<R>::trim(rg, q);
  return a;
}

template <class R>
UniPoly<R> uni_gcd(const R& rg, UniPoly<R> a, UniPoly<R> b) {
  a = UniPoly<R>::trim(rg, a);
  b = UniPoly<R>::trim(rg, b);
  while (!b.is_zero()) {
    auto r = uni_divmod(rg, a, b);
    a = b;
    b = r;
  }
  if (!a.is_zero()) {
    auto inv = rg.inv(a.c.back());
    for (auto& x : a.c) x = rg.mul(x, inv);
  }
  return a;
}

template <class R>
typename R::Elem uni_eval(const R& rg, const UniPoly<R>& p, const typename R::Elem& x) {
  auto acc = rg.zero();
  for (size_t i = p.c.size(); i-- > 0;) acc = rg.add(rg.mul(acc, x), p.c[i]);
  return acc;
}

// multiplicity of x as a root (0 when not a root)
template <class R>
unsigned uni_root_multiplicity(const R& rg, UniPoly<R> p, const typename R::Elem& x) {
  unsigned m = 0;
  UniPoly<R> lin;
  lin.c = {rg.neg(x), rg.one()};
  while (!p.is_zero() && rg.is_zero(uni_eval(rg, p, x))) {
    UniPoly<R> q;
    auto r = uni_divmod(rg, p, lin, &q);
    if (!r.is_zero()) break;
    p = q;
    ++m;
  }
  return m;
}

}  // namespace qf

#endif
