#ifndef QF_JSON_IO_HPP
#define QF_JSON_IO_HPP

#include <json.hpp>

#include "qf/forms.hpp"
#include "qf/trunc.hpp"

namespace qf {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// RingSpec <-> JSON
//   {"kind": "IntegerRing"}
//   {"kind": "RationalField"}
//   {"kind": "PrimeField", "p": 5}
//   {"kind": "ExtensionField", "p": 2, "degree": 2}
//   {"kind": "TruncatedPolyRing", "base": {...}, "vars": [...], "caps": {...}}
// ---------------------------------------------------------------------------
inline Json ring_to_json(const RingSpec& s) {
  Json j;
  switch (s.kind) {
    case RingKind::IntegerRing: j["kind"] = "IntegerRing"; break;
    case RingKind::RationalField: j["kind"] = "RationalField"; break;
    case RingKind::PrimeField:
      j["kind"] = "PrimeField";
      j["p"] = s.p;
      break;
    case RingKind::ExtensionField:
      j["kind"] = "ExtensionField";
      j["p"] = s.p;
      j["degree"] = s.degree;
      break;
    case RingKind::TruncatedPolyRing: {
      j["kind"] = "TruncatedPolyRing";
      j["base"] = ring_to_json(*s.base);
      j["vars"] = s.tvars;
      Json caps = Json::object();
      for (size_t i = 0; i < s.tvars.size(); ++i) caps[s.tvars[i]] = s.caps[i];
      j["caps"] = caps;
      break;
    }
  }
  return j;
}

inline RingSpec ring_from_json(const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "IntegerRing") return RingSpec::integers();
  if (kind == "RationalField") return RingSpec::rationals();
  if (kind == "PrimeField") return RingSpec::prime_field(j.at("p").get<uint64_t>());
  if (kind == "ExtensionField")
    return RingSpec::extension_field(j.at("p").get<uint64_t>(), j.at("degree").get<uint32_t>());
  if (kind == "TruncatedPolyRing") {
    RingSpec base = ring_from_json(j.at("base"));
    std::vector<std::string> vars = j.at("vars").get<std::vector<std::string>>();
    std::vector<uint32_t> caps;
    for (const auto& v : vars) caps.push_back(j.at("caps").at(v).get<uint32_t>());
    return RingSpec::truncated(std::move(base), std::move(vars), std::move(caps));
  }
  throw ring_error("unknown ring kind: " + kind);
}

// dispatch a generic callable over the concrete ring of a RingSpec
template <class F>
auto dispatch_ring(const RingSpec& s, F&& f) {
  switch (s.kind) {
    case RingKind::IntegerRing: return f(ZZ{});
    case RingKind::RationalField: return f(QQ{});
    case RingKind::PrimeField: return f(GF(s.p));
    case RingKind::ExtensionField: return f(GF(s.p, s.degree));
    case RingKind::TruncatedPolyRing: {
      const RingSpec& b = *s.base;
      if (b.kind == RingKind::IntegerRing) return f(TruncRing<ZZ>(ZZ{}, s.tvars, s.caps));
      if (b.kind == RingKind::RationalField) return f(TruncRing<QQ>(QQ{}, s.tvars, s.caps));
      if (b.kind == RingKind::PrimeField) return f(TruncRing<GF>(GF(b.p), s.tvars, s.caps));
      if (b.kind == RingKind::ExtensionField) return f(TruncRing<GF>(GF(b.p, b.degree), s.tvars, s.caps));
      throw ring_error("unsupported truncated base ring");
    }
  }
  throw ring_error("unknown ring kind");
}

// ---------------------------------------------------------------------------
// Coefficient strings: decimal (ZZ, GF via the base-p positional encoding) or
// "num/den" (QQ). Truncated-ring elements are polynomial objects.
// ---------------------------------------------------------------------------
template <class R>
Json coeff_to_json(const R& rg, const typename R::Elem& e) {
  return Json(rg.to_string(e));
}

template <class R>
typename R::Elem coeff_from_json(const R& rg, const Json& j) {
  return rg.parse(j.get<std::string>());
}

// ---------------------------------------------------------------------------
// Polynomial <-> JSON:
// {"vars": [...], "terms": [[[e1,...,en], "coeff"], ...]} with terms in the
// canonical grlex-descending order (bit-exact round trip).
// ---------------------------------------------------------------------------
template <class R>
Json poly_to_json(const Poly<R>& p) {
  Json terms = Json::array();
  for (const auto& t : p.terms) {
    Json exps = Json::array();
    for (size_t i = 0; i < p.vars.size(); ++i) exps.push_back(unsigned(t.m.e[i]));
    terms.push_back(Json::array({exps, coeff_to_json(p.ring, t.c)}));
  }
  Json j;
  j["vars"] = p.vars;
  j["terms"] = terms;
  return j;
}

template <class R>
Poly<R> poly_from_json(const R& rg, const Json& j) {
  Poly<R> p(rg, j.at("vars").get<std::vector<std::string>>());
  for (const auto& t : j.at("terms")) {
    const auto& exps = t.at(0);
    typename Poly<R>::Term term;
    if (exps.size() != p.vars.size()) throw ring_error("exponent vector length mismatch");
    unsigned deg = 0;
    for (size_t i = 0; i < p.vars.size(); ++i) {
      unsigned e = exps[i].get<unsigned>();
      if (e > 255) throw ring_error("exponent too large (max 255)");
      term.m.e[i] = uint8_t(e);
      deg += e;
    }
    term.m.deg = uint16_t(deg);
    term.c = coeff_from_json(rg, t.at(1));
    p.terms.push_back(std::move(term));
  }
  p.normalize();
  return p;
}

// ---------------------------------------------------------------------------
// Matrix <-> JSON: {"rows": r, "cols": c, "entries": [...]} row-major.
// ---------------------------------------------------------------------------
template <class R>
Json matrix_to_json(const Matrix<R>& m) {
  Json entries = Json::array();
  for (const auto& e : m.a) entries.push_back(coeff_to_json(m.ring, e));
  Json j;
  j["rows"] = m.r;
  j["cols"] = m.c;
  j["entries"] = entries;
  return j;
}

template <class R>
Matrix<R> matrix_from_json(const R& rg, const Json& j) {
  Matrix<R> m(rg, j.at("rows").get<size_t>(), j.at("cols").get<size_t>());
  const auto& entries = j.at("entries");
  if (entries.size() != m.a.size()) throw ring_error("entry count mismatch");
  for (size_t i = 0; i < m.a.size(); ++i) m.a[i] = coeff_from_json(rg, entries[i]);
  return m;
}

// nets and forms carry their ring spec
template <class R>
Json net_to_json(const RingSpec& spec, const AlternatingNet<R>& n) {
  Json j;
  j["ring"] = ring_to_json(spec);
  j["A"] = matrix_to_json(n.A);
  j["B"] = matrix_to_json(n.B);
  j["C"] = matrix_to_json(n.C);
  return j;
}

template <class R>
AlternatingNet<R> net_from_json(const R& rg, const Json& j) {
  return AlternatingNet<R>(rg, matrix_from_json(rg, j.at("A")), matrix_from_json(rg, j.at("B")),
                           matrix_from_json(rg, j.at("C")));
}

template <class R>
Json form_to_json(const RingSpec& spec, const TernarySymForm<R>& q) {
  Json j;
  j["ring"] = ring_to_json(spec);
  j["Q"] = matrix_to_json(q.Q);
  return j;
}

template <class R>
TernarySymForm<R> form_from_json(const R& rg, const Json& j) {
  return TernarySymForm<R>(rg, matrix_from_json(rg, j.at("Q")));
}

}  // namespace qf

#endif
