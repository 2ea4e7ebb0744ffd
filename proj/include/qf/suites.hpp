#ifndef QF_SUITES_HPP
#define QF_SUITES_HPP

#include "qf/arithmetic.hpp"
#include "qf/geometry.hpp"
#include "qf/json_io.hpp"

namespace qf {

// ---------------------------------------------------------------------------
// Named checks grouped into suites; the CLI and the acceptance runner share
// these.
// ---------------------------------------------------------------------------
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteOptions {
  std::string mode = "symbolic";  // or "randomized"
  uint64_t samples = 200;
  uint64_t prime = (uint64_t(1) << 31) - 1;
  uint64_t seed = 20230101;
  uint64_t budget = 0;  // 0 = default / QF_TERM_BUDGET
};

namespace suites {

inline void add(std::vector<CheckResult>& out, std::string name, bool pass, std::string detail = "") {
  out.push_back(CheckResult{std::move(name), pass, std::move(detail)});
}

template <class F>
void guarded(std::vector<CheckResult>& out, const std::string& name, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    add(out, name, false, std::string("error: ") + e.what());
  }
}

// ---- identities ------------------------------------------------------------
inline std::vector<CheckResult> identities(const SuiteOptions& opt) {
  std::vector<CheckResult> out;
  if (opt.mode == "symbolic") {
    guarded(out, "master identity (symbolic)", [&] {
      auto rep = verify_master_identity_symbolic(opt.budget);
      for (const auto& c : rep.checks) add(out, c.identity, c.pass, c.detail);
      add(out, "term budget", !rep.budget_exceeded, std::to_string(rep.term_ops) + " term operations");
    });
    guarded(out, "Theta' = Theta(P') (symbolic)", [&] {
      bool ok = verify_theta_identity_symbolic(opt.budget);
      add(out, "Theta' = Theta(P') over ZZ[a,b,c]", ok, "3x15 polynomial matrix equality");
    });
  } else {
    guarded(out, "master identity (randomized)", [&] {
      auto rep = verify_master_identity_randomized(opt.samples, opt.prime, opt.seed);
      for (const auto& c : rep.checks) add(out, c.identity, c.pass, c.detail);
      add(out, "Schwartz-Zippel bound", true, rep.sz_bound);
    });
  }
  return out;
}

// ---- roundtrip -------------------------------------------------------------
inline std::vector<CheckResult> roundtrip(const SuiteOptions& opt) {
  std::vector<CheckResult> out;
  guarded(out, "split correspondence over ZZ", [&] {
    ZZ rz;
    auto net = split_net(rz);
    add(out, "Phi(nu_spl) = Q_spl over ZZ", phi_from_net(net).Q.equals(split_form(rz).Q));
    add(out, "Psi(Q_spl) = nu_spl over ZZ", net_from_form(split_form(rz)).equals(net));
  });
  guarded(out, "split correspondence over F2", [&] {
    GF f2(2);
    auto net = split_net(f2);
    add(out, "Phi(nu_spl) = Q_spl over F2", phi_from_net(net).Q.equals(split_form(f2).Q));
    add(out, "Psi(Q_spl) = nu_spl over F2", net_from_form(split_form(f2)).equals(net));
  });
  guarded(out, "Phi o Psi over F3 (exhaustive)", [&] {
    GF f3(3);
    uint64_t total = 0, ok = 0, witnessed = 0;
    // all symmetric 3x3 matrices over F3 with det != 0
    for (uint64_t code = 0; code < 729; ++code) {
      uint64_t c = code;
      std::array<uint64_t, 6> e{};
      for (auto& x : e) {
        x = c % 3;
        c /= 3;
      }
      Matrix<GF> Q(f3, 3, 3);
      Q.at(0, 0) = e[0];
      Q.at(1, 1) = e[1];
      Q.at(2, 2) = e[2];
      Q.at(0, 1) = Q.at(1, 0) = e[3];
      Q.at(0, 2) = Q.at(2, 0) = e[4];
      Q.at(1, 2) = Q.at(2, 1) = e[5];
      if (determinant(Q) == 0) continue;
      ++total;
      TernarySymForm<GF> f(f3, Q);
      auto back = phi_from_net(net_from_form(f));
      auto wit = similar_forms(back, f);
      if (wit) {
        ++witnessed;
        // verify the witness exactly
        auto m = wit->T.transpose() * back.Q * wit->T;
        if (m.equals(f.Q.scaled(wit->lambda))) ++ok;
      }
    }
    add(out, "Phi o Psi ~ id over F3",
        total > 0 && ok == total && witnessed == total,
        std::to_string(total) + " non-degenerate forms, " + std::to_string(ok) + " verified witnesses");
  });
  guarded(out, "Phi o Psi on 50 random unimodular integral forms", [&] {
    ZZ rz;
    std::mt19937_64 rng(opt.seed);
    Matrix<ZZ> qspl = split_form(rz).Q;
    Matrix<ZZ> I3 = Matrix<ZZ>::identity(rz, 3);
    int pass = 0;
    for (int s = 0; s < 50; ++s) {
      Matrix<ZZ> E = Matrix<ZZ>::identity(rz, 3);
      for (int k = 0; k < 8; ++k) {
        size_t i = rand_below(rng, 3), j = rand_below(rng, 3);
        if (i == j) continue;
        Matrix<ZZ> el = Matrix<ZZ>::identity(rz, 3);
        el.at(i, j) = long(rand_below(rng, 5)) - 2;
        E = E * el;
      }
      Matrix<ZZ> Q = E.transpose() * (s % 2 ? qspl : I3) * E;
      TernarySymForm<ZZ> f(rz, Q);
      auto back = phi_from_net(net_from_form(f)).Q;
      // exact witness: identity with lambda = +-1
      if (back.equals(Q) || back.equals(Q.neg())) ++pass;
    }
    add(out, "Phi(Psi(Q)) = +-Q for 50 random unimodular Q", pass == 50, std::to_string(pass) + "/50");
  });
  guarded(out, "model consistency (split section)", [&] {
    QQ rq;
    auto sec = grassmannian_section(split_net(rq));
    auto Y = y_split_ideal(rq);
    bool gens_equal = sec.system.equals(Y);
    add(out, "split Pfaffian substitution = Y_spl ideal", gens_equal,
        "five substituted Pfaffians match the printed quadrics");
    add(out, "split section span = Y_spl span", same_quadric_span(sec.system, Y));
    // relations are b14 - b23, b15 - b24, b25 - b34 up to sign/order
    add(out, "split relations", sec.relations.size() == 3);
  });
  return out;
}

// ---- actions ---------------------------------------------------------------
inline std::vector<CheckResult> actions(const SuiteOptions& opt) {
  std::vector<CheckResult> out;
  guarded(out, "sigma multiplicativity", [&] {
    QQ rq;
    std::mt19937_64 rng(opt.seed);
    auto rnd_sl2 = [&]() {
      // random SL2(Q) via integer elementary products
      Matrix<QQ> g = Matrix<QQ>::identity(rq, 2);
      for (int k = 0; k < 4; ++k) {
        Matrix<QQ> el = Matrix<QQ>::identity(rq, 2);
        el.at(k % 2, 1 - k % 2) = Rat(long(rand_below(rng, 7)) - 3);
        g = g * el;
      }
      return g;
    };
    int ok = 0;
    for (int s = 0; s < 100; ++s) {
      auto g = rnd_sl2(), h = rnd_sl2();
      auto gh = g * h;
      auto lhs = sigma_action(rq, g.at(0, 0), g.at(0, 1), g.at(1, 0), g.at(1, 1)) *
                 sigma_action(rq, h.at(0, 0), h.at(0, 1), h.at(1, 0), h.at(1, 1));
      auto rhs = sigma_action(rq, gh.at(0, 0), gh.at(0, 1), gh.at(1, 0), gh.at(1, 1));
      if (proj_matrix_equal(lhs, rhs)) ++ok;
    }
    add(out, "sigma(g)sigma(h) = sigma(gh) up to scalar, 100 random SL2(Q) pairs", ok == 100,
        std::to_string(ok) + "/100");
  });
  guarded(out, "sigma' strict multiplicativity", [&] {
    for (uint64_t qq : {2, 4}) {
      GF F = qq == 2 ? GF(2) : GF(2, 2);
      std::vector<std::array<uint64_t, 4>> sl2;
      for (uint64_t a = 0; a < qq; ++a)
        for (uint64_t b = 0; b < qq; ++b)
          for (uint64_t c = 0; c < qq; ++c)
            for (uint64_t d = 0; d < qq; ++d)
              if (F.sub(F.mul(a, d), F.mul(b, c)) == 1) sl2.push_back({a, b, c, d});
      bool ok = true;
      for (const auto& g : sl2)
        for (const auto& h : sl2) {
          std::array<uint64_t, 4> gh = {F.add(F.mul(g[0], h[0]), F.mul(g[1], h[2])),
                                        F.add(F.mul(g[0], h[1]), F.mul(g[1], h[3])),
                                        F.add(F.mul(g[2], h[0]), F.mul(g[3], h[2])),
                                        F.add(F.mul(g[2], h[1]), F.mul(g[3], h[3]))};
          auto lhs = sigma_prime_action(F, g[0], g[1], g[2], g[3]) * sigma_prime_action(F, h[0], h[1], h[2], h[3]);
          auto rhs = sigma_prime_action(F, gh[0], gh[1], gh[2], gh[3]);
          if (!lhs.equals(rhs)) ok = false;
        }
      add(out, "sigma' strictly multiplicative on SL2(F" + std::to_string(qq) + ")", ok,
          std::to_string(sl2.size()) + " elements, all pairs");
    }
  });
  guarded(out, "quadric span preservation", [&] {
    QQ rq;
    auto Y = y_split_ideal(rq);
    std::mt19937_64 rng(opt.seed + 1);
    int ok = 0;
    for (int s = 0; s < 100; ++s) {
      Matrix<QQ> g = Matrix<QQ>::identity(rq, 2);
      for (int k = 0; k < 4; ++k) {
        Matrix<QQ> el = Matrix<QQ>::identity(rq, 2);
        el.at(k % 2, 1 - k % 2) = Rat(long(rand_below(rng, 7)) - 3);
        g = g * el;
      }
      auto act = sigma_action(rq, g.at(0, 0), g.at(0, 1), g.at(1, 0), g.at(1, 1));
      if (preserves_quadric_span(act, Y)) ++ok;
    }
    add(out, "sigma preserves the quadric span (100 random g)", ok == 100, std::to_string(ok) + "/100");
    GF f2(2);
    auto Y2 = y_split_ideal(f2);
    bool ok2 = true;
    for (uint64_t a = 0; a < 2; ++a)
      for (uint64_t b = 0; b < 2; ++b)
        for (uint64_t c = 0; c < 2; ++c)
          for (uint64_t d = 0; d < 2; ++d) {
            if (f2.sub(f2.mul(a, d), f2.mul(b, c)) != 1) continue;
            if (!preserves_quadric_span(sigma_prime_action(f2, a, b, c, d), Y2)) ok2 = false;
          }
    add(out, "sigma' preserves the quadric span (all of SL2(F2))", ok2);
  });
  guarded(out, "stabilizer equations for the embeddings", [&] {
    // 4.0.5 identically over QQ[a,b,c,d]
    PolyRing<QQ> R(QQ{}, {"a", "b", "c", "d"});
    auto A = embed_pgl2(R, R.variable(0), R.variable(1), R.variable(2), R.variable(3));
    add(out, "embed_pgl2 satisfies 4.0.1 identically over QQ(a,b,c,d)", stabilizer_equations_hold(A));
    // 4.0.6 identically modulo (det - 1) over F2[a,b,c,d]
    PolyRing<GF> R2(GF(2), {"a", "b", "c", "d"});
    auto A2 = embed_sl2_char2(R2, R2.variable(0), R2.variable(1), R2.variable(2), R2.variable(3));
    auto det_rel =
        R2.variable(0) * R2.variable(3) - R2.variable(1) * R2.variable(2) - Poly<GF>::constant(GF(2), GF(2).one());
    auto eqs = stabilizer_equations(GF(2));
    std::map<std::string, Poly<GF>> asg;
    auto vars = stab_vars();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) asg[vars[size_t(i * 3 + j)]] = A2.at(size_t(i), size_t(j));
    bool ok = true;
    for (auto& e : eqs) {
      auto val = e.substitute(asg);
      if (val.is_zero()) continue;
      // must be a multiple of (det - 1)
      try {
        exact_div_poly(val, det_rel);
      } catch (const ring_error&) {
        ok = false;
      }
    }
    add(out, "embed_sl2_char2 satisfies 4.0.1 identically modulo det = 1", ok);
  });
  guarded(out, "stabilizer equations vs form preservation (pointwise)", [&] {
    GF f3(3);
    uint64_t agree = 0, total = 0;
    for (uint64_t code = 0; code < 19683; ++code) {
      uint64_t c = code;
      Matrix<GF> A(f3, 3, 3);
      for (size_t i = 0; i < 9; ++i) {
        A.a[i] = c % 3;
        c /= 3;
      }
      if (determinant(A) == 0) continue;
      ++total;
      bool eqs = stabilizer_equations_hold(A);
      bool pres = form_preservation_scalar(A).has_value();
      if (eqs == pres) ++agree;
    }
    add(out, "4.0.1 <=> form preservation on GL3(F3)", agree == total,
        std::to_string(agree) + "/" + std::to_string(total));
  });
  guarded(out, "characteristic-2 group structure", [&] {
    GF2Trunc R = f1f2_ring();
    auto f1 = R.generator(0), f2 = R.generator(1);
    // H-action fixes the seven listed quadrics
    auto reports = check_h_invariant_quadrics();
    bool all_fixed = true;
    for (const auto& r : reports) all_fixed &= r.fixed;
    add(out, "H-action fixes the seven listed quadrics literally", all_fixed,
        std::to_string(reports.size()) + " quadrics");
    // H and Prop 8.2 and the derivation oracle agree
    GElementChar2 h(R, R.one(), f1, f2, R.one(), f1, f2);
    auto derived = action7_from_pgl3(h.pgl3_matrix());
    add(out, "H-action: Remark 8.4 = Prop 8.2 = derived action",
        proj_matrix_equal(derived, h_action_matrix(R, f1, f2)) && proj_matrix_equal(derived, g_char2_action(h)));
    // K elements square to the identity
    GF2Trunc RK(GF(2), {"f"}, {2});
    auto f = RK.generator(0);
    GElementChar2 kk(RK, RK.one(), f, f, RK.one(), f, f);
    auto M = g_char2_action(kk);
    auto M2 = M * M;
    add(out, "K elements square to the identity", proj_matrix_equal(M2, Matrix<GF2Trunc>::identity(RK, 7)));
    // f1 = f2 = 0 reduces to sigma'
    PolyRing<GF> RP(GF(2), {"a", "b", "c", "d"});
    (void)RP;
    GF f4(2, 2);
    bool red_ok = true;
    GF2Trunc R4(f4, {"f1", "f2"}, {2, 2});
    for (uint64_t a = 0; a < 4 && red_ok; ++a)
      for (uint64_t b = 0; b < 4 && red_ok; ++b)
        for (uint64_t c = 0; c < 4 && red_ok; ++c)
          for (uint64_t d = 0; d < 4 && red_ok; ++d) {
            if (f4.sub(f4.mul(a, d), f4.mul(b, c)) != 1) continue;
            auto lift = [&](uint64_t x) { return R4.lift(Poly<GF>::constant(f4, x)); };
            GElementChar2 g(R4, lift(a), lift(b), lift(c), lift(d), R4.zero(), R4.zero());
            auto act = g_char2_action(g);
            auto sp = sigma_prime_action(f4, a, b, c, d);
            for (size_t i = 0; i < 49 && red_ok; ++i) {
              auto want = R4.lift(Poly<GF>::constant(f4, sp.a[i]));
              if (!R4.eq(act.a[i], want)) red_ok = false;
            }
          }
    add(out, "g_char2_action at f1 = f2 = 0 equals sigma' (all of SL2(F4))", red_ok);
    // derivation oracle matches the printed matrices sigma', sigma
    GF f2f(2);
    bool oracle_ok = true;
    for (uint64_t a = 0; a < 2; ++a)
      for (uint64_t b = 0; b < 2; ++b)
        for (uint64_t c = 0; c < 2; ++c)
          for (uint64_t d = 0; d < 2; ++d) {
            if (f2f.sub(f2f.mul(a, d), f2f.mul(b, c)) != 1) continue;
            auto derived2 = action7_from_pgl3(embed_sl2_char2(f2f, a, b, c, d));
            if (!proj_matrix_equal(derived2, sigma_prime_action(f2f, a, b, c, d))) oracle_ok = false;
          }
    add(out, "derived action = sigma' on SL2(F2)", oracle_ok);
  });
  guarded(out, "sigma denominators", [&] {
    auto m = sigma_symbolic();  // throws if a denominator does not divide 8
    add(out, "sigma entries have denominators dividing 8", true, "validated on construction");
    // identity evaluation
    QQ rq;
    add(out, "sigma(I) = I", sigma_action(rq, Rat(1), Rat(0), Rat(0), Rat(1)).equals(Matrix<QQ>::identity(rq, 7)));
    (void)m;
  });
  guarded(out, "V10 quotient (char 2)", [&] {
    for (uint64_t qq : {2, 4, 8}) {
      GF F = qq == 2 ? GF(2) : (qq == 4 ? GF(2, 2) : GF(2, 3));
      auto V10 = v10_ideal(F);
      SplitModel model(F);
      bool all_in = true, frob_ok = true;
      uint64_t count = 0;
      for_each_proj_point(F, 7, [&](const std::vector<uint64_t>& a) {
        if (!model.on_model(a)) return;
        ++count;
        auto img = v10_quotient_map(F, a);
        if (!membership(F, img, V10)) all_in = false;
        // projection of the image = coordinate squaring
        std::vector<uint64_t> sq(7);
        for (size_t i = 0; i < 7; ++i) sq[i] = F.mul(a[i], a[i]);
        std::vector<uint64_t> proj(img.begin(), img.begin() + 7);
        if (!proj_equal(F, proj, sq)) frob_ok = false;
      });
      add(out, "V10 quotient lands in V10 over F" + std::to_string(qq), all_in, std::to_string(count) + " points");
      add(out, "projection of the quotient = Frobenius over F" + std::to_string(qq), frob_ok);
    }
    // symbolic: the pulled-back V10 generators vanish modulo the Y_spl span
    // (t^2 - mixed is exact on the image by construction; the quadric
    // generators pull back to squares of the Y relations)
    GF f2(2);
    auto Y = y_split_ideal(f2);
    std::vector<std::string> vars = p6_vars();
    std::map<std::string, Poly<GF>> sub;
    for (size_t i = 0; i < 7; ++i) {
      auto v = Poly<GF>::variable(f2, vars, i);
      sub[vars[i]] = v * v;
    }
    auto vv = [&](size_t i) { return Poly<GF>::variable(f2, vars, i); };
    sub["t"] = vv(1) * vv(5) + vv(0) * vv(3) + vv(3) * vv(6);
    auto V10 = v10_ideal(f2);
    bool symbolic_ok = true;
    for (const auto& g : V10.gens) {
      auto pulled = g.substitute(sub);
      // pulled must equal a square combination of the Y generators; in char 2
      // the pullback of each quadric generator is the square of a generator,
      // and the t-generator pulls back to zero
      bool is_zero = pulled.is_zero();
      bool is_square_of_gen = false;
      for (const auto& yg : Y.gens)
        if (pulled.equals(yg * yg)) is_square_of_gen = true;
      if (!(is_zero || is_square_of_gen)) symbolic_ok = false;
    }
    add(out, "V10 pullback lies in the ideal of Y_spl (symbolic)", symbolic_ok);
  });
  guarded(out, "deformation family (char 2)", [&] {
    // printed equations arise from the (corrected) printed net relations
    bool route_ok = true;
    for (uint64_t xi = 0; xi <= 1; ++xi)
      for (uint64_t eta = 0; eta <= 1; ++eta)
        if (!deformed_ideal(xi, eta).equals(deformed_ideal_printed(xi, eta))) route_ok = false;
    add(out, "Pfaffian substitution = printed deformation equations (all xi, eta)", route_ok);
    // t = 0 specializes to Y_spl
    auto d00 = deformed_ideal(0, 0);
    GF2Trunc R = dual_numbers_f2();
    auto Y = y_split_ideal(R);
    add(out, "deformation at (0,0) = Y_spl over F2", d00.equals(Y));
    // the deformed form's net produces the same linear relations
    bool net_ok = true;
    for (uint64_t xi = 0; xi <= 1 && net_ok; ++xi)
      for (uint64_t eta = 0; eta <= 1 && net_ok; ++eta) {
        auto net = net_from_form(deformed_form(xi, eta));
        auto L = net_linear_coefficients(net);
        // each printed relation must be a row of the coefficient matrix (the
        // alpha/beta/gamma equations in some order, up to sign = identity in
        // char 2)
        auto rels = deformed_net_relations(xi, eta);
        for (const auto& rel : rels) {
          bool found = false;
          for (size_t r_ = 0; r_ < 3; ++r_) {
            Poly<GF2Trunc> row = Poly<GF2Trunc>::zero(R, plucker_vars());
            for (size_t c_ = 0; c_ < 10; ++c_)
              if (!R.is_zero(L.at(r_, c_)))
                row = row + Poly<GF2Trunc>::variable(R, plucker_vars(), c_).scaled(L.at(r_, c_));
            if (row.equals(rel)) found = true;
          }
          if (!found) net_ok = false;
        }
      }
    add(out, "Psi(deformed form) has the printed net relations", net_ok);
  });
  return out;
}

// ---- geometry --------------------------------------------------------------
inline GF field_of_order(uint64_t q) {
  for (uint64_t p : {2, 3, 5, 7}) {
    uint64_t v = q;
    uint32_t d = 0;
    while (v % p == 0) {
      v /= p;
      ++d;
    }
    if (v == 1 && d >= 1) return d == 1 ? GF(p) : GF(p, d);
  }
  throw ring_error("unsupported field order " + std::to_string(q));
}

inline std::vector<CheckResult> geometry(const SuiteOptions&) {
  std::vector<CheckResult> out;
  guarded(out, "point counts", [&] {
    for (uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
      GF F = field_of_order(q);
      auto rep = census(F, false);
      uint64_t expect = 1 + q + q * q + q * q * q;
      add(out, "#Y(F" + std::to_string(q) + ") = " + std::to_string(expect), rep.total == expect,
          "counted " + std::to_string(rep.total));
    }
  });
  guarded(out, "orbit representatives classify as printed", [&] {
    for (uint64_t q : {3, 5}) {
      GF F = field_of_order(q);
      PointClassifier cls(F);
      bool ok = cls.classify({0, 1, 0, 0, 0, 1, 0}) == OrbitLabel::O3 &&
                cls.classify({0, 0, 0, 0, 0, 1, 0}) == OrbitLabel::O2 &&
                cls.classify({0, 0, 0, 0, 0, 0, 1}) == OrbitLabel::O1;
      add(out, "representatives over F" + std::to_string(q), ok);
    }
    for (uint64_t q : {2, 4}) {
      GF F = field_of_order(q);
      PointClassifier cls(F);
      bool ok = cls.classify({1, 0, 0, 1, 0, 0, 1}) == OrbitLabel::O3 &&
                cls.classify({0, 0, 0, 0, 0, 1, 1}) == OrbitLabel::O2 &&
                cls.classify({0, 0, 0, 0, 0, 0, 1}) == OrbitLabel::O1 &&
                cls.classify({0, 0, 0, 0, 0, 1, 0}) == OrbitLabel::O1prime;
      add(out, "representatives over F" + std::to_string(q) + " (char 2)", ok);
    }
  });
  guarded(out, "orbit/line tables", [&] {
    for (uint64_t q : {2, 3, 4, 5}) {
      GF F = field_of_order(q);
      auto rep = census(F, true);
      bool ok = rep.line_profiles_uniform;
      std::string detail;
      for (auto& [label, profs] : rep.line_profiles) {
        OrbitLabel ol = label == "O3"   ? OrbitLabel::O3
                        : label == "O2" ? OrbitLabel::O2
                        : label == "O1" ? OrbitLabel::O1
                                        : OrbitLabel::O1prime;
        for (auto& [profile, count] : profs) {
          if (profile != expected_line_profile(ol)) ok = false;
          detail += label + ":" + profile + " ";
        }
      }
      add(out, "line counts per orbit over F" + std::to_string(q), ok, detail);
    }
  });
  guarded(out, "D separates O3", [&] {
    for (uint64_t q : {3, 5}) {
      GF F = field_of_order(q);
      PointClassifier cls(F);
      SplitModel model(F);
      bool ok = true;
      for_each_proj_point(F, 7, [&](const std::vector<uint64_t>& a) {
        if (!model.on_model(a)) return;
        bool onD = model.divisor_D(a) == 0;
        if (onD == (cls.classify(a) == OrbitLabel::O3)) ok = false;
      });
      add(out, "D = 0 exactly off O3 over F" + std::to_string(q), ok);
    }
    for (uint64_t q : {2, 4}) {
      GF F = field_of_order(q);
      PointClassifier cls(F);
      SplitModel model(F);
      bool ok = true;
      for_each_proj_point(F, 7, [&](const std::vector<uint64_t>& a) {
        if (!model.on_model(a)) return;
        if ((a[3] == 0) == (cls.classify(a) == OrbitLabel::O3)) ok = false;
      });
      add(out, "a3 = 0 exactly off O3 over F" + std::to_string(q) + " (char 2)", ok);
    }
  });
  guarded(out, "normalization nu (char != 2)", [&] {
    for (uint64_t q : {3, 5}) {
      GF F = field_of_order(q);
      PointClassifier cls(F);
      SplitModel model(F);
      std::set<std::vector<uint64_t>> image, diag_image, D_points, O2_points, O1_points;
      std::map<std::vector<uint64_t>, unsigned> fibers;
      for_each_proj_point(F, 2, [&](const std::vector<uint64_t>& P) {
        for_each_proj_point(F, 2, [&](const std::vector<uint64_t>& Q) {
          auto img = normalize_point(F, nu_map(F, P[0], P[1], Q[0], Q[1]));
          image.insert(img);
          ++fibers[img];
          if (P == Q) diag_image.insert(img);
        });
      });
      for_each_proj_point(F, 7, [&](const std::vector<uint64_t>& a) {
        if (!model.on_model(a)) return;
        if (model.divisor_D(a) != 0) return;
        D_points.insert(normalize_point(F, a));
        if (cls.classify(a) == OrbitLabel::O2) O2_points.insert(normalize_point(F, a));
        if (cls.classify(a) == OrbitLabel::O1) O1_points.insert(normalize_point(F, a));
      });
      bool onto = image == D_points;
      bool diag_to_O1 = diag_image == O1_points;
      bool off_diag_behavior = true;
      for (const auto& [img, count] : fibers) {
        if (O1_points.count(img)) {
          if (count != 1) off_diag_behavior = false;  // diagonal point, injective there
        } else if (O2_points.count(img)) {
          if (count != 1) off_diag_behavior = false;  // nu is injective off the diagonal
        }
      }
      add(out, "nu is onto D(F" + std::to_string(q) + ")", onto,
          std::to_string(image.size()) + " image points, " + std::to_string(D_points.size()) + " D points");
      add(out, "nu maps the diagonal onto O1 over F" + std::to_string(q), diag_to_O1);
      add(out,
          "nu pairs {(P,Q),(Q,P)} 2-to-1 onto ordinary-line traces over F" + std::to_string(q) +
              " (fiber sizes: injective parameterization, swapped pairs give the two points of L cap D)",
          off_diag_behavior);
    }
  });
  guarded(out, "normalization nu' (char 2)", [&] {
    for (uint64_t q : {2, 4, 8}) {
      GF F = field_of_order(q);
      SplitModel model(F);
      std::set<std::vector<uint64_t>> image, Dred;
      uint64_t domain = 0;
      bool injective = true;
      for_each_proj_point(F, 3, [&](const std::vector<uint64_t>& xyz) {
        if (xyz[0] == 0 && xyz[1] == 0) return;  // blown-up center
        ++domain;
        auto img = normalize_point(F, nu_prime_map(F, xyz[0], xyz[1], xyz[2]));
        if (!image.insert(img).second) injective = false;
      });
      for_each_proj_point(F, 2, [&](const std::vector<uint64_t>& xy) {
        ++domain;
        auto img = normalize_point(F, nu_prime_exceptional(F, xy[0], xy[1]));
        if (!image.insert(img).second) injective = false;
      });
      for_each_proj_point(F, 7, [&](const std::vector<uint64_t>& a) {
        if (!model.on_model(a) || a[3] != 0) return;
        Dred.insert(normalize_point(F, a));
      });
      add(out, "nu' is a bijection onto D_red(F" + std::to_string(q) + ")", injective && image == Dred,
          std::to_string(domain) + " domain points, " + std::to_string(Dred.size()) + " target points");
    }
  });
  guarded(out, "trisecant worked examples", [&] {
    // characteristic != 2 example (rational)
    auto tri = trisecant_points_rational({Rat(0), Rat(-4), Rat(0), Rat(0), Rat(0), Rat(1), Rat(0)});
    auto has_img = [&](std::vector<long> w) {
      QQ rq;
      std::vector<Rat> ww;
      for (long x : w) ww.push_back(Rat(x));
      for (const auto& t : tri)
        if (proj_equal(rq, t.image, ww) && t.multiplicity == 1) return true;
      return false;
    };
    bool ok = tri.size() == 3 && has_img({0, 0, 1, 0, 0}) && has_img({4, 0, -2, 0, 1}) && has_img({4, 0, 2, 0, 1});
    add(out, "trisecant of (0,-4,0,0,0,1,0): the three printed points", ok);
    // characteristic 2 example with omega
    GF f2(2);
    auto tri2 = trisecant_points(f2, {1, 0, 0, 1, 0, 0, 1});
    GF f4(2, 2);
    uint64_t w = 2;  // the generator of F4: w^2 + w + 1 = 0
    uint64_t w2 = f4.mul(w, w);
    auto has4 = [&](std::vector<uint64_t> pt) {
      for (const auto& t : tri2) {
        if (t.field_degree == 1) {
          std::vector<uint64_t> img4;
          for (auto x : t.image) img4.push_back(f2.embed_into(f4, x));
          if (proj_equal(f4, img4, pt)) return true;
        } else if (t.field_degree == 2) {
          if (proj_equal(f4, t.image, pt)) return true;
        }
      }
      return false;
    };
    bool ok2 = tri2.size() == 3 && has4({1, 1, 0, 1, 1}) && has4({w2, w, 0, w2, w}) && has4({w, w2, 0, w, w2});
    add(out, "trisecant of (1,0,0,1,0,0,1) over F2: the three printed F4 points", ok2,
        "with omega^2 + omega + 1 = 0");
  });
  guarded(out, "trisecant multiplicity profiles", [&] {
    for (uint64_t q : {2, 3, 4, 5}) {
      GF F = field_of_order(q);
      PointClassifier cls(F);
      SplitModel model(F);
      bool ok = true;
      std::string bad;
      for_each_proj_point(F, 7, [&](const std::vector<uint64_t>& a) {
        if (!model.on_model(a) || !ok) return;
        auto label = cls.classify(a);
        auto tri = trisecant_points(F, a);
        std::multiset<unsigned> profile;
        for (const auto& t : tri) profile.insert(t.multiplicity);
        std::multiset<unsigned> want;
        switch (label) {
          case OrbitLabel::O3: want = {1, 1, 1}; break;
          case OrbitLabel::O2: want = {1, 2}; break;
          case OrbitLabel::O1: want = {3}; break;
          case OrbitLabel::O1prime: want = {1, 2}; break;
        }
        if (profile != want) {
          ok = false;
          bad = to_string(label);
          return;
        }
        // support conditions
        for (const auto& t : tri) {
          GF Fk = extension_of(F, t.field_degree);
          const auto& s = t.source;
          if (F.p != 2) {
            auto conic = Fk.sub(Fk.mul(s[2], s[2]), Fk.mul(Fk.from_int(2), Fk.mul(s[0], s[1])));
            bool onC = conic == 0;
            bool want_onC = (label == OrbitLabel::O1) || (label == OrbitLabel::O2 && t.multiplicity == 2);
            if (label == OrbitLabel::O3) want_onC = false;
            if (onC != want_onC) ok = false;
          } else {
            bool z0 = s[2] == 0;
            bool center = (s[0] == 0 && s[1] == 0);
            switch (label) {
              case OrbitLabel::O3:
                if (z0 || center) ok = false;
                break;
              case OrbitLabel::O2:
                if (t.multiplicity == 2 && !z0) ok = false;
                if (t.multiplicity == 1 && z0) ok = false;
                break;
              case OrbitLabel::O1:
                if (!z0) ok = false;
                break;
              case OrbitLabel::O1prime:
                if (t.multiplicity == 2 && !center) ok = false;
                if (t.multiplicity == 1 && !(z0 && !center)) ok = false;
                break;
            }
          }
        }
      });
      add(out, "multiplicity profiles over F" + std::to_string(q), ok, ok ? "" : ("first failure on " + bad));
    }
  });
  guarded(out, "sigma orbits on the Hilbert scheme of lines", [&] {
    for (uint64_t q : {3, 5}) {
      auto rep = sigma_orbits_on_lines(field_of_order(q));
      bool ok = rep.closed_under_group && rep.parts.count("V(z^2-2xy)") && rep.parts.count("open");
      uint64_t conic = rep.parts.count("V(z^2-2xy)") ? rep.parts.at("V(z^2-2xy)").size() : 0;
      add(out, "two orbits on P^2(F" + std::to_string(q) + "), conic has q+1 points", ok && conic == q + 1,
          std::to_string(conic) + " conic points");
    }
    for (uint64_t q : {2, 4}) {
      auto rep = sigma_orbits_on_lines(field_of_order(q));
      bool ok = rep.closed_under_group && rep.parts.count("{(0,0,1)}") && rep.parts.count("V(z)") &&
                rep.parts.count("open");
      add(out, "three orbits on P^2(F" + std::to_string(q) + ") (char 2)", ok);
    }
  });
  guarded(out, "lines from net points match Prop 5.7", [&] {
    GF f5(5), f2(2);
    auto n5 = split_net(f5), n2 = split_net(f2);
    auto l1 = line_from_net_point(n5, f5.zero(), f5.one(), f5.zero());
    auto span_eq = [&](const GF& F, const LineInY<GF>& l, std::vector<uint64_t> a, std::vector<uint64_t> b) {
      auto key1 = detail::line_key(F, l.p0, l.p1);
      auto key2 = detail::line_key(F, a, b);
      return key1 == key2;
    };
    add(out, "l_(0,1,0) = {(0,0,0,0,0,s,t)}",
        span_eq(f5, l1, {0, 0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 0, 1}) && l1.type == LineType::special);
    auto l2 = line_from_net_point(n5, f5.zero(), f5.zero(), f5.one());
    add(out, "l_(0,0,1) = {(0,s,0,0,0,t,0)}",
        span_eq(f5, l2, {0, 1, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 1, 0}) && l2.type == LineType::ordinary);
    auto l3 = line_from_net_point(n2, f2.one(), f2.one(), f2.one());
    add(out, "l_(1,1,1) = {(s,t,t,s+t,t,t,s)} (char 2)",
        span_eq(f2, l3, {1, 0, 0, 1, 0, 0, 1}, {0, 1, 1, 1, 1, 1, 0}) && l3.type == LineType::ordinary);
  });
  return out;
}

// ---- arithmetic ------------------------------------------------------------
inline std::vector<CheckResult> arithmetic(const SuiteOptions& opt) {
  std::vector<CheckResult> out;
  guarded(out, "hilbert symbol vs solubility oracle", [&] {
    std::mt19937_64 rng(opt.seed);
    std::vector<long> primes = {2, 3, 5, 7, 11, 13};
    int agree = 0, total = 0;
    for (int s = 0; s < 500; ++s) {
      auto gen = [&]() {
        long v = (rng() & 1) ? 1 : -1;
        for (long p : primes)
          if (rand_below(rng, 3) == 0) v *= p;
        return v;
      };
      long a = gen(), b = gen();
      size_t vi = size_t(rand_below(rng, primes.size() + 1));
      Place v = vi == primes.size() ? Place::real() : Place::finite(primes[vi]);
      ++total;
      if ((hilbert_symbol(Rat(a), Rat(b), v) == 1) == conic_solvable_mod_oracle(a, b, v)) ++agree;
    }
    add(out, "symbol = oracle on 500 random (a, b, v)", agree == total, std::to_string(agree) + "/500");
  });
  guarded(out, "product formula", [&] {
    std::mt19937_64 rng(opt.seed + 7);
    int ok = 0, total = 0;
    for (int s = 0; s < 200; ++s) {
      long a = long(rand_below(rng, 400)) - 200;
      long b = long(rand_below(rng, 400)) - 200;
      if (!a || !b) continue;
      ++total;
      int prod = hilbert_symbol(Rat(a), Rat(b), Place::real());
      // support: 2 and odd primes dividing ab
      prod *= hilbert_symbol(Rat(a), Rat(b), Place::finite(2));
      long n = std::abs(a) * std::abs(b);
      for (long p = 3; p * p <= n; p += 2) {
        if (n % p) continue;
        prod *= hilbert_symbol(Rat(a), Rat(b), Place::finite(p));
        while (n % p == 0) n /= p;
      }
      if (n > 2) prod *= hilbert_symbol(Rat(a), Rat(b), Place::finite(n));
      if (prod == 1) ++ok;
    }
    add(out, "product over the support is 1 on 200 random pairs", ok == total,
        std::to_string(ok) + "/" + std::to_string(total));
  });
  guarded(out, "local classes", [&] {
    auto Qspl = rational_matrix(split_form(ZZ{}).Q);
    bool split_everywhere = local_class(Qspl, Place::real()) == LocalClass::split;
    for (long p : {2, 3, 5, 7, 11, 13, 17})
      split_everywhere &= local_class(Qspl, Place::finite(p)) == LocalClass::split;
    add(out, "Q_spl is split at every place", split_everywhere);
    QQ rq;
    Matrix<QQ> I3 = Matrix<QQ>::identity(rq, 3);
    add(out, "diag(1,1,1) is nonsplit at oo and 2",
        local_class(I3, Place::real()) == LocalClass::nonsplit &&
            local_class(I3, Place::finite(2)) == LocalClass::nonsplit);
    add(out, "good reduction is automatic at 2", good_reduction(I3, 2));
  });
  guarded(out, "shafarevich counts", [&] {
    for (std::set<Int> S : std::vector<std::set<Int>>{{}, {3}, {3, 5}, {3, 5, 7, 11}}) {
      auto rep = shafarevich_count(S);
      std::string name = "S = {";
      for (const auto& p : S) name += p.str() + ",";
      name += "}";
      // patterns pairwise distinct: guaranteed by subset enumeration; verify
      std::set<std::set<Place>> patterns;
      for (const auto& e : rep.entries) patterns.insert(e.pattern.support);
      bool distinct = patterns.size() == rep.entries.size();
      add(out, "#Shaf for " + name + " = " + std::to_string(rep.count),
          rep.entries.size() == rep.count && rep.all_verified && distinct,
          "all representatives verified, patterns pairwise distinct");
    }
  });
  guarded(out, "Z-classification", [&] {
    ZZ rz;
    add(out, "Q_spl is the split-model class", z_classification(split_form(rz)) == ZClass::split_model);
    Matrix<ZZ> I3 = Matrix<ZZ>::identity(rz, 3);
    add(out, "diag(1,1,1) is the definite class",
        z_classification(TernarySymForm<ZZ>(rz, I3)) == ZClass::definite);
    Matrix<ZZ> mI3 = I3.neg();
    add(out, "diag(-1,-1,-1) is the definite class",
        z_classification(TernarySymForm<ZZ>(rz, mI3)) == ZClass::definite);
  });
  guarded(out, "good reduction away from the discriminant", [&] {
    // unimodular integral forms reduce to split forms at odd p
    std::mt19937_64 rng(opt.seed + 11);
    ZZ rz;
    Matrix<ZZ> qspl = split_form(rz).Q;
    bool ok = true;
    for (int s = 0; s < 20 && ok; ++s) {
      Matrix<ZZ> E = Matrix<ZZ>::identity(rz, 3);
      for (int k = 0; k < 6; ++k) {
        size_t i = rand_below(rng, 3), j = rand_below(rng, 3);
        if (i == j) continue;
        Matrix<ZZ> el = Matrix<ZZ>::identity(rz, 3);
        el.at(i, j) = long(rand_below(rng, 3)) - 1;
        E = E * el;
      }
      Matrix<ZZ> Q = E.transpose() * qspl * E;
      for (long p : {3, 5, 7}) ok &= good_reduction(rational_matrix(Q), p);
    }
    add(out, "unimodular forms have good reduction at odd p", ok);
  });
  return out;
}

}  // namespace suites

inline std::vector<CheckResult> run_suite(const std::string& name, const SuiteOptions& opt) {
  if (name == "identities") return suites::identities(opt);
  if (name == "roundtrip") return suites::roundtrip(opt);
  if (name == "actions") return suites::actions(opt);
  if (name == "geometry") return suites::geometry(opt);
  if (name == "arithmetic") return suites::arithmetic(opt);
  if (name == "all") {
    std::vector<CheckResult> out;
    for (const char* s : {"identities", "roundtrip", "actions", "geometry", "arithmetic"}) {
      auto part = run_suite(s, opt);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  throw ring_error("unknown suite: " + name);
}

}  // namespace qf

#endif
