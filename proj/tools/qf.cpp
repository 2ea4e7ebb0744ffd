// Command-line front end: verification suites, censuses, correspondence
// transforms, group actions and arithmetic queries on the quintic del Pezzo
// classification machinery.
//
// Exit codes: 0 = all checks pass, 1 = a mathematical check failed,
// 2 = usage or input error.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>

#include "qf/report.hpp"

using namespace qf;

namespace {

int emit(const Report& rep, bool json, double seconds) {
  if (json)
    std::cout << rep.to_json().dump(2) << "\n";
  else
    std::cout << rep.human(seconds);
  return rep.pass() ? 0 : 1;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else
      cur += c;
  }
  out.push_back(cur);
  return out;
}

GF field_for_q(uint64_t q) {
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

RingSpec parse_ring_shorthand(const std::string& s) {
  if (s == "ZZ" || s == "Z") return RingSpec::integers();
  if (s == "QQ" || s == "Q") return RingSpec::rationals();
  if (!s.empty() && s[0] == 'F') {
    uint64_t q = std::stoull(s.substr(1));
    for (uint64_t p : {2, 3, 5, 7, 11, 13}) {
      uint64_t v = q;
      uint32_t d = 0;
      while (v % p == 0) {
        v /= p;
        ++d;
      }
      if (v == 1 && d >= 1) return d == 1 ? RingSpec::prime_field(p) : RingSpec::extension_field(p, d);
    }
  }
  if (!s.empty() && s[0] == '{') return ring_from_json(Json::parse(s));
  throw ring_error("cannot parse ring '" + s + "' (use ZZ, QQ, F<q> or a ring JSON object)");
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ring_error("cannot open " + path);
  return Json::parse(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact classification machinery for quintic del Pezzo threefolds"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "emit machine-readable JSON on stdout");

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite = "all", mode = "symbolic";
  uint64_t samples = 200, seed = 20230101, budget = 0, prime = (uint64_t(1) << 31) - 1;
  verify->add_option("--suite", suite, "identities|roundtrip|actions|geometry|arithmetic|all")
      ->check(CLI::IsMember({"identities", "roundtrip", "actions", "geometry", "arithmetic", "all"}));
  verify->add_option("--mode", mode, "symbolic|randomized")->check(CLI::IsMember({"symbolic", "randomized"}));
  verify->add_option("--samples", samples, "randomized-mode sample count (> 0)");
  verify->add_option("--seed", seed, "PRNG seed (fixed default for reproducibility)");
  verify->add_option("--budget", budget, "term-operation budget (0 = QF_TERM_BUDGET or 1e8)");
  verify->add_option("--prime", prime, "randomized-mode prime (default 2^31 - 1)");

  // ---- correspond ----
  auto* correspond = app.add_subcommand("correspond", "apply Phi (net2form) or Psi (form2net)");
  std::string dir, in_path, out_path;
  correspond->add_option("--dir", dir, "net2form|form2net")->required()->check(CLI::IsMember({"net2form", "form2net"}));
  correspond->add_option("--in", in_path, "input JSON file")->required();
  correspond->add_option("--out", out_path, "output JSON file");

  // ---- census ----
  auto* censusc = app.add_subcommand("census", "point/orbit/line census of Y_spl(F_q)");
  uint64_t census_q = 3;
  bool census_lines = false;
  censusc->add_option("--q", census_q, "field order (<= 9)")->required();
  censusc->add_flag("--lines", census_lines, "include per-orbit line profiles (q <= 5)");

  // ---- lines ----
  auto* linesc = app.add_subcommand("lines", "lines through a point of Y_spl(F_q)");
  std::string point_str;
  uint64_t lines_q = 2;
  linesc->add_option("--point", point_str, "comma-separated coordinates a0,...,a6")->required();
  linesc->add_option("--q", lines_q, "field order")->required();

  // ---- trisecant ----
  auto* tric = app.add_subcommand("trisecant", "trisecant intersection with the projected Veronese surface");
  std::string tri_point;
  uint64_t tri_q = 0;
  bool tri_rational = false;
  tric->add_option("--point", tri_point, "comma-separated coordinates a0,...,a6")->required();
  tric->add_option("--q", tri_q, "field order (finite-field mode)");
  tric->add_flag("--rational", tri_rational, "work over QQ (rational intersections only)");

  // ---- act ----
  auto* actc = app.add_subcommand("act", "apply a symmetry to a point");
  int act_char = 0;
  std::string act_g, act_point;
  actc->add_option("--char", act_char, "0 (sigma over QQ) or 2 (char-2 group)")->required();
  actc->add_option("--g", act_g, "a,b,c,d (char 0 rationals / char 2 bits) with optional ,f1,f2 bits")->required();
  actc->add_option("--point", act_point, "comma-separated coordinates a0,...,a6")->required();

  // ---- split-model ----
  auto* modelc = app.add_subcommand("split-model", "print the defining quadrics of Y_spl (and variants)");
  std::string model_ring = "ZZ";
  bool model_v10 = false;
  int64_t model_xi = -1, model_eta = -1;
  modelc->add_option("--ring", model_ring, "ZZ | QQ | F<q> | ring JSON");
  modelc->add_flag("--v10", model_v10, "print the V10 quotient ideal (char 2)");
  modelc->add_option("--deformed-xi", model_xi, "with --deformed-eta: print the (xi,eta) deformation over F2[t]/(t^2)");
  modelc->add_option("--deformed-eta", model_eta, "");

  // ---- shafarevich ----
  auto* shafc = app.add_subcommand("shafarevich", "Shafarevich count and representatives over Q");
  std::string primes_str;
  shafc->add_option("--primes", primes_str, "comma-separated odd primes S (empty for S = {})");

  // ---- local-class ----
  auto* localc = app.add_subcommand("local-class", "local splitting class of a rational ternary form");
  std::string form_path, place_str;
  localc->add_option("--form", form_path, "form JSON file")->required();
  localc->add_option("--place", place_str, "a prime p, or oo for the real place")->required();

  for (auto* sub : app.get_subcommands({})) sub->add_flag("--json", json, "emit machine-readable JSON on stdout");
  CLI11_PARSE(app, argc, argv);

  auto t0 = std::chrono::steady_clock::now();
  try {
    Report rep;
    if (*verify) {
      if (mode == "randomized" && samples == 0) {
        std::cerr << "error: --samples must be positive\n";
        return 2;
      }
      SuiteOptions opt;
      opt.mode = mode;
      opt.samples = samples;
      opt.seed = seed;
      opt.budget = budget;
      opt.prime = prime;
      rep.command = "verify";
      rep.inputs = Json{{"suite", suite}, {"mode", mode}, {"samples", samples}, {"seed", seed}, {"prime", prime}};
      rep.details = run_suite(suite, opt);
    } else if (*correspond) {
      rep.command = "correspond";
      Json in = read_json_file(in_path);
      rep.inputs = Json{{"dir", dir}, {"in", in_path}};
      RingSpec spec = ring_from_json(in.at("ring"));
      Json output;
      std::string summary;
      bool ok = dispatch_ring(spec, [&](auto rg) -> bool {
        using R = decltype(rg);
        if (dir == "net2form") {
          auto net = net_from_json(rg, in);
          // rank-4 certification
          if constexpr (std::is_same_v<R, GF>) {
            if (!is_rank4_net(net)) {
              summary = "rank-4 certification failed";
              return false;
            }
          } else if constexpr (std::is_same_v<R, ZZ> || std::is_same_v<R, QQ>) {
            // det Q_nu != 0 plus finite-field checks at small primes
            auto q = phi_from_net(net);
            if (rg.is_zero(determinant(q.Q))) {
              summary = "rank-4 certification failed: det Q_nu = 0";
              return false;
            }
            for (uint64_t p : {3, 5, 7}) {
              GF Fp(p);
              Matrix<GF> A(Fp, 5, 5), B(Fp, 5, 5), C(Fp, 5, 5);
              bool reducible = true;
              for (size_t i = 0; i < 25 && reducible; ++i) {
                auto red = [&](const typename R::Elem& e) -> uint64_t {
                  if constexpr (std::is_same_v<R, ZZ>) return Fp.from_Int(e);
                  else {
                    Int den = denominator(e);
                    if (den % Int(p) == 0) {
                      reducible = false;
                      return 0;
                    }
                    return Fp.mul(Fp.from_Int(numerator(e)), Fp.inv(Fp.from_Int(den)));
                  }
                };
                A.a[i] = red(net.A.a[i]);
                B.a[i] = red(net.B.a[i]);
                C.a[i] = red(net.C.a[i]);
              }
              if (!reducible) continue;
              AlternatingNet<GF> netp(Fp, A, B, C);
              if (!is_rank4_net(netp)) {
                summary = "rank-4 certification failed at p = " + std::to_string(p);
                return false;
              }
            }
          }
          auto q = phi_from_net(net);
          output = form_to_json(spec, q);
          summary = "det = " + rg.to_string(determinant(q.Q));
          if constexpr (std::is_same_v<R, ZZ>) {
            auto [pos, neg] = signature_pair(q);
            summary += ", signature (" + std::to_string(pos) + "," + std::to_string(neg) + ")";
          }
          return true;
        }
        auto form = form_from_json(rg, in);
        if (!rg.is_unit(determinant(form.Q))) {
          summary = "det Q is not a unit";
          return false;
        }
        auto net = net_from_form(form);
        output = net_to_json(spec, net);
        summary = "net computed";
        return true;
      });
      rep.details.push_back(CheckResult{dir, ok, summary});
      rep.payload = output;
      if (ok && !out_path.empty()) {
        std::ofstream outf(out_path);
        outf << output.dump(2) << "\n";
      }
    } else if (*censusc) {
      rep.command = "census";
      rep.inputs = Json{{"q", census_q}, {"lines", census_lines}};
      if (census_q > 9) {
        std::cerr << "error: census supports q <= 9\n";
        return 2;
      }
      if (census_lines && census_q > 5) {
        std::cerr << "error: --lines supports q <= 5\n";
        return 2;
      }
      GF F = field_for_q(census_q);
      auto c = census(F, census_lines);
      uint64_t expect = 1 + census_q + census_q * census_q + census_q * census_q * census_q;
      rep.details.push_back(CheckResult{"point count = 1 + q + q^2 + q^3", c.total == expect,
                                        std::to_string(c.total) + " points"});
      Json orbits = Json::object();
      for (auto& [k, v] : c.orbit_sizes) orbits[k] = v;
      rep.payload["total"] = c.total;
      rep.payload["orbits"] = orbits;
      if (census_lines) {
        Json profiles = Json::object();
        bool ok = c.line_profiles_uniform;
        for (auto& [label, profs] : c.line_profiles) {
          for (auto& [profile, count] : profs) {
            profiles[label] = profile;
            OrbitLabel ol = label == "O3"   ? OrbitLabel::O3
                            : label == "O2" ? OrbitLabel::O2
                            : label == "O1" ? OrbitLabel::O1
                                            : OrbitLabel::O1prime;
            if (profile != expected_line_profile(ol)) ok = false;
          }
        }
        rep.details.push_back(CheckResult{"line profiles match the orbit table", ok, ""});
        rep.payload["line_profiles"] = profiles;
      }
    } else if (*linesc) {
      rep.command = "lines";
      rep.inputs = Json{{"point", point_str}, {"q", lines_q}};
      GF F = field_for_q(lines_q);
      std::vector<uint64_t> p;
      for (auto& s : split_csv(point_str)) p.push_back(F.parse(s));
      if (p.size() != 7) {
        std::cerr << "error: expected 7 coordinates\n";
        return 2;
      }
      auto found = lines_through(F, p);
      Json lines_json = Json::array();
      for (const auto& l : found) {
        Json lj;
        lj["type"] = to_string(l.type);
        lj["field_degree"] = l.field_degree;
        Json p0 = Json::array(), p1 = Json::array(), lab = Json::array();
        for (auto x : l.p0) p0.push_back(x);
        for (auto x : l.p1) p1.push_back(x);
        for (auto x : l.sigma_label) lab.push_back(x);
        lj["span"] = Json::array({p0, p1});
        lj["sigma_label"] = lab;
        lines_json.push_back(lj);
      }
      rep.payload["lines"] = lines_json;
      rep.details.push_back(CheckResult{"lines found", true, std::to_string(found.size()) + " geometric lines"});
    } else if (*tric) {
      rep.command = "trisecant";
      rep.inputs = Json{{"point", tri_point}};
      Json pts = Json::array();
      if (tri_rational) {
        QQ rq;
        std::vector<Rat> p;
        for (auto& s : split_csv(tri_point)) p.push_back(rat_from_string(s));
        auto tri = trisecant_points_rational(p);
        for (const auto& t : tri) {
          Json tj;
          tj["multiplicity"] = t.multiplicity;
          Json img = Json::array(), src = Json::array();
          for (const auto& x : t.image) img.push_back(rat_to_string(x));
          for (const auto& x : t.source) src.push_back(rat_to_string(x));
          tj["image"] = img;
          tj["source"] = src;
          pts.push_back(tj);
        }
      } else {
        if (tri_q == 0) {
          std::cerr << "error: give --q or --rational\n";
          return 2;
        }
        GF F = field_for_q(tri_q);
        std::vector<uint64_t> p;
        for (auto& s : split_csv(tri_point)) p.push_back(F.parse(s));
        auto tri = trisecant_points(F, p);
        for (const auto& t : tri) {
          Json tj;
          tj["multiplicity"] = t.multiplicity;
          tj["field_degree"] = t.field_degree;
          Json img = Json::array(), src = Json::array();
          for (const auto& x : t.image) img.push_back(x);
          for (const auto& x : t.source) src.push_back(x);
          tj["image"] = img;
          tj["source"] = src;
          pts.push_back(tj);
        }
      }
      rep.payload["points"] = pts;
      unsigned total = 0;
      for (const auto& t : pts) total += t.at("multiplicity").get<unsigned>();
      rep.details.push_back(
          CheckResult{"intersection has length 3", total == 3, std::to_string(pts.size()) + " points"});
    } else if (*actc) {
      rep.command = "act";
      rep.inputs = Json{{"char", act_char}, {"g", act_g}, {"point", act_point}};
      auto gs = split_csv(act_g);
      auto ps = split_csv(act_point);
      if (ps.size() != 7) {
        std::cerr << "error: expected 7 point coordinates\n";
        return 2;
      }
      if (act_char == 0) {
        if (gs.size() != 4) {
          std::cerr << "error: char 0 needs g = a,b,c,d\n";
          return 2;
        }
        QQ rq;
        auto act = sigma_action(rq, rat_from_string(gs[0]), rat_from_string(gs[1]), rat_from_string(gs[2]),
                                rat_from_string(gs[3]));
        std::vector<Rat> p;
        for (auto& s : ps) p.push_back(rat_from_string(s));
        auto img = normalize_point(rq, act.apply(p));
        Json out = Json::array();
        for (const auto& x : img) out.push_back(rat_to_string(x));
        rep.payload["image"] = out;
        bool member = membership(rq, img, y_split_ideal(rq));
        rep.details.push_back(CheckResult{"image lies on Y_spl", member, ""});
      } else if (act_char == 2) {
        if (gs.size() != 4 && gs.size() != 6) {
          std::cerr << "error: char 2 needs g = a,b,c,d[,f1,f2]\n";
          return 2;
        }
        GF2Trunc R = f1f2_ring();
        GF f2(2);
        auto bit = [&](const std::string& s) { return R.lift(Poly<GF>::constant(f2, f2.parse(s))); };
        auto f1g = R.generator(0), f2g = R.generator(1);
        auto fpart = [&](const std::string& s, const typename GF2Trunc::Elem& gen) {
          return f2.parse(s) ? gen : R.zero();
        };
        GElementChar2 g(R, bit(gs[0]), bit(gs[1]), bit(gs[2]), bit(gs[3]),
                        gs.size() == 6 ? fpart(gs[4], f1g) : R.zero(), gs.size() == 6 ? fpart(gs[5], f2g) : R.zero());
        auto act = g_char2_action(g);
        std::vector<typename GF2Trunc::Elem> p;
        for (auto& s : ps) p.push_back(bit(s));
        auto img = act.apply(p);
        Json out = Json::array();
        for (const auto& x : img) out.push_back(R.to_string(x));
        rep.payload["image"] = out;
        bool member = membership(R, img, y_split_ideal(R));
        rep.details.push_back(CheckResult{"image lies on Y_spl", member, ""});
      } else {
        std::cerr << "error: --char must be 0 or 2\n";
        return 2;
      }
    } else if (*modelc) {
      rep.command = "split-model";
      rep.inputs = Json{{"ring", model_ring}};
      Json gens = Json::array();
      if (model_v10) {
        RingSpec spec = parse_ring_shorthand(model_ring);
        if (spec.kind != RingKind::PrimeField && spec.kind != RingKind::ExtensionField)
          throw ring_error("--v10 needs a finite field of characteristic 2");
        dispatch_ring(spec, [&](auto rg) {
          if constexpr (std::is_same_v<decltype(rg), GF>) {
            auto sys = v10_ideal(rg);
            for (const auto& g : sys.gens) gens.push_back(g.str());
          }
        });
      } else if (model_xi >= 0 && model_eta >= 0) {
        auto sys = deformed_ideal(uint64_t(model_xi), uint64_t(model_eta));
        for (const auto& g : sys.gens) gens.push_back(g.str());
      } else {
        RingSpec spec = parse_ring_shorthand(model_ring);
        dispatch_ring(spec, [&](auto rg) {
          auto sys = y_split_ideal(rg);
          for (const auto& g : sys.gens) gens.push_back(g.str());
        });
      }
      rep.payload["generators"] = gens;
      rep.details.push_back(CheckResult{"model printed", true, std::to_string(gens.size()) + " generators"});
    } else if (*shafc) {
      rep.command = "shafarevich";
      rep.inputs = Json{{"primes", primes_str}};
      std::set<Int> S;
      if (!primes_str.empty())
        for (auto& s : split_csv(primes_str)) S.insert(Int(s));
      auto c = shafarevich_count(S);
      rep.payload["count"] = c.count;
      if (c.warned_2_in_S) rep.payload["warning"] = "2 belongs to T, removed from S";
      Json entries = Json::array();
      for (const auto& e : c.entries) {
        Json ej;
        Json supp = Json::array();
        for (const auto& v : e.pattern.support) supp.push_back(v.str());
        ej["nonsplit_places"] = supp;
        if (e.form) {
          Json diag = Json::array();
          for (size_t i = 0; i < 3; ++i) diag.push_back(e.form->at(i, i).str());
          ej["representative_diag"] = diag;
        }
        ej["verified"] = e.verified;
        entries.push_back(ej);
      }
      rep.payload["classes"] = entries;
      rep.details.push_back(CheckResult{"count = 2^{r-1} with verified representatives",
                                        c.all_verified && c.entries.size() == c.count,
                                        std::to_string(c.count) + " classes"});
    } else if (*localc) {
      rep.command = "local-class";
      rep.inputs = Json{{"form", form_path}, {"place", place_str}};
      Json in = read_json_file(form_path);
      RingSpec spec = ring_from_json(in.at("ring"));
      Matrix<QQ> Q(QQ{}, 3, 3);
      if (spec.kind == RingKind::IntegerRing) {
        auto f = form_from_json(ZZ{}, in);
        Q = rational_matrix(f.Q);
      } else if (spec.kind == RingKind::RationalField) {
        auto f = form_from_json(QQ{}, in);
        Q = f.Q;
      } else {
        throw ring_error("local-class needs a form over ZZ or QQ");
      }
      Place v = (place_str == "oo" || place_str == "inf") ? Place::real() : Place::finite(Int(place_str));
      auto cls = local_class(Q, v);
      rep.payload["class"] = cls == LocalClass::split ? "split" : "nonsplit";
      rep.details.push_back(CheckResult{"local class computed", true, rep.payload["class"].get<std::string>()});
    }
    auto t1 = std::chrono::steady_clock::now();
    double secs = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() / 1000.0;
    return emit(rep, json, json ? -1.0 : secs);
  } catch (const budget_exceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ring_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
}
