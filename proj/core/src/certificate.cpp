#include "algwit/certificate.hpp"

#include <algorithm>

#include "algwit/constructions.hpp"
#include "algwit/error.hpp"
#include "algwit/relation.hpp"

#ifndef ALGWIT_VERSION
#define ALGWIT_VERSION "0.0.0"
#endif

namespace algwit {

  namespace {
    json tuple_json(sharpness_witness const& w, std::size_t position) {
      return w.tuple_of(position);
    }

    std::vector<json> tuples_json(sharpness_witness const& w, std::vector<element> const& positions) {
      std::vector<json> out;
      for (element p : positions) {
        out.push_back(tuple_json(w, p));
      }
      return out;
    }

    json params_json(identity_params const& p) {
      json j{{"family", to_string(p.family)}, {"m", p.m}, {"q", p.q}, {"j", p.j}, {"n", p.n}};
      if (p.exponent) {
        j["exponent"] = *p.exponent;
      }
      return j;
    }

    identity_params params_from_json(json const& j) {
      identity_params p;
      auto            fam = identity_family_from_string(j.at("family").get<std::string>());
      if (!fam) {
        throw schema_error("$.family", "unknown identity family");
      }
      p.family = *fam;
      p.m      = j.at("m").get<unsigned>();
      p.q      = j.at("q").get<unsigned>();
      p.j      = j.at("j").get<unsigned>();
      p.n      = j.at("n").get<unsigned>();
      if (j.contains("exponent")) {
        p.exponent = j["exponent"].get<std::size_t>();
      }
      return p;
    }

    json instance_json(sharpness_witness const& w, identity_instance const& inst) {
      json j{{"params", params_json(inst.params)},
             {"holds", inst.holds},
             {"lhs", inst.lhs_text},
             {"rhs", inst.rhs_text},
             {"rows_checked", inst.rows_checked}};
      if (inst.counterexample) {
        j["pair"] = {tuple_json(w, inst.counterexample->first),
                     tuple_json(w, inst.counterexample->second)};
      }
      j["witness"] = tuples_json(w, inst.witness);
      return j;
    }

    element position_or_throw(sharpness_witness const& w, json const& tuple) {
      auto pos = w.position_of_tuple(tuple.get<std::vector<element>>());
      if (!pos) {
        throw verification_failed("tuple " + tuple.dump() + " is not in B");
      }
      return static_cast<element>(*pos);
    }

    identity_instance instance_from_json(sharpness_witness const& w, json const& j) {
      identity_instance inst;
      inst.params = params_from_json(j.at("params"));
      inst.holds  = j.at("holds").get<bool>();
      if (j.contains("pair")) {
        inst.counterexample = std::make_pair(position_or_throw(w, j["pair"][0]),
                                             position_or_throw(w, j["pair"][1]));
      }
      for (auto const& t : j.at("witness")) {
        inst.witness.push_back(position_or_throw(w, t));
      }
      return inst;
    }

    // Direct reading of the good-element rules on a tuple of P(m,q).
    bool good_tuple(unsigned m, unsigned q, std::vector<element> const& t) {
      sharpness_params const sp{m, q};
      unsigned const         pairs = sp.m_odd() ? sp.ell() - 2 : sp.ell() - 1;
      std::size_t const      n     = 2 * pairs + (sp.m_odd() ? 1 : 0) + 1;
      if (t.size() != n || t.back() > 1) {
        return false;
      }
      for (std::size_t i = 0; i + 1 < n; ++i) {
        if (t[i] > q) {
          return false;
        }
      }
      if (t.back() == 0) {
        return true;
      }
      unsigned p = 0;
      while (p < pairs && t[2 * p] == 0 && t[2 * p + 1] == 0) {
        ++p;
      }
      if (p == pairs) {
        return true;
      }
      bool left = t[2 * p + 1] == 0;
      if (!left && t[2 * p] != 0) {
        return false;
      }
      for (unsigned r = p + 1; r < pairs; ++r) {
        if (left ? (t[2 * r] != q || t[2 * r + 1] != 0) : (t[2 * r] != 0 || t[2 * r + 1] != q)) {
          return false;
        }
      }
      return !sp.m_odd() || t[2 * pairs] == (left ? q : 0);
    }

    // Per-coordinate reading of the congruences: kind is 'a', 'b' or 'g'.
    bool tuples_related(unsigned m, unsigned q, char kind, std::vector<element> const& x,
                        std::vector<element> const& y) {
      sharpness_params const sp{m, q};
      unsigned const         pairs = sp.m_odd() ? sp.ell() - 2 : sp.ell() - 1;
      auto beta  = [&](element u, element v) { return (q - u) / 2 == (q - v) / 2; };
      auto gamma = [&](element u, element v) { return (q - u + 1) / 2 == (q - v + 1) / 2; };
      std::size_t const last = x.size() - 1;
      if (kind == 'a') {
        return x[last] == y[last];
      }
      for (std::size_t i = 0; i < last; ++i) {
        bool use_beta = kind == 'b';
        if (i < 2 * pairs && i % 2 == 1 && q % 2 == 0) {
          use_beta = !use_beta;
        }
        if (!(use_beta ? beta(x[i], y[i]) : gamma(x[i], y[i]))) {
          return false;
        }
      }
      return true;
    }

    std::vector<term> terms_from_json(json const& arr, finite_algebra const& signature) {
      std::vector<term> out;
      for (std::size_t i = 0; i < arr.size(); ++i) {
        out.push_back(term_from_json(arr[i], signature, "$.evidence.witness[" + std::to_string(i) + "]"));
      }
      return out;
    }

    json violation_json(equation_violation const& v, std::span<term_equation const> eqs) {
      return {{"equation", eqs[v.equation].label},
              {"algebra", v.algebra},
              {"assignment", v.assignment},
              {"lhs", v.lhs_value},
              {"rhs", v.rhs_value}};
    }

    json step_json(toolkit_step const& s, finite_algebra const& signature) {
      json j{{"claim", s.claim},
             {"schema", s.schema_kind},
             {"arity", s.arity},
             {"term", term_to_json(s.result, signature)},
             {"passed", s.passed()}};
      if (s.violation) {
        j["violation"] = violation_json(*s.violation, s.schema);
      }
      return j;
    }

    recheck_result fail(std::string detail) {
      return {false, std::move(detail)};
    }
  }  // namespace

  std::string tool_version() {
    return ALGWIT_VERSION;
  }

  json make_certificate(std::string const& claim,
                        json               parameters,
                        std::string const& verdict,
                        json               evidence,
                        json               stats) {
    return {{"claim", claim},
            {"parameters", std::move(parameters)},
            {"verdict", verdict},
            {"evidence", std::move(evidence)},
            {"stats", std::move(stats)},
            {"tool_version", tool_version()}};
  }

  json certify_sharpness(unsigned m, unsigned q, limits const& lim) {
    auto w = build_sharpness_witness({m, q}, lim);
    auto r = verify_sharpness(w);
    json ev{{"coordinates", w.coordinates},
            {"universe_size", w.universe.size()},
            {"closed", r.closed},
            {"a", tuple_json(w, w.a)},
            {"d", tuple_json(w, w.d)}};
    bool ok = r.closed && r.all_fail;
    json failing = json::array();
    for (auto const& inst : r.instances) {
      failing.push_back(instance_json(w, inst));
    }
    ev["failing"] = failing;
    if (q == 2) {
      ok = ok && r.c_witness.has_value();
      ev["c"] = r.c_witness ? tuple_json(w, *r.c_witness) : json(nullptr);

      auto canon = canonical_witness_chain(w);
      std::vector<element> chain(canon.begin(), canon.end());
      ev["chain"] = tuples_json(w, chain);
      auto ab = rel_of_partition(partition_meet(w.alpha, w.beta));
      auto ag = rel_of_partition(partition_meet(w.alpha, w.gamma));
      auto a  = static_cast<element>(w.a);
      auto d  = static_cast<element>(w.d);
      auto shortest = shortest_alternating_chain(a, d, ab, ag, 4 * m);
      bool matches  = shortest && shortest->elements == chain;
      ev["shortest_matches_chain"] = matches;
      ok = ok && matches && chain.size() == 2 * m - 3;

      json gap = json::array();
      auto gap_check = [&](identity_family fam, unsigned n, bool expect_holds) {
        identity_params ip;
        ip.family = fam;
        ip.m      = m;
        ip.q      = q;
        ip.n      = n;
        auto inst = check_identity(ip, w.alpha, w.beta, w.gamma, std::make_pair(a, d));
        gap.push_back(instance_json(w, inst));
        ok = ok && inst.holds == expect_holds;
      };
      if (2 * m >= 6) {
        gap_check(identity_family::n_distributive, 2 * m - 5, false);
      }
      gap_check(identity_family::n_alvin, 2 * m - 4, false);
      gap_check(identity_family::n_distributive, 2 * m - 4, true);
      ev["gap"] = gap;
    }
    return make_certificate("sharpness", {{"m", m}, {"q", q}}, ok ? "verified" : "refuted", ev,
                            {{"universe_size", w.universe.size()},
                             {"boxes", w.good.boxes().size()}});
  }

  json certify_induction(unsigned m, unsigned q, limits const& lim) {
    json states = json::array();
    std::string verdict = "verified";
    try {
      for (auto const& s : run_descent_induction({m, q}, lim)) {
        states.push_back({{"step", s.step},
                          {"j", s.j},
                          {"a3_size", s.a3.size()},
                          {"f_size", s.universe.size()},
                          {"checks", s.checks},
                          {"fails", s.failure.lhs_text + " not within " + s.failure.rhs_text}});
      }
    } catch (verification_failed const& e) {
      verdict = "refuted";
      states.push_back({{"error", e.what()}});
    }
    return make_certificate("induction", {{"m", m}, {"q", q}}, verdict, {{"states", states}},
                            {{"stages", states.size()}});
  }

  json certify_identity(identity_params const& params, bool focus_ad, limits const& lim) {
    auto w = build_sharpness_witness({params.m, params.q}, lim);
    std::optional<std::pair<element, element>> focus;
    if (focus_ad) {
      focus = std::make_pair(static_cast<element>(w.a), static_cast<element>(w.d));
    }
    auto inst = check_identity(params, w.alpha, w.beta, w.gamma, focus);
    return make_certificate("identity", {{"identity", params_json(params)}, {"focus_ad", focus_ad}},
                            inst.holds ? "holds" : "fails", {{"instance", instance_json(w, inst)}},
                            {{"universe_size", w.universe.size()}, {"rows_checked", inst.rows_checked}});
  }

  json certify_level(std::string const& fixture_name,
                     std::string const& scheme,
                     unsigned           level_cap,
                     limits const&      lim) {
    auto gens = fixture(fixture_name);
    auto r    = chain_level(gens, chain_scheme_by_name(scheme), level_cap, lim);
    json ev{{"free_size", r.free_size}, {"candidates", r.candidates}};
    if (r.verdict == search_verdict::found) {
      ev["level"] = r.level;
      json ws     = json::array();
      for (auto const& t : r.witness) {
        ws.push_back(term_to_json(t, gens[0]));
      }
      ev["witness"] = ws;
      json eqs      = json::array();
      for (auto const& e : chain_equations(chain_scheme_by_name(scheme), r.level)) {
        eqs.push_back(e.label);
      }
      ev["equations"] = eqs;
    }
    return make_certificate("level",
                            {{"fixture", fixture_name}, {"scheme", scheme}, {"level_cap", level_cap}},
                            to_string(r.verdict), ev, {{"layers", r.layers}});
  }

  json certify_search(std::string const& fixture_name,
                      std::string const& scheme,
                      unsigned           parameter,
                      limits const&      lim) {
    auto gens = fixture(fixture_name);
    auto sc   = absorption_scheme_by_name(scheme, parameter);
    auto r    = absorption_search(gens, sc, lim);
    json ev{{"arity", r.arity}};
    if (r.witness) {
      ev["witness"] = term_to_json(*r.witness, gens[0]);
    }
    if (r.refutation) {
      ev["refutation"] = {{"algebra", r.refutation->algebra},
                          {"assignment", r.refutation->assignment ? json(*r.refutation->assignment)
                                                                  : json(nullptr)},
                          {"closure_size", r.refutation->closure_size}};
    }
    return make_certificate("search",
                            {{"fixture", fixture_name}, {"scheme", scheme}, {"parameter", parameter}},
                            to_string(r.verdict), ev,
                            {{"explored", r.explored}, {"coordinates", r.coordinates}});
  }

  json certify_toolkit(std::string const&         fixture_name,
                       std::string const&         mode,
                       std::size_t                d_op,
                       std::optional<std::size_t> e_op,
                       unsigned                   k,
                       limits const&              lim) {
    auto        gens = fixture(fixture_name);
    auto const& sig  = gens[0];
    auto basic = [&](std::size_t op) {
      if (op >= sig.op_count()) {
        throw invalid_input("toolkit: the fixture has no operation " + std::to_string(op));
      }
      std::vector<term> vars;
      for (unsigned v = 0; v < sig.arity(op); ++v) {
        vars.push_back(term::variable(v));
      }
      return term::apply(op, std::move(vars));
    };
    term const     d  = basic(d_op);
    unsigned const ad = sig.arity(d_op);
    require_lone_dissent(gens, d, ad);
    std::optional<term> e;
    unsigned            ae = 0;
    if (e_op) {
      e  = basic(*e_op);
      ae = sig.arity(*e_op);
      require_lone_dissent(gens, *e, ae);
    }
    auto need_e = [&] {
      if (!e) {
        throw invalid_input("toolkit mode '" + mode + "' needs a second operation");
      }
    };
    std::vector<toolkit_step> steps;
    auto run = [&](std::string claim, term t, unsigned arity, std::string kind) {
      auto              schema = schema_equations(kind, arity);
      std::vector<term> ts{t};
      auto              v = verify_term_identity(ts, gens, schema);
      steps.push_back({std::move(claim), std::move(t), arity, std::move(kind), std::move(schema), v});
    };
    json extra      = json::object();
    bool derived_ok = true;
    if (mode == "check") {
      run("basic operation is lone-dissent", d, ad, "lone-dissent");
    } else if (mode == "iterate") {
      if (k < 1) {
        throw invalid_input("toolkit iterate: k must be at least 1");
      }
      unsigned arity = k * (ad - 1) + 1;
      run("iterate is lone-dissent of arity " + std::to_string(arity), ld_iterate(d, ad, k), arity,
          "lone-dissent");
    } else if (mode == "compose") {
      need_e();
      unsigned arity = ad + ae - 1;
      run("composite is lone-dissent of arity " + std::to_string(arity), ld_compose(d, ad, *e, ae),
          arity, "lone-dissent");
    } else if (mode == "maltsev") {
      run("t(x,y,z) = d(x,y,...,y,z) is a Maltsev term", ld_maltsev(d, ad), 3, "maltsev");
    } else if (mode == "nu") {
      need_e();
      run("composite is a near-unanimity term of arity " + std::to_string(ae),
          ld_near_unanimity(d, ad, *e, ae), ae, "nu");
    } else if (mode == "arithmetical") {
      need_e();
      auto rep = arithmetical_pipeline(gens, d, ad, *e, ae, lim);
      steps    = rep.steps;
      extra    = {{"m", rep.m}, {"n", rep.n}, {"k", rep.k}, {"h", rep.h},
                  {"majority", rep.majority.has_value()}, {"maltsev", rep.maltsev.has_value()}};
      derived_ok = rep.passed;
    } else {
      throw invalid_input("unknown toolkit mode '" + mode + "'");
    }
    json js   = json::array();
    bool pass = derived_ok;
    for (auto const& s : steps) {
      js.push_back(step_json(s, sig));
      pass = pass && s.passed();
    }
    json params{{"fixture", fixture_name}, {"mode", mode}, {"d", d_op}, {"k", k}};
    if (e_op) {
      params["e"] = *e_op;
    }
    return make_certificate("toolkit", params, pass ? "verified" : "refuted",
                            {{"steps", js}, {"pipeline", extra}}, {{"steps", steps.size()}});
  }

  recheck_result recheck_certificate(json const& cert, limits const& lim) {
    try {
      auto const  claim   = cert.at("claim").get<std::string>();
      auto const& params  = cert.at("parameters");
      auto const  verdict = cert.at("verdict").get<std::string>();
      auto const& ev      = cert.at("evidence");

      if (claim == "sharpness") {
        unsigned m = params.at("m").get<unsigned>();
        unsigned q = params.at("q").get<unsigned>();
        auto     w = build_sharpness_witness({m, q}, lim);
        auto     a = ev.at("a").get<std::vector<element>>();
        auto     d = ev.at("d").get<std::vector<element>>();
        if (!good_tuple(m, q, a) || !good_tuple(m, q, d)) {
          return fail("a or d is not good");
        }
        if (!tuples_related(m, q, 'a', a, d)) {
          return fail("a and d are not alpha-related");
        }
        for (auto const& inst : ev.at("failing")) {
          auto ii = instance_from_json(w, inst);
          if (ii.holds) {
            return fail("a listed identity holds");
          }
          if (!recheck_identity(ii, w.alpha, w.beta, w.gamma)) {
            return fail("identity failure does not replay: " + inst.at("lhs").get<std::string>());
          }
        }
        if (q == 2) {
          auto c = ev.at("c");
          if (c.is_null()) {
            return fail("no c witness");
          }
          auto cv = c.get<std::vector<element>>();
          if (!good_tuple(m, q, cv) || !tuples_related(m, q, 'b', a, cv)
              || !tuples_related(m, q, 'g', cv, d)) {
            return fail("c does not witness (a,d) in beta o gamma");
          }
          auto chain = ev.at("chain");
          if (chain.size() != 2 * m - 3 || chain.front() != ev["a"] || chain.back() != ev["d"]) {
            return fail("chain has the wrong length or endpoints");
          }
          for (std::size_t i = 0; i < chain.size(); ++i) {
            auto t = chain[i].get<std::vector<element>>();
            if (!good_tuple(m, q, t)) {
              return fail("chain element " + std::to_string(i) + " is not good");
            }
            if (i > 0) {
              auto s    = chain[i - 1].get<std::vector<element>>();
              char kind = i % 2 == 1 ? 'b' : 'g';
              if (!tuples_related(m, q, 'a', s, t) || !tuples_related(m, q, kind, s, t)) {
                return fail("chain step " + std::to_string(i) + " is not related");
              }
            }
          }
          for (auto const& inst : ev.at("gap")) {
            if (!recheck_identity(instance_from_json(w, inst), w.alpha, w.beta, w.gamma)) {
              return fail("gap instance does not replay");
            }
          }
        }
        return {verdict == "verified", "sharpness evidence replayed"};
      }

      if (claim == "induction") {
        auto again = certify_induction(params.at("m").get<unsigned>(), params.at("q").get<unsigned>(), lim);
        if (again["evidence"] != ev || again["verdict"] != verdict) {
          return fail("induction replay differs");
        }
        return {verdict == "verified", "induction replayed"};
      }

      if (claim == "identity") {
        auto ip   = params_from_json(params.at("identity"));
        auto w    = build_sharpness_witness({ip.m, ip.q}, lim);
        auto inst = instance_from_json(w, ev.at("instance"));
        if ((verdict == "holds") != inst.holds) {
          return fail("verdict disagrees with the instance");
        }
        if (!recheck_identity(inst, w.alpha, w.beta, w.gamma)) {
          return fail("identity instance does not replay");
        }
        return {true, "identity replayed"};
      }

      if (claim == "level") {
        auto gens   = fixture(params.at("fixture").get<std::string>());
        auto scheme = chain_scheme_by_name(params.at("scheme").get<std::string>());
        if (verdict == "found") {
          unsigned level = ev.at("level").get<unsigned>();
          auto     terms = terms_from_json(ev.at("witness"), gens[0]);
          auto     eqs   = chain_equations(scheme, level);
          if (terms.size() != std::max<std::size_t>(1, level + 1 - std::min(level, scheme.first_index))) {
            return fail("witness chain has the wrong length");
          }
          if (auto v = verify_term_identity(terms, gens, eqs)) {
            return fail("witness fails '" + eqs[v->equation].label + "'");
          }
          if (level > scheme.first_index) {
            auto shorter = chain_level(gens, scheme, level - 1, lim);
            if (shorter.verdict == search_verdict::found) {
              return fail("a shorter chain exists");
            }
          }
          return {true, "witness terms verified; no shorter chain"};
        }
        auto again = chain_level(gens, scheme, params.at("level_cap").get<unsigned>(), lim);
        return {to_string(again.verdict) == verdict, "search replayed"};
      }

      if (claim == "search") {
        auto gens = fixture(params.at("fixture").get<std::string>());
        auto sc   = absorption_scheme_by_name(params.at("scheme").get<std::string>(),
                                              params.at("parameter").get<unsigned>());
        if (verdict == "found") {
          std::vector<term> ts{term_from_json(ev.at("witness"), gens[0], "$.evidence.witness")};
          auto eqs = absorption_equations(sc);
          if (auto v = verify_term_identity(ts, gens, eqs)) {
            return fail("witness fails '" + eqs[v->equation].label + "'");
          }
          return {true, "witness term verified"};
        }
        if (verdict == "none" && ev.contains("refutation")) {
          auto const&           rj = ev["refutation"];
          absorption_refutation ref;
          ref.algebra = rj.at("algebra").get<std::size_t>();
          if (!rj.at("assignment").is_null()) {
            ref.assignment = rj["assignment"].get<std::vector<element>>();
          }
          ref.closure_size = rj.at("closure_size").get<std::size_t>();
          return {recheck_refutation(gens, sc, ref, lim), "projected closure replayed"};
        }
        auto again = absorption_search(gens, sc, lim);
        return {to_string(again.verdict) == verdict, "search replayed"};
      }

      if (claim == "toolkit") {
        auto gens = fixture(params.at("fixture").get<std::string>());
        bool all  = true;
        for (auto const& s : ev.at("steps")) {
          if (!s.contains("term") || !s.contains("schema")) {
            return fail("toolkit step without term");
          }
          std::vector<term> ts{term_from_json(s["term"], gens[0], "$.evidence.steps")};
          auto eqs    = schema_equations(s["schema"].get<std::string>(), s["arity"].get<unsigned>());
          bool passed = !verify_term_identity(ts, gens, eqs).has_value();
          if (passed != s.at("passed").get<bool>()) {
            return fail("step '" + s.at("claim").get<std::string>() + "' does not replay");
          }
          all = all && passed;
        }
        if (ev.at("pipeline").contains("majority")) {
          all = all && ev["pipeline"]["majority"].get<bool>() && ev["pipeline"]["maltsev"].get<bool>();
        }
        return {all == (verdict == "verified"), "toolkit steps re-evaluated"};
      }
      return fail("unknown claim '" + claim + "'");
    } catch (json::exception const& e) {
      return fail(std::string("malformed certificate: ") + e.what());
    } catch (error const& e) {
      return fail(e.what());
    }
  }

}  // namespace algwit
