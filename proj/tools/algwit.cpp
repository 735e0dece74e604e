#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "algwit/builders.hpp"
#include "algwit/certificate.hpp"
#include "algwit/constructions.hpp"
#include "algwit/error.hpp"
#include "algwit/io.hpp"

using namespace algwit;

namespace {

  enum exit_code { verified = 0, refuted = 1, cap = 2, invalid = 3 };

  struct options {
    std::optional<std::size_t> cap;
    std::string                out;
    std::string                recheck;
  };

  limits make_limits(options const& o) {
    auto lim = limits::from_environment();
    if (o.cap) {
      lim.closure_cap = *o.cap;
    }
    return lim;
  }

  void emit(options const& o, json const& j, std::string const& summary) {
    if (o.out.empty()) {
      std::cout << j.dump(2) << '\n';
    } else {
      write_json_file(o.out, j);
      std::cout << summary << '\n';
    }
  }

  int emit_certificate(options const& o, json const& cert, bool as_expected) {
    std::string summary = cert["claim"].get<std::string>() + ": " + cert["verdict"].get<std::string>();
    emit(o, cert, summary);
    return as_expected ? verified : refuted;
  }

  json describe_sharpness(unsigned m, unsigned q, limits const& lim) {
    auto w = build_sharpness_witness({m, q}, lim);
    json elems = json::array();
    for (std::size_t i = 0; i < w.universe.size(); ++i) {
      elems.push_back(w.tuple_of(i));
    }
    json j{{"kind", "sharpness-witness"}, {"m", m}, {"q", q}, {"coordinates", w.coordinates},
           {"elements", elems}, {"alpha", partition_to_json(w.alpha)},
           {"beta", partition_to_json(w.beta)}, {"gamma", partition_to_json(w.gamma)},
           {"a", w.a}, {"d", w.d}};
    j["c"] = w.c ? json(*w.c) : json(nullptr);
    return j;
  }

  json algebras_json(std::vector<finite_algebra> const& algs) {
    if (algs.size() == 1) {
      return algebra_to_json(algs[0]);
    }
    json arr = json::array();
    for (auto const& a : algs) {
      arr.push_back(algebra_to_json(a));
    }
    return {{"algebras", arr}};
  }

  finite_algebra single(std::string const& name) {
    auto algs = fixture(name);
    if (algs.size() != 1) {
      throw invalid_input("fixture '" + name + "' must name a single algebra here");
    }
    return algs[0];
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite algebra witnesses: sharpness constructions, identities and term searches"};
  app.fallthrough();
  app.require_subcommand(0, 1);
  options opt;
  app.add_option("--cap", opt.cap, "closure cap (default 2^20, or ALGWIT_CAP)");
  app.add_option("-o,--out", opt.out, "write the result here instead of standard output");
  app.add_option("--recheck", opt.recheck, "replay the evidence of a certificate file");

  // build
  auto* build = app.add_subcommand("build", "build an algebra or construction");
  build->require_subcommand(1);
  std::string fixture_name;
  unsigned    size = 2, j = 2, m = 3, q = 2, h = 1, k = 1;
  element     a = 0, d = 0, zero1 = 0, zero2 = 0, zero4 = 0;
  std::vector<std::string> inputs;
  std::string a1, a2, a3, a4;

  auto* b_fixture = build->add_subcommand("fixture", "a registered fixture");
  b_fixture->add_option("--name", fixture_name, "fixture name, e.g. N:2:4")->required();
  auto* b_chain = build->add_subcommand("chain", "chain lattice");
  b_chain->add_option("--size", size)->required();
  auto* b_ujm = build->add_subcommand("ujm", "u_{j,m} reduct of a chain");
  b_ujm->add_option("--size", size)->required();
  b_ujm->add_option("--j", j)->required();
  b_ujm->add_option("--m", m)->required();
  auto* b_product = build->add_subcommand("product", "direct product of algebra files");
  b_product->add_option("--input", inputs, "algebra JSON files")->required();
  auto* b_sharp = build->add_subcommand("sharpness", "the witness B(m,q) with its congruences");
  b_sharp->add_option("--m", m)->required();
  b_sharp->add_option("--q", q)->required();
  auto* b_punct = build->add_subcommand("punctured", "C_2^(m-1) without its top, under u_{2,m}");
  b_punct->add_option("--m", m)->required();
  auto* b_filter = build->add_subcommand("type-filtered", "type-filtered subalgebra of A1 x A2 x A3 x A4");
  b_filter->set_help_flag("--help", "Print this help message and exit");
  b_filter->add_option("--a1", a1)->required();
  b_filter->add_option("--a2", a2)->required();
  b_filter->add_option("--a3", a3)->required();
  b_filter->add_option("--a4", a4)->required();
  b_filter->add_option("--h", h)->required();
  b_filter->add_option("--k", k)->required();
  b_filter->add_option("--a", a)->required();
  b_filter->add_option("--d", d)->required();
  b_filter->add_option("--zero1", zero1);
  b_filter->add_option("--zero2", zero2);
  b_filter->add_option("--zero4", zero4);

  // verify
  auto* verify = app.add_subcommand("verify", "verify a construction");
  verify->require_subcommand(1);
  auto* v_sharp = verify->add_subcommand("sharpness", "B(m,q) pipeline");
  v_sharp->add_option("--m", m)->required();
  v_sharp->add_option("--q", q)->required();
  auto* v_ind = verify->add_subcommand("induction", "descent induction");
  v_ind->add_option("--m", m)->required();
  v_ind->add_option("--q", q)->required();

  // check identity
  auto* check = app.add_subcommand("check", "check a relational identity");
  check->require_subcommand(1);
  auto*                      c_id = check->add_subcommand("identity", "identity on B(m,q)");
  std::string                family;
  unsigned                   n = 1;
  std::optional<std::size_t> exponent;
  bool                       focus_ad = false;
  std::string                expect;
  c_id->add_option("--family", family, "identity family")->required();
  c_id->add_option("--m", m)->required();
  c_id->add_option("--q", q)->required();
  c_id->add_option("--j", j);
  c_id->add_option("--n", n);
  c_id->add_option("--exponent", exponent);
  c_id->add_flag("--focus-ad", focus_ad, "decide only the pair (a,d)");
  c_id->add_option("--expect", expect, "holds or fails (default holds)");

  // level
  auto*       level = app.add_subcommand("level", "minimal level of a chain scheme");
  std::string scheme;
  unsigned    level_cap = 16;
  level->add_option("--scheme", scheme)->required();
  level->add_option("--fixture", fixture_name)->required();
  level->add_option("--level-cap", level_cap);
  level->add_option("--expect", expect, "expected level");

  // search
  auto*    search = app.add_subcommand("search", "absorption-style term search");
  unsigned arity  = 0;
  search->add_option("--scheme", scheme)->required();
  search->add_option("--fixture", fixture_name)->required();
  search->add_option("--arity", arity, "arity (nu, lone-dissent)");
  search->add_option("--m", m, "m (half-nu, dissent-unanimity)");
  search->add_option("--expect", expect, "found or none (default found)");

  // toolkit
  auto* toolkit = app.add_subcommand("toolkit", "lone-dissent toolkit");
  toolkit->require_subcommand(1);
  auto*                      t_ld = toolkit->add_subcommand("lone-dissent", "compose and verify");
  std::string                mode = "check";
  std::size_t                d_op = 0;
  std::optional<std::size_t> e_op;
  unsigned                   iterations = 2;
  t_ld->add_option("--fixture", fixture_name)->required();
  t_ld->add_option("--mode", mode, "check, iterate, compose, maltsev, nu, arithmetical");
  t_ld->add_option("--d", d_op, "operation index of d");
  t_ld->add_option("--e", e_op, "operation index of e");
  t_ld->add_option("--k", iterations, "iteration count");

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return invalid;
  }

  try {
    auto const lim = make_limits(opt);
    if (!opt.recheck.empty()) {
      auto r = recheck_certificate(read_json_file(opt.recheck), lim);
      std::cout << (r.ok ? "recheck passed: " : "recheck FAILED: ") << r.detail << '\n';
      return r.ok ? verified : refuted;
    }
    if (app.get_subcommands().empty()) {
      std::cout << app.help();
      return invalid;
    }

    if (build->parsed()) {
      json out;
      if (b_fixture->parsed()) {
        out = algebras_json(fixture(fixture_name));
      } else if (b_chain->parsed()) {
        out = algebra_to_json(make_chain_lattice(size));
      } else if (b_ujm->parsed()) {
        out = algebra_to_json(make_ujm_reduct(size, j, m));
      } else if (b_product->parsed()) {
        std::vector<finite_algebra> factors;
        for (auto const& f : inputs) {
          factors.push_back(load_algebra(f));
        }
        out = algebra_to_json(direct_product(std::move(factors), lim));
      } else if (b_sharp->parsed()) {
        out = describe_sharpness(m, q, lim);
      } else if (b_punct->parsed()) {
        auto pp    = build_punctured_power(m, lim);
        json elems = json::array();
        for (element e : pp.universe.elements(lim.closure_cap)) {
          elems.push_back(pp.universe.indexing().to_tuple(e));
        }
        out = {{"kind", "punctured-power"}, {"m", m}, {"elements", elems}};
      } else if (b_filter->parsed()) {
        filtered_input in{single(a1), single(a2), single(a3), single(a4), zero1, zero2, zero4,
                          h, k, a, d, box_set{}};
        auto ambient = finite_algebra::product({in.a3, in.a4}, "A3 x A4", lim.table_cap);
        in.f         = box_set::for_algebra(ambient);
        in.f.add(in.f.full_box());
        auto result = build_type_filtered(in, lim);
        json elems  = json::array();
        factor_indexing idx({in.a1.size(), in.a2.size(), in.a3.size(), in.a4.size()});
        for (element e : result.universe.elements(lim.closure_cap)) {
          json tags = json::array();
          for (auto t : type_filtered_tags(in, e)) {
            tags.push_back(to_string(t));
          }
          elems.push_back({{"tuple", idx.to_tuple(e)}, {"types", tags}});
        }
        out = {{"kind", "type-filtered"}, {"elements", elems}};
      }
      emit(opt, out, "written " + opt.out);
      return verified;
    }

    if (v_sharp->parsed()) {
      auto cert = certify_sharpness(m, q, lim);
      return emit_certificate(opt, cert, cert["verdict"] == "verified");
    }
    if (v_ind->parsed()) {
      auto cert = certify_induction(m, q, lim);
      return emit_certificate(opt, cert, cert["verdict"] == "verified");
    }
    if (c_id->parsed()) {
      auto fam = identity_family_from_string(family);
      if (!fam) {
        throw invalid_input("unknown identity family '" + family + "'");
      }
      if (!expect.empty() && expect != "holds" && expect != "fails") {
        throw invalid_input("--expect must be holds or fails");
      }
      identity_params ip;
      ip.family   = *fam;
      ip.m        = m;
      ip.q        = q;
      ip.j        = j;
      ip.n        = n;
      ip.exponent = exponent;
      auto cert   = certify_identity(ip, focus_ad, lim);
      return emit_certificate(opt, cert, cert["verdict"] == (expect.empty() ? "holds" : expect));
    }
    if (level->parsed()) {
      auto cert = certify_level(fixture_name, scheme, level_cap, lim);
      if (cert["verdict"] == "cap") {
        emit(opt, cert, "level: no chain up to the level cap");
        return cap;
      }
      bool ok = cert["verdict"] == "found";
      if (ok && !expect.empty()) {
        ok = std::to_string(cert["evidence"]["level"].get<unsigned>()) == expect;
      }
      std::string summary = "level: " + cert["verdict"].get<std::string>();
      if (cert["verdict"] == "found") {
        summary += " " + std::to_string(cert["evidence"]["level"].get<unsigned>());
      }
      emit(opt, cert, summary);
      return ok ? verified : refuted;
    }
    if (search->parsed()) {
      unsigned parameter = (scheme == "nu" || scheme == "lone-dissent") ? arity : m;
      if (parameter == 0) {
        throw invalid_input("search: --arity is required for scheme '" + scheme + "'");
      }
      if (!expect.empty() && expect != "found" && expect != "none") {
        throw invalid_input("--expect must be found or none");
      }
      auto cert = certify_search(fixture_name, scheme, parameter, lim);
      std::string summary = "search: " + std::string(cert["verdict"] == "found" ? "found" : "not found");
      emit(opt, cert, summary);
      return cert["verdict"] == (expect.empty() ? "found" : expect) ? verified : refuted;
    }
    if (t_ld->parsed()) {
      auto cert = certify_toolkit(fixture_name, mode, d_op, e_op, iterations, lim);
      return emit_certificate(opt, cert, cert["verdict"] == "verified");
    }
    std::cout << app.help();
    return invalid;
  } catch (cap_exceeded const& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return cap;
  } catch (invalid_input const& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return invalid;
  } catch (json::exception const& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return invalid;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return refuted;
  }
}
