#include "properties.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string_view>

#include <algwit/boxset.hpp>
#include <algwit/builders.hpp>
#include <algwit/certificate.hpp>
#include <algwit/constructions.hpp>
#include <algwit/identity.hpp>
#include <algwit/partition.hpp>

#include "oracles.hpp"

namespace props {

  using namespace algwit;

  std::uint64_t seed_from(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
      std::string_view arg = argv[i];
      if (arg.starts_with("--seed=")) {
        return std::stoull(std::string(arg.substr(7)));
      }
      if (arg == "--seed" && i + 1 < argc) {
        return std::stoull(argv[i + 1]);
      }
    }
    if (char const* env = std::getenv("ALGWIT_SEED")) {
      return std::stoull(env);
    }
    return 20240607;
  }

  namespace {

    oracle::matrix matrix_of(partition const& p) {
      return oracle::equivalence(p.block_ids());
    }

    // alpha meet (beta o M_1 o ... o M_{q-2} o last), middles alternating
    // alpha gamma, alpha beta, ...
    oracle::matrix q_lhs(oracle::matrix const& a,
                         oracle::matrix const& b,
                         oracle::matrix const& g,
                         unsigned              q) {
      auto ab  = oracle::meet(a, b);
      auto ag  = oracle::meet(a, g);
      auto rel = b;
      for (unsigned i = 0; i + 2 < q; ++i) {
        rel = oracle::compose(rel, i % 2 == 0 ? ag : ab);
      }
      rel = oracle::compose(rel, q % 2 == 0 ? g : b);
      return oracle::meet(a, rel);
    }

    oracle::matrix q_power_rhs(oracle::matrix const& a,
                               oracle::matrix const& b,
                               oracle::matrix const& g,
                               unsigned              q,
                               unsigned              m) {
      return oracle::power(oracle::meet(a, oracle::alternate(g, b, q)), m - 2);
    }

    oracle::matrix shifted_rhs(oracle::matrix const& a,
                               oracle::matrix const& b,
                               oracle::matrix const& g,
                               unsigned              q,
                               unsigned              m) {
      auto ag    = oracle::meet(a, g);
      auto inner = oracle::meet(a, oracle::alternate(b, ag, q - 2));
      return oracle::compose(ag, oracle::power(oracle::compose(inner, ag), m - 2));
    }

    partition random_congruence(finite_algebra const& alg, std::mt19937_64& rng) {
      std::uniform_int_distribution<element>   pick(0, static_cast<element>(alg.size() - 1));
      std::uniform_int_distribution<int>       count(0, 3);
      std::vector<std::pair<element, element>> pairs;
      for (int i = count(rng); i > 0; --i) {
        pairs.emplace_back(pick(rng), pick(rng));
      }
      return congruence_generated(alg, pairs);
    }

  }  // namespace

  tally shifted_power_equivalence(std::mt19937_64& rng, std::size_t trials) {
    tally                              t;
    std::uniform_int_distribution<int> size_d(2, 8), m_d(3, 5), coin(0, 1);
    std::size_t                        failing = 0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
      std::size_t n   = static_cast<std::size_t>(size_d(rng));
      unsigned    q   = coin(rng) ? 3 : 5;
      unsigned    m   = static_cast<unsigned>(m_d(rng));
      auto        alg = oracle::random_algebra(n, 1, rng);
      if (coin(rng)) {
        alg = finite_algebra("set", n, {});
      }
      partition alpha = random_congruence(alg, rng);
      partition beta  = random_congruence(alg, rng);
      partition gamma = random_congruence(alg, rng);
      partition ag_p  = partition_meet(alpha, gamma);

      auto a = matrix_of(alpha), b = matrix_of(beta), g = matrix_of(gamma);
      auto ag = oracle::meet(a, g);

      auto lhs      = q_lhs(a, b, g, q);
      bool plain    = oracle::subset(lhs, q_power_rhs(a, b, g, q, m));
      bool shifted  = oracle::subset(lhs, shifted_rhs(a, b, g, q, m));
      bool plain_ag = oracle::subset(q_lhs(a, b, ag, q), q_power_rhs(a, b, ag, q, m));

      identity_params p{identity_family::q_power, m, q, 2, 1, {}};
      identity_params s{identity_family::q_power_shifted, m, q, 2, 1, {}};
      bool lib_plain    = check_identity(p, alpha, beta, gamma).holds;
      bool lib_shifted  = check_identity(s, alpha, beta, gamma).holds;
      bool lib_plain_ag = check_identity(p, alpha, beta, ag_p).holds;

      ++t.trials;
      std::ostringstream where;
      where << "trial " << trial << " (n=" << n << ", q=" << q << ", m=" << m << ")";
      if (lib_plain != plain || lib_shifted != shifted || lib_plain_ag != plain_ag) {
        t.fail(where.str() + ": library verdict differs from the matrix oracle");
      } else if (plain_ag != shifted) {
        t.fail(where.str() + ": q-power at (a, b, a^g) and shifted at (a, b, g) disagree");
      } else if (shifted && !plain) {
        t.fail(where.str() + ": shifted holds but q-power fails");
      } else if (!oracle::subset(shifted_rhs(a, b, g, q, m), q_power_rhs(a, b, g, q, m))) {
        t.fail(where.str() + ": shifted right side not inside the q-power right side");
      }
      failing += shifted ? 0 : 1;
    }
    t.note = std::to_string(failing) + " of " + std::to_string(t.trials) + " triples refute the shifted form";
    return t;
  }

  tally congruence_generation(std::mt19937_64& rng, std::size_t trials) {
    tally                              t;
    std::uniform_int_distribution<int> size_d(1, 6), arity_d(1, 2), count(0, 3);
    for (std::size_t trial = 0; trial < trials; ++trial) {
      std::size_t n   = static_cast<std::size_t>(size_d(rng));
      unsigned    r   = static_cast<unsigned>(arity_d(rng));
      auto        alg = oracle::random_algebra(n, r, rng);
      std::uniform_int_distribution<element>   pick(0, static_cast<element>(n - 1));
      std::vector<std::pair<element, element>> pairs;
      for (int i = count(rng); i > 0; --i) {
        pairs.emplace_back(pick(rng), pick(rng));
      }
      auto expected = oracle::equivalence(oracle::generated_congruence(alg, pairs));
      auto got      = matrix_of(congruence_generated(alg, pairs));
      ++t.trials;
      if (expected != got) {
        t.fail("trial " + std::to_string(trial) + " (size " + std::to_string(n) + ", arity "
               + std::to_string(r) + ")");
      }
    }
    return t;
  }

  tally ujm_order_statistic() {
    tally t;
    for (std::size_t s = 2; s <= 5; ++s) {
      for (unsigned m = 3; m <= 7; ++m) {
        for (unsigned j = 1; j <= m; ++j) {
          auto                 alg = make_ujm_reduct(s, j, m);
          std::vector<element> args(m, 0);
          bool                 done = false;
          while (!done) {
            auto sorted = args;
            std::sort(sorted.begin(), sorted.end());
            element got = alg.apply(0, args);
            ++t.trials;
            if (got != oracle::subset_ujm(args, j) || got != sorted[j - 1]) {
              t.fail("u_{" + std::to_string(j) + "," + std::to_string(m) + "} on C_"
                     + std::to_string(s));
            }
            done = true;
            for (std::size_t p = m; p-- > 0;) {
              if (++args[p] < s) {
                done = false;
                break;
              }
              args[p] = 0;
            }
          }
        }
      }
    }
    return t;
  }

  namespace {

    // Random single-operation algebra in which every value forced by the
    // rule (count of `value` among the arguments >= k) is respected.
    finite_algebra forced_algebra(std::size_t                                    size,
                                  unsigned                                       m,
                                  std::mt19937_64&                               rng,
                                  std::function<std::optional<element>(std::vector<element> const&)> rule) {
      std::uniform_int_distribution<element> pick(0, static_cast<element>(size - 1));
      operation_table                        tab{"u", m, {}};
      std::vector<element>                   args(m, 0);
      bool                                   done = false;
      while (!done) {
        auto forced = rule(args);
        tab.entries.push_back(forced ? *forced : pick(rng));
        done = true;
        for (std::size_t p = m; p-- > 0;) {
          if (++args[p] < size) {
            done = false;
            break;
          }
          args[p] = 0;
        }
      }
      return finite_algebra("random", size, {tab});
    }

    auto absorbing_rule(element zero, unsigned k) {
      return [zero, k](std::vector<element> const& args) -> std::optional<element> {
        if (static_cast<unsigned>(std::count(args.begin(), args.end(), zero)) >= k) {
          return zero;
        }
        return std::nullopt;
      };
    }

    auto majority_rule(unsigned k) {
      return [k](std::vector<element> const& args) -> std::optional<element> {
        for (element x : args) {
          if (static_cast<unsigned>(std::count(args.begin(), args.end(), x)) >= k) {
            return x;
          }
        }
        return std::nullopt;
      };
    }

  }  // namespace

  tally type_filtered_closure(std::mt19937_64& rng, std::size_t trials) {
    tally                              t;
    std::uniform_int_distribution<int> coin(0, 1), size23(2, 3), gens_d(1, 3);
    for (std::size_t trial = 0; trial < trials; ++trial) {
      unsigned m = coin(rng) ? 3 : 4;
      unsigned h = 1, k = 2;
      if (m == 4) {
        int pick = std::uniform_int_distribution<int>(0, 2)(rng);
        h        = pick == 2 ? 2 : 1;
        k        = pick == 0 ? 3 : 2;
      }
      auto sized = [&](std::size_t big) {
        return m == 3 ? static_cast<std::size_t>(size23(rng)) : big;
      };
      std::size_t s1 = sized(2), s2 = sized(2), s4 = sized(2);
      std::size_t s3 = 2 * k > m ? sized(2) : 1;
      if (m == 3 && coin(rng)) {
        s3 = 1;
      }
      auto zero = [&](std::size_t s) {
        return std::uniform_int_distribution<element>(0, static_cast<element>(s - 1))(rng);
      };

      filtered_input in;
      in.zero1 = zero(s1);
      in.zero2 = zero(s2);
      in.zero4 = zero(s4);
      in.a1    = forced_algebra(s1, m, rng, absorbing_rule(in.zero1, h));
      in.a2    = forced_algebra(s2, m, rng, absorbing_rule(in.zero2, h));
      in.a3    = forced_algebra(s3, m, rng, majority_rule(k));
      in.a4    = forced_algebra(s4, m, rng, absorbing_rule(in.zero4, 2));
      in.h     = h;
      in.k     = k;
      in.a     = zero(s3);
      in.d     = zero(s3);

      auto              ambient = finite_algebra::product({in.a3, in.a4}, "A3 x A4", 1u << 22);
      std::set<element> seeds;
      for (int i = gens_d(rng); i > 0; --i) {
        seeds.insert(zero(ambient.size()));
      }
      auto f_set = oracle::closure(ambient, seeds);
      in.f       = box_set::for_algebra(ambient);
      for (element e : f_set) {
        in.f.add(in.f.point_box(e));
      }

      std::ostringstream where;
      where << "trial " << trial << " (m=" << m << ", h=" << h << ", k=" << k << ")";
      ++t.trials;
      filtered_output out;
      try {
        out = build_type_filtered(in);
      } catch (std::exception const& ex) {
        t.fail(where.str() + ": " + ex.what());
        continue;
      }

      // expected set from the type templates
      std::set<element> expected;
      std::size_t const sizes[4] = {s1, s2, s3, s4};
      std::size_t const total    = s1 * s2 * s3 * s4;
      for (element e = 0; e < total; ++e) {
        element c[4];
        element rest = e;
        for (int i = 3; i >= 0; --i) {
          c[i] = static_cast<element>(rest % sizes[i]);
          rest /= static_cast<element>(sizes[i]);
        }
        if (!f_set.contains(static_cast<element>(c[2] * s4 + c[3]))) {
          continue;
        }
        bool typed = (c[1] == in.zero2 && c[2] == in.a) || (c[0] == in.zero1 && c[1] == in.zero2)
                     || (c[0] == in.zero1 && c[2] == in.d) || c[3] == in.zero4;
        if (typed) {
          expected.insert(e);
        }
      }
      auto              got_v = out.universe.elements(1u << 20);
      std::set<element> got(got_v.begin(), got_v.end());
      if (got != expected) {
        t.fail(where.str() + ": element set differs from the type templates");
      } else if (!oracle::closed(out.product, got)) {
        t.fail(where.str() + ": not closed");
      }
    }
    return t;
  }

  tally certificate_recheck() {
    tally t;
    std::vector<std::pair<std::string, std::function<json()>>> emitters = {
        {"sharpness 3 2", [] { return certify_sharpness(3, 2); }},
        {"sharpness 5 3", [] { return certify_sharpness(5, 3); }},
        {"sharpness 6 2", [] { return certify_sharpness(6, 2); }},
        {"induction 5 2", [] { return certify_induction(5, 2); }},
        {"induction 6 3", [] { return certify_induction(6, 3); }},
        {"identity n-distributive",
         [] {
           return certify_identity({identity_family::n_distributive, 5, 2, 2, 5, {}}, true);
         }},
        {"identity q-chain-odd",
         [] {
           return certify_identity({identity_family::q_chain_odd, 4, 3, 2, 1, {}}, false);
         }},
        {"identity q-chain-even-swapped",
         [] {
           return certify_identity({identity_family::q_chain_even_swapped, 4, 2, 2, 1, {}}, false);
         }},
        {"level jonsson N:2:4", [] { return certify_level("N:2:4", "jonsson", 16); }},
        {"level hm I:4", [] { return certify_level("I:4", "hm", 16); }},
        {"level hm Nm:4", [] { return certify_level("Nm:4", "hm", 16); }},
        {"level day N:2:3", [] { return certify_level("N:2:3", "day", 16); }},
        {"level jonsson capped", [] { return certify_level("N:2:4", "jonsson", 3); }},
        {"search nu N:2:4", [] { return certify_search("N:2:4", "nu", 3); }},
        {"search nu N:2:3", [] { return certify_search("N:2:3", "nu", 3); }},
        {"search half-nu Nm:4", [] { return certify_search("Nm:4", "half-nu", 3); }},
        {"search majority dissent", [] { return certify_search("dissent", "nu", 3); }},
        {"toolkit check", [] { return certify_toolkit("sum:3:4", "check", 0, {}, 1); }},
        {"toolkit iterate", [] { return certify_toolkit("sum:2:3", "iterate", 0, {}, 3); }},
        {"toolkit compose", [] { return certify_toolkit("sum:2:3,5", "compose", 0, 1, 1); }},
        {"toolkit maltsev", [] { return certify_toolkit("sum:2:3", "maltsev", 0, {}, 1); }},
        {"toolkit nu", [] { return certify_toolkit("dissent", "nu", 0, 1, 1); }},
        {"toolkit arithmetical", [] { return certify_toolkit("dissent", "arithmetical", 0, 1, 1); }},
    };
    for (auto const& [name, emit] : emitters) {
      ++t.trials;
      try {
        auto cert = emit();
        // round trip through text so the recheck sees what a file would hold
        auto back = json::parse(cert.dump());
        auto r    = recheck_certificate(back);
        if (!r.ok) {
          t.fail(name + ": " + r.detail);
        }
      } catch (std::exception const& ex) {
        t.fail(name + ": " + ex.what());
      }
    }
    return t;
  }

}  // namespace props
