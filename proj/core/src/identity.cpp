#include "algwit/identity.hpp"

#include <array>

#include "algwit/error.hpp"

namespace algwit {

  namespace {
    constexpr std::array<std::pair<identity_family, char const*>, 10> family_names{{
        {identity_family::n_distributive, "n-distributive"},
        {identity_family::n_alvin, "n-alvin"},
        {identity_family::power, "power"},
        {identity_family::q_power, "q-power"},
        {identity_family::q_power_shifted, "q-power-shifted"},
        {identity_family::q_power_j, "q-power-j"},
        {identity_family::q_chain_even, "q-chain-even"},
        {identity_family::q_chain_odd, "q-chain-odd"},
        {identity_family::q_chain_even_swapped, "q-chain-even-swapped"},
        {identity_family::q_chain_odd_swapped, "q-chain-odd-swapped"},
    }};

    void require(bool ok, std::string const& what) {
      if (!ok) {
        throw invalid_input("check_identity: " + what);
      }
    }

    unsigned ell(unsigned m) {
      return m % 2 == 1 ? (m + 1) / 2 : m / 2;
    }

    // first o second o first ... with count factors
    rel_expr alternate(rel_expr const& first, rel_expr const& second, std::size_t count,
                       std::size_t size) {
      if (count == 0) {
        return rel_expr::atom(partition::identity(size), "0");
      }
      std::vector<rel_expr> f;
      for (std::size_t i = 0; i < count; ++i) {
        f.push_back(i % 2 == 0 ? first : second);
      }
      return rel_expr::compose(std::move(f));
    }
  }  // namespace

  std::string to_string(identity_family f) {
    for (auto const& [k, name] : family_names) {
      if (k == f) {
        return name;
      }
    }
    return "?";
  }

  std::optional<identity_family> identity_family_from_string(std::string const& s) {
    for (auto const& [k, name] : family_names) {
      if (s == name) {
        return k;
      }
    }
    return std::nullopt;
  }

  std::vector<identity_family> all_identity_families() {
    std::vector<identity_family> out;
    for (auto const& entry : family_names) {
      out.push_back(entry.first);
    }
    return out;
  }

  identity_sides build_identity(identity_params const& params,
                                partition const&       alpha,
                                partition const&       beta,
                                partition const&       gamma) {
    require(alpha.size() == beta.size() && beta.size() == gamma.size(),
            "congruences of different sizes");
    require(alpha.size() > 0, "empty universe");
    auto const     fam = params.family;
    unsigned const m   = params.m;
    unsigned const q   = params.q;
    std::size_t    n   = alpha.size();
    bool const     q_family = fam != identity_family::n_distributive
                          && fam != identity_family::n_alvin;
    if (q_family) {
      require(m >= 3, "m must be at least 3");
      require(q >= 2, "q must be at least 2");
    }
    switch (fam) {
      case identity_family::q_power_shifted:
        require(q % 2 == 1, "q-power-shifted needs q odd");
        break;
      case identity_family::q_power_j:
        require(params.j >= 2 && params.j <= ell(m), "q-power-j needs 2 <= j <= l");
        break;
      case identity_family::q_chain_even:
      case identity_family::q_chain_even_swapped:
        require(q % 2 == 0, "q-chain-even needs q even");
        break;
      case identity_family::q_chain_odd:
      case identity_family::q_chain_odd_swapped:
        require(q % 2 == 1, "q-chain-odd needs q odd");
        break;
      default:
        break;
    }

    partition const ab_p = partition_meet(alpha, beta);
    partition const ag_p = partition_meet(alpha, gamma);
    auto const      a    = rel_expr::atom(alpha, "a");
    auto const      b    = rel_expr::atom(beta, "b");
    auto const      g    = rel_expr::atom(gamma, "g");
    auto const      ab   = rel_expr::atom(ab_p, "ab");
    auto const      ag   = rel_expr::atom(ag_p, "ag");
    bool const      even = q % 2 == 0;

    identity_sides sides{a, a, alpha, {}};
    switch (fam) {
      case identity_family::n_distributive:
      case identity_family::n_alvin:
      case identity_family::power:
        sides.lhs_steps = {beta, gamma};
        break;
      case identity_family::q_power:
      case identity_family::q_power_shifted:
      case identity_family::q_power_j:
        sides.lhs_steps.push_back(beta);
        for (unsigned i = 0; i + 2 < q; ++i) {
          sides.lhs_steps.push_back(i % 2 == 0 ? ag_p : ab_p);
        }
        sides.lhs_steps.push_back(even ? gamma : beta);
        break;
      default:
        for (unsigned i = 0; i < q; ++i) {
          sides.lhs_steps.push_back(i % 2 == 0 ? beta : gamma);
        }
        break;
    }
    {
      std::vector<rel_expr> f;
      for (auto const& s : sides.lhs_steps) {
        if (s == beta) {
          f.push_back(b);
        } else if (s == gamma) {
          f.push_back(g);
        } else if (s == ag_p) {
          f.push_back(ag);
        } else {
          f.push_back(ab);
        }
      }
      // steps equal as partitions are interchangeable, so naming by value is safe
      sides.lhs = rel_expr::meet(alpha, "a", rel_expr::compose(std::move(f)));
    }

    auto exp_or = [&](std::size_t dflt) { return params.exponent.value_or(dflt); };
    auto q_block = [&]() {
      // a(g o b o ... q factors)
      return rel_expr::meet(alpha, "a", alternate(g, b, q, n));
    };
    switch (fam) {
      case identity_family::n_distributive:
        sides.rhs = alternate(ab, ag, exp_or(params.n), n);
        break;
      case identity_family::n_alvin:
        sides.rhs = alternate(ag, ab, exp_or(params.n), n);
        break;
      case identity_family::power:
        sides.rhs = rel_expr::power(rel_expr::meet(alpha, "a", alternate(g, b, 2, n)),
                                    exp_or(m - 2));
        break;
      case identity_family::q_power:
        sides.rhs = rel_expr::power(q_block(), exp_or(m - 2));
        break;
      case identity_family::q_power_j:
        sides.rhs = rel_expr::power(q_block(), exp_or(m - 2 * params.j + 2));
        break;
      case identity_family::q_power_shifted: {
        auto inner = rel_expr::meet(alpha, "a", alternate(b, ag, q - 2, n));
        sides.rhs  = rel_expr::compose(
            {ag, rel_expr::power(rel_expr::compose({inner, ag}), exp_or(m - 2))});
        break;
      }
      case identity_family::q_chain_even:
        sides.rhs = alternate(ab, ag, exp_or(std::size_t{m - 2} * q), n);
        break;
      case identity_family::q_chain_even_swapped:
        sides.rhs = alternate(ag, ab, exp_or(std::size_t{m - 2} * q), n);
        break;
      case identity_family::q_chain_odd:
        sides.rhs = alternate(ab, ag, exp_or(1 + std::size_t{m - 2} * (q - 1)), n);
        break;
      case identity_family::q_chain_odd_swapped:
        sides.rhs = alternate(ag, ab, exp_or(1 + std::size_t{m - 2} * (q - 1)), n);
        break;
    }
    return sides;
  }

  identity_instance check_identity(identity_params const&                     params,
                                   partition const&                           alpha,
                                   partition const&                           beta,
                                   partition const&                           gamma,
                                   std::optional<std::pair<element, element>> focus) {
    auto const        sides = build_identity(params, alpha, beta, gamma);
    identity_instance inst;
    inst.params   = params;
    inst.lhs_text = sides.lhs.to_string();
    inst.rhs_text = sides.rhs.to_string();

    auto record = [&](element x, element y) {
      inst.holds          = false;
      inst.counterexample = std::make_pair(x, y);
      auto chain          = witness_chain(x, y, sides.lhs_steps);
      if (!chain) {
        throw verification_failed("check_identity: counterexample has no left-side chain");
      }
      inst.witness = std::move(*chain);
    };

    if (focus) {
      auto [x, y] = *focus;
      if (x >= alpha.size() || y >= alpha.size()) {
        throw invalid_input("check_identity: focus pair out of range");
      }
      inst.rows_checked = 1;
      if (sides.lhs.image_of(x).test(y) && !sides.rhs.image_of(x).test(y)) {
        record(x, y);
      }
      return inst;
    }
    for (element x = 0; x < alpha.size(); ++x) {
      ++inst.rows_checked;
      auto left = sides.lhs.image_of(x);
      left.reset(x);
      if (left.none()) {
        continue;
      }
      auto extra = left - sides.rhs.image_of(x);
      if (extra.any()) {
        record(x, static_cast<element>(extra.find_first()));
        break;
      }
    }
    return inst;
  }

  identity_instance check_identity(identity_params const& params,
                                   finite_algebra const&  alg,
                                   partition const&       alpha,
                                   partition const&       beta,
                                   partition const&       gamma,
                                   limits const&          lim) {
    char const* names[] = {"alpha", "beta", "gamma"};
    partition const* parts[] = {&alpha, &beta, &gamma};
    for (int i = 0; i < 3; ++i) {
      if (parts[i]->size() != alg.size()) {
        throw invalid_input(std::string("check_identity: ") + names[i]
                            + " does not match the algebra size");
      }
      if (!is_congruence(alg, *parts[i], lim).ok) {
        throw invalid_input(std::string("check_identity: ") + names[i]
                            + " is not a congruence");
      }
    }
    return check_identity(params, alpha, beta, gamma);
  }

  bool recheck_identity(identity_instance const& inst,
                        partition const&         alpha,
                        partition const&         beta,
                        partition const&         gamma) {
    auto const   sides = build_identity(inst.params, alpha, beta, gamma);
    bin_relation lhs   = sides.lhs.to_relation();
    bin_relation rhs   = sides.rhs.to_relation();
    if (inst.holds) {
      return check_inclusion(lhs, rhs).holds;
    }
    if (!inst.counterexample) {
      return false;
    }
    auto [x, y] = *inst.counterexample;
    if (!lhs.test(x, y) || rhs.test(x, y)) {
      return false;
    }
    auto const& w = inst.witness;
    if (w.size() != sides.lhs_steps.size() + 1 || w.front() != x || w.back() != y
        || !alpha.related(x, y)) {
      return false;
    }
    for (std::size_t i = 0; i < sides.lhs_steps.size(); ++i) {
      if (!sides.lhs_steps[i].related(w[i], w[i + 1])) {
        return false;
      }
    }
    return true;
  }

}  // namespace algwit
