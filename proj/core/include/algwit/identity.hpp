#ifndef ALGWIT_IDENTITY_HPP_
#define ALGWIT_IDENTITY_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algwit/algebra.hpp"
#include "algwit/limits.hpp"
#include "algwit/partition.hpp"
#include "algwit/relexpr.hpp"

namespace algwit {

  enum class identity_family {
    n_distributive,
    n_alvin,
    power,
    q_power,
    q_power_shifted,
    q_power_j,
    q_chain_even,
    q_chain_odd,
    q_chain_even_swapped,
    q_chain_odd_swapped,
  };

  std::string               to_string(identity_family f);
  std::optional<identity_family> identity_family_from_string(std::string const& s);
  std::vector<identity_family>   all_identity_families();

  struct identity_params {
    identity_family            family = identity_family::n_distributive;
    unsigned                   m      = 3;
    unsigned                   q      = 2;
    unsigned                   j      = 2;
    unsigned                   n      = 1;
    std::optional<std::size_t> exponent;  // overrides the family's default
  };

  // Both sides of an instance. The left side is always outer meet the
  // composition of lhs_steps, which is what witness chains follow.
  struct identity_sides {
    rel_expr               lhs;
    rel_expr               rhs;
    partition              outer;
    std::vector<partition> lhs_steps;
  };

  identity_sides build_identity(identity_params const& params,
                                partition const&       alpha,
                                partition const&       beta,
                                partition const&       gamma);

  struct identity_instance {
    identity_params                            params;
    bool                                       holds = true;
    std::optional<std::pair<element, element>> counterexample;
    std::vector<element>                       witness;  // left-side chain for the pair
    std::string                                lhs_text;
    std::string                                rhs_text;
    std::size_t                                rows_checked = 0;
  };

  // Checks lhs subset of rhs. Without focus every row is checked and the
  // least violating pair is reported; with focus only that pair is decided
  // (holds == false iff the pair is in lhs and not in rhs).
  identity_instance check_identity(identity_params const&                     params,
                                   partition const&                           alpha,
                                   partition const&                           beta,
                                   partition const&                           gamma,
                                   std::optional<std::pair<element, element>> focus = {});

  // As above, after confirming that the three partitions are congruences.
  identity_instance check_identity(identity_params const& params,
                                   finite_algebra const&  alg,
                                   partition const&       alpha,
                                   partition const&       beta,
                                   partition const&       gamma,
                                   limits const&          lim = {});

  // Replays an instance with dense matrices: the counterexample must lie in
  // lhs and outside rhs, the witness must be a chain for lhs, and a claimed
  // inclusion must hold.
  bool recheck_identity(identity_instance const& inst,
                        partition const&         alpha,
                        partition const&         beta,
                        partition const&         gamma);

}  // namespace algwit

#endif  // ALGWIT_IDENTITY_HPP_
