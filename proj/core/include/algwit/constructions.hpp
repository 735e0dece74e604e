#ifndef ALGWIT_CONSTRUCTIONS_HPP_
#define ALGWIT_CONSTRUCTIONS_HPP_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "algwit/algebra.hpp"
#include "algwit/boxset.hpp"
#include "algwit/identity.hpp"
#include "algwit/limits.hpp"
#include "algwit/partition.hpp"

namespace algwit {

  struct sharpness_params {
    unsigned m = 3;
    unsigned q = 2;

    unsigned ell() const noexcept {
      return m % 2 == 1 ? (m + 1) / 2 : m / 2;
    }
    bool m_odd() const noexcept {
      return m % 2 == 1;
    }
    bool q_odd() const noexcept {
      return q % 2 == 1;
    }
    void validate() const;
  };

  // The interval partitions {{q,q-1},{q-2,q-3},...} and
  // {{q},{q-1,q-2},{q-3,q-4},...} of {0..q}.
  std::pair<partition, partition> beta_gamma_star(unsigned q);

  // ---- type-filtered subalgebras ------------------------------------------

  enum class type_tag { I, II, III, IV };

  std::string to_string(type_tag t);

  struct filtered_input {
    finite_algebra a1, a2, a3, a4;
    element        zero1 = 0, zero2 = 0, zero4 = 0;
    unsigned       h = 1, k = 1;
    element        a = 0, d = 0;  // elements of a3
    box_set        f;             // subuniverse of a3 x a4, over its leaves
  };

  struct filtered_output {
    finite_algebra product;   // a1 x a2 x a3 x a4
    box_set        universe;  // over the leaves of product
  };

  // Checks every hypothesis (throwing hypothesis_failed with the failing
  // name), builds the set of elements of types I-IV whose last two
  // coordinates lie in F, and confirms that it is closed.
  filtered_output build_type_filtered(filtered_input const& in, limits const& lim = {});

  // Templates satisfied by an element of a1 x a2 x a3 x a4 (membership of the
  // last two coordinates in F is not part of the tag).
  std::set<type_tag> type_filtered_tags(filtered_input const& in, element e);

  // ---- punctured power --------------------------------------------------------

  struct punctured_power {
    finite_algebra algebra;   // u_{2,m} reduct of C_2^{m-1}
    box_set        universe;  // everything except the top tuple
  };

  punctured_power build_punctured_power(unsigned m, limits const& lim = {});

  // ---- sharpness witness -------------------------------------------------------------

  struct sharpness_witness {
    sharpness_params         params;
    finite_algebra           product;      // P(m,q), one leaf per factor
    std::vector<std::string> coordinates;  // what each factor is
    box_set                  good;         // good elements of P
    std::vector<element>     universe;     // sorted elements of B(m,q)
    partition                alpha, beta, gamma;  // on positions in universe
    std::vector<partition>   alpha_star, beta_star, gamma_star;  // per factor
    std::size_t              a = 0, d = 0;  // positions of a and d
    std::optional<std::size_t> c;           // position of c, q = 2 only

    std::optional<std::size_t> position_of(element product_element) const;
    std::vector<element>       tuple_of(std::size_t position) const;
    std::optional<std::size_t> position_of_tuple(std::vector<element> const& tuple) const;
  };

  sharpness_witness build_sharpness_witness(sharpness_params const& params, limits const& lim = {});

  // a, f_1, ..., f_{2m-5}, d as positions in B(m,2); consecutive elements are
  // related alternately by alpha beta and alpha gamma, starting with beta.
  std::vector<std::size_t> canonical_witness_chain(sharpness_witness const& w);

  struct sharpness_report {
    sharpness_params               params;
    bool                           closed = false;
    std::optional<std::size_t>     c_witness;  // c in beta o gamma, q = 2
    std::vector<identity_instance> instances;  // q-power, plus power or q-power-shifted
    bool                           all_fail = false;
  };

  sharpness_report verify_sharpness(sharpness_witness const& w);

  // ---- generators ---------------------------------------------------------

  // N^{2,m}, ..., N^{l,m} on {0,1}.
  std::vector<finite_algebra> nm_generators(unsigned m);

  enum class im_variant { i, f };

  // Two-element algebra with operations i(x,y) = xy' (or f(x,y,z) = x(y'+z))
  // and u_{2,m}.
  finite_algebra im_generator(unsigned m, im_variant variant);

  // ---- descent induction ------------------------------------------------

  struct induction_state {
    unsigned                   j = 0;
    std::string                step;      // first, second or third
    finite_algebra             a3;        // A_3^j
    finite_algebra             ambient;   // A_3^j x N^{2,m}
    box_set                    f;         // F^j over the leaves of ambient
    std::vector<element>       universe;  // sorted elements of F^j
    partition                  alpha, beta, gamma;
    element                    a = 0, d = 0;  // a^j, d^j in A_3^j
    std::vector<element>       chain;         // c_1^j .. c_{q-1}^j in A_3^j
    identity_instance          failure;       // q-power-j at j for ((a,1),(d,1))
    std::vector<std::string>   checks;        // conditions confirmed
  };

  // Runs the construction for j = l down to 2, checking (*), (**), (***) and
  // the failure of q-power-j at every stage. Throws verification_failed naming
  // the step and condition on any failure.
  std::vector<induction_state> run_descent_induction(sharpness_params const& params,
                                                      limits const&           lim = {});

}  // namespace algwit

#endif  // ALGWIT_CONSTRUCTIONS_HPP_
