#ifndef ALGWIT_TERMSEARCH_HPP_
#define ALGWIT_TERMSEARCH_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "algwit/algebra.hpp"
#include "algwit/limits.hpp"
#include "algwit/term.hpp"

namespace algwit {

  // An identification pattern: position p of a term receives pattern
  // variable pat[p]. Pattern variables are read as x, y, z, u in examples.
  using pattern = std::vector<unsigned>;

  // lhs_term(lhs) = rhs_term(rhs), or lhs_term(lhs) = pattern variable
  // rhs_var when rhs_term is empty. Quantified over all values of the
  // pattern variables.
  struct term_equation {
    std::string                label;
    std::size_t                lhs_term = 0;
    pattern                    lhs;
    std::optional<std::size_t> rhs_term;
    pattern                    rhs;
    unsigned                   rhs_var = 0;
  };

  unsigned pattern_variable_count(term_equation const& eq);

  struct equation_violation {
    std::size_t          equation = 0;
    std::size_t          algebra  = 0;
    std::vector<element> assignment;  // values of the pattern variables
    element              lhs_value = 0;
    element              rhs_value = 0;
  };

  // Exhaustive check over every assignment of the pattern variables.
  std::optional<equation_violation> verify_term_identity(std::span<term const>          terms,
                                                         finite_algebra const&          alg,
                                                         std::span<term_equation const> eqs);
  std::optional<equation_violation> verify_term_identity(
      std::span<term const>              terms,
      std::vector<finite_algebra> const& gens,
      std::span<term_equation const>     eqs);

  // Standard schemas, term slot 0.
  std::vector<term_equation> near_unanimity_equations(unsigned arity);
  std::vector<term_equation> lone_dissent_equations(unsigned arity);
  std::vector<term_equation> maltsev_equations();
  std::vector<term_equation> idempotence_equations(unsigned arity);
  // Arity m + 2.
  std::vector<term_equation> half_nu_equations(unsigned m);
  // Arity 2m, pattern variables x, y, z.
  std::vector<term_equation> dissent_unanimity_equations(unsigned m);

  // Subalgebra of the product of all A_i^(A_i^g) generated by the g
  // projections. Elements are sorted by value vector.
  struct free_algebra {
    std::vector<finite_algebra> gens;
    unsigned                    generators = 0;
    // coordinate c is the assignment points[c] of generating algebra owner[c]
    std::vector<std::size_t>          owner;
    std::vector<std::vector<element>> points;
    std::vector<std::uint8_t>         data;  // size() rows of width() values
    std::vector<term>                 provenance;

    std::size_t width() const noexcept {
      return owner.size();
    }
    std::size_t size() const noexcept {
      return provenance.size();
    }
    std::span<std::uint8_t const> value(std::size_t i) const {
      return {data.data() + i * width(), width()};
    }
    std::size_t projection(unsigned v) const;
    std::size_t coordinate(std::size_t algebra, std::span<element const> point) const;
  };

  free_algebra build_free_algebra(std::vector<finite_algebra> gens,
                                  unsigned                    g,
                                  limits const&               lim = {});

  struct node_constraint {
    pattern  pat;
    unsigned var = 0;
  };

  // t_i(from) = t_{i+1}(to)
  struct edge_rule {
    pattern from;
    pattern to;
  };

  struct chain_scheme {
    std::string                  name;
    unsigned                     generators = 3;
    unsigned                     first_index = 0;  // 0 for t_0..t_n, 1 for t_1..t_n
    std::vector<node_constraint> every;
    std::vector<node_constraint> first;
    std::vector<node_constraint> last;
    edge_rule                    even;  // used from t_i with i even
    edge_rule                    odd;
  };

  chain_scheme jonsson_scheme();
  chain_scheme alvin_scheme();
  chain_scheme day_scheme();
  chain_scheme hagemann_mitschke_scheme();
  chain_scheme directed_jonsson_scheme();
  chain_scheme directed_minority_scheme();
  // "jonsson", "alvin", "day", "hm", "directed-jonsson", "directed-minority"
  chain_scheme chain_scheme_by_name(std::string const& name);
  std::vector<std::string> chain_scheme_names();

  // Equations of the scheme for the chain t_first..t_level, slot s being
  // t_{first_index + s}.
  std::vector<term_equation> chain_equations(chain_scheme const& scheme, unsigned level);

  enum class search_verdict { found, none, cap };
  std::string to_string(search_verdict v);

  struct chain_result {
    std::string          scheme;
    search_verdict       verdict = search_verdict::none;
    unsigned             level   = 0;
    unsigned             level_cap = 0;
    std::vector<term>    witness;
    std::vector<std::size_t> witness_elements;
    std::size_t          free_size  = 0;
    std::size_t          candidates = 0;
    std::size_t          layers     = 0;
  };

  // Minimal level n with witness chain, lexicographically least among the
  // minimal ones. verdict none means no level exists at all; cap means no
  // chain up to level_cap.
  chain_result chain_level(free_algebra const& fa, chain_scheme const& scheme, unsigned level_cap);
  chain_result chain_level(std::vector<finite_algebra> const& gens,
                           chain_scheme const&                scheme,
                           unsigned                           level_cap,
                           limits const&                      lim = {});

  struct absorption_row {
    pattern  pat;
    unsigned out = 0;
  };

  struct absorption_link {
    pattern lhs;
    pattern rhs;
  };

  struct absorption_scheme {
    std::string                  name;
    unsigned                     arity          = 3;
    unsigned                     pattern_vars   = 2;
    std::vector<absorption_row>  rows;
    std::vector<absorption_link> links;
  };

  absorption_scheme near_unanimity_scheme(unsigned arity);
  absorption_scheme lone_dissent_scheme(unsigned arity);
  absorption_scheme half_nu_scheme(unsigned m);
  absorption_scheme dissent_unanimity_scheme(unsigned m);
  // "nu", "lone-dissent" with the arity; "half-nu", "dissent-unanimity" with m
  absorption_scheme absorption_scheme_by_name(std::string const& name, unsigned parameter);
  std::vector<std::string> absorption_scheme_names();
  std::vector<term_equation> absorption_equations(absorption_scheme const& scheme);

  // A projection of the search space onto the coordinates coming from one
  // generating algebra and, when assignment is set, one assignment of the
  // pattern variables. No generated vector satisfies the projected
  // constraints, so no term exists.
  struct absorption_refutation {
    std::size_t                         algebra = 0;
    std::optional<std::vector<element>> assignment;
    std::size_t                         closure_size = 0;
  };

  struct absorption_result {
    std::string                          scheme;
    unsigned                             arity   = 0;
    search_verdict                       verdict = search_verdict::none;
    std::optional<term>                  witness;
    std::optional<absorption_refutation> refutation;
    std::size_t                          coordinates = 0;
    std::size_t                          explored    = 0;
  };

  absorption_result absorption_search(std::vector<finite_algebra> const& gens,
                                      absorption_scheme const&           scheme,
                                      limits const&                      lim = {});

  // Replays a refutation: regenerates the projected closure and confirms that
  // no vector meets the projected constraints.
  bool recheck_refutation(std::vector<finite_algebra> const& gens,
                          absorption_scheme const&           scheme,
                          absorption_refutation const&       ref,
                          limits const&                      lim = {});

  // Lone-dissent toolkit. Terms are given with their arities; d has arity
  // m + 1, e has arity n + 1.
  term ld_compose(term const& d, unsigned d_arity, term const& e, unsigned e_arity);
  term ld_iterate(term const& d, unsigned d_arity, unsigned k);
  term ld_maltsev(term const& d, unsigned d_arity);
  // d of arity m + 1 and e of arity m + 2; the result has arity m + 2.
  term ld_near_unanimity(term const& d, unsigned d_arity, term const& e, unsigned e_arity);

  struct toolkit_step {
    std::string                       claim;
    term                              result;
    unsigned                          arity = 0;
    std::string                       schema_kind;  // lone-dissent, nu or maltsev
    std::vector<term_equation>        schema;
    std::optional<equation_violation> violation;
    bool passed() const noexcept {
      return !violation.has_value();
    }
  };

  struct arithmetical_report {
    unsigned                  m = 0, n = 0;  // d has arity m + 1, e has arity n + 1
    unsigned                  k = 0, h = 0;  // k m and h n differ by one
    std::vector<toolkit_step> steps;
    std::optional<term>       majority;
    std::optional<term>       maltsev;
    bool                      passed = false;
  };

  // Equations of a named schema: "lone-dissent", "nu", "maltsev",
  // "idempotent", "half-nu" (arity m + 2), "dissent-unanimity" (arity 2m).
  std::vector<term_equation> schema_equations(std::string const& kind, unsigned arity);

  // Checks that d is a lone-dissent term of the given arity on every algebra,
  // throwing hypothesis_failed naming the first failing equation otherwise.
  void require_lone_dissent(std::vector<finite_algebra> const& gens,
                            term const&                        d,
                            unsigned                           arity);

  // Coprime m, n: iterate to arities km + 1 and hn + 1 differing by one,
  // build the near-unanimity composite and the Maltsev term, then derive a
  // majority term by absorption search.
  arithmetical_report arithmetical_pipeline(std::vector<finite_algebra> const& gens,
                                            term const&                        d,
                                            unsigned                           d_arity,
                                            term const&                        e,
                                            unsigned                           e_arity,
                                            limits const&                      lim = {});

}  // namespace algwit

#endif  // ALGWIT_TERMSEARCH_HPP_
