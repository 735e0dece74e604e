#ifndef ALGWIT_CLOSURE_HPP_
#define ALGWIT_CLOSURE_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "algwit/algebra.hpp"
#include "algwit/limits.hpp"
#include "algwit/term.hpp"

namespace algwit {

  struct closure_result {
    std::vector<element> elements;    // sorted ascending
    std::vector<term>    provenance;  // parallel to elements; empty unless tracked
    std::vector<element> generators;  // sorted, deduplicated; x_i names generators[i]
  };

  // Smallest subuniverse containing the generators. With track_terms every
  // element carries a term over x_0..x_{g-1} that evaluates to it when x_i is
  // sent to generators[i].
  closure_result subalgebra_closure(finite_algebra const&    alg,
                                    std::vector<element>     generators,
                                    bool                     track_terms,
                                    limits const&            lim = {});

  struct op_application {
    std::size_t          op = 0;
    std::vector<element> args;
    element              result = 0;
  };

  struct subuniverse_check {
    bool                          closed = true;
    std::optional<op_application> violation;
  };

  // Exhaustive closure test; the subset must be a subset of the universe.
  // Symmetric operations are checked on multisets only.
  subuniverse_check is_subuniverse(finite_algebra const&       alg,
                                   std::vector<element> const& subset,
                                   limits const&               lim = {});

  // Per-operation symmetry flags, cheap for products (a product operation is
  // symmetric when every factor's is). Used to prune tuple enumeration.
  std::vector<bool> symmetric_ops(finite_algebra const& alg);

}  // namespace algwit

#endif  // ALGWIT_CLOSURE_HPP_
