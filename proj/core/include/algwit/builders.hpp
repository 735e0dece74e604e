#ifndef ALGWIT_BUILDERS_HPP_
#define ALGWIT_BUILDERS_HPP_

#include <cstddef>
#include <vector>

#include "algwit/algebra.hpp"
#include "algwit/limits.hpp"

namespace algwit {

  // Chain 0 < 1 < ... < size-1 as a lattice: ops "join" (max), "meet" (min).
  finite_algebra make_chain_lattice(std::size_t size);

  // Term-reduct of the chain with the single m-ary operation
  //   u_{j,m}(x_1..x_m) = meet over |J| = j of (join over i in J of x_i),
  // which on a chain is the j-th smallest argument. Requires m >= 3,
  // 1 <= j <= m, chain_size >= 2.
  finite_algebra make_ujm_reduct(std::size_t chain_size, unsigned j, unsigned m);

  // One-element algebra carrying one operation of each given arity.
  finite_algebra make_trivial_algebra(std::vector<unsigned> const& arities);

  // Componentwise product of similar algebras. Throws cap_exceeded when the
  // universe exceeds lim.closure_cap; tables are kept only when they fit
  // lim.table_cap.
  // ({0..n-1}, x_1 + ... + x_arity mod n).
  finite_algebra make_sum_algebra(std::size_t n, unsigned arity);

  // Two-element algebra with the minority operation x+y+z and a 4-ary
  // operation returning the dissenting value when at least three arguments
  // agree and 0 on the 2-2 splits.
  finite_algebra make_dissent_fixture();

  finite_algebra direct_product(std::vector<finite_algebra> factors,
                                limits const&               lim = {});

}  // namespace algwit

#endif  // ALGWIT_BUILDERS_HPP_
