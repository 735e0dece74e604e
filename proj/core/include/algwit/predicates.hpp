#ifndef ALGWIT_PREDICATES_HPP_
#define ALGWIT_PREDICATES_HPP_

#include <cstddef>

#include "algwit/algebra.hpp"

namespace algwit {

  // True iff op(args) == zero whenever at least k arguments equal zero.
  bool is_k_absorbing(finite_algebra const& alg, std::size_t op, element zero, unsigned k);

  // True iff every element is k-absorbing for op. An (arity-1)-majority
  // operation is a near-unanimity operation; an arity-majority one is
  // idempotent.
  bool is_k_majority(finite_algebra const& alg, std::size_t op, unsigned k);

  // Invariance under all argument permutations, decided on the generators
  // (1 2) and (1 2 ... m) of the symmetric group.
  bool is_symmetrical(finite_algebra const& alg, std::size_t op);

  inline bool is_near_unanimity(finite_algebra const& alg, std::size_t op) {
    return alg.arity(op) >= 2 && is_k_majority(alg, op, alg.arity(op) - 1);
  }

}  // namespace algwit

#endif  // ALGWIT_PREDICATES_HPP_
