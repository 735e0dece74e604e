#ifndef ALGWIT_RELEXPR_HPP_
#define ALGWIT_RELEXPR_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "algwit/partition.hpp"
#include "algwit/relation.hpp"

namespace algwit {

  // Relation built from equivalence relations by meets with an equivalence,
  // composition and powers. Evaluated lazily on sets of elements, which stays
  // cheap on algebras far too large for dense matrices.
  class rel_expr {
   public:
    enum class kind { atom, meet, compose, power };

    static rel_expr atom(partition const& p, std::string name);
    // p meet e
    static rel_expr meet(partition const& p, std::string name, rel_expr e);
    // factors[0] o factors[1] o ...; no factors is the identity relation
    static rel_expr compose(std::vector<rel_expr> factors);
    static rel_expr power(rel_expr e, std::size_t k);

    kind type() const noexcept {
      return _node->type;
    }
    std::size_t size() const noexcept {
      return _node->size;
    }

    // {y : x R y for some x in from}
    element_set image(element_set const& from) const;
    element_set image_of(element x) const;

    // Dense matrix of the relation; used as the independent route.
    bin_relation to_relation() const;

    std::string to_string() const;

   private:
    struct node {
      kind                                 type = kind::atom;
      std::size_t                          size = 0;
      std::shared_ptr<partition const>     part;
      std::vector<std::vector<element>>    blocks;
      std::string                          name;
      std::vector<rel_expr>                children;
      std::size_t                          exponent = 0;
    };

    explicit rel_expr(std::shared_ptr<node const> n) : _node(std::move(n)) {}

    std::shared_ptr<node const> _node;
  };

  // Lexicographically least chain x = z_0, z_1, ..., z_k = y with
  // z_{i-1} steps[i-1] z_i, or nullopt.
  std::optional<std::vector<element>> witness_chain(element                       x,
                                                    element                       y,
                                                    std::vector<partition> const& steps);

}  // namespace algwit

#endif  // ALGWIT_RELEXPR_HPP_
