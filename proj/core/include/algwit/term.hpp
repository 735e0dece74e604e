#ifndef ALGWIT_TERM_HPP_
#define ALGWIT_TERM_HPP_

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "algwit/algebra.hpp"

namespace algwit {

  // Immutable term: a variable x_i, or an operation symbol (an index into
  // the signature of the algebras it is evaluated in) applied to subterms.
  // Subterms are shared, so terms produced by closures form a DAG.
  class term {
   public:
    term() : term(variable(0)) {}

    static term variable(std::size_t index);
    static term apply(std::size_t op, std::vector<term> args);

    bool is_variable() const noexcept {
      return _node->is_variable;
    }
    std::size_t variable_index() const noexcept {
      return _node->index;
    }
    std::size_t op() const noexcept {
      return _node->index;
    }
    std::span<term const> args() const noexcept {
      return _node->args;
    }

    // One more than the largest variable index occurring in the term.
    std::size_t variable_count() const;
    std::size_t depth() const;

    // Value under one assignment of the variables.
    element evaluate(finite_algebra const& alg, std::span<element const> assignment) const;

    // Values under every assignment in alg^arity, indexed by the mixed-radix
    // code of the assignment (first variable most significant). Subterm
    // sharing is exploited, so DAG-shaped terms stay cheap.
    std::vector<element> evaluate_all(finite_algebra const& alg, std::size_t arity) const;

    // Substitute terms for variables: x_i -> replacement[i].
    term substitute(std::span<term const> replacement) const;

    // Check that every operation symbol exists in alg with matching arity.
    bool well_formed_for(finite_algebra const& alg) const;

    std::string to_string(finite_algebra const* signature = nullptr) const;

    void const* identity() const noexcept {
      return _node.get();
    }

    friend bool operator==(term const& a, term const& b);

   private:
    struct node {
      bool              is_variable = true;
      std::size_t       index       = 0;
      std::vector<term> args;
    };

    explicit term(std::shared_ptr<node const> n) : _node(std::move(n)) {}

    std::shared_ptr<node const> _node;
  };

}  // namespace algwit

#endif  // ALGWIT_TERM_HPP_
