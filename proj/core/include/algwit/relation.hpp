#ifndef ALGWIT_RELATION_HPP_
#define ALGWIT_RELATION_HPP_

#include <boost/dynamic_bitset.hpp>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "algwit/algebra.hpp"
#include "algwit/partition.hpp"

namespace algwit {

  using element_set = boost::dynamic_bitset<std::uint64_t>;

  // Dense binary relation on {0..size-1}, one bit row per element.
  class bin_relation {
   public:
    bin_relation() = default;
    explicit bin_relation(std::size_t size) : _rows(size, element_set(size)) {}

    std::size_t size() const noexcept {
      return _rows.size();
    }
    bool test(element a, element b) const {
      return _rows.at(a).test(b);
    }
    void set(element a, element b, bool value = true) {
      _rows.at(a).set(b, value);
    }
    element_set const& row(element a) const {
      return _rows.at(a);
    }
    element_set& row(element a) {
      return _rows.at(a);
    }
    std::size_t pair_count() const;

    friend bool operator==(bin_relation const&, bin_relation const&) = default;

   private:
    std::vector<element_set> _rows;
  };

  bin_relation rel_identity(std::size_t size);
  bin_relation rel_full(std::size_t size);
  bin_relation rel_of_partition(partition const& part);
  bin_relation rel_compose(bin_relation const& r, bin_relation const& s);
  bin_relation rel_meet(bin_relation const& r, bin_relation const& s);
  bin_relation rel_converse(bin_relation const& r);
  // k-fold composition; k = 0 gives the identity relation.
  bin_relation rel_power(bin_relation const& r, std::size_t k);

  // first o second o first o ... with factor_count factors. Zero factors is
  // the identity relation, one factor is first alone.
  struct chain_pattern {
    bin_relation first;
    bin_relation second;
    std::size_t  factor_count = 0;
  };

  bin_relation eval_chain(chain_pattern const& pattern);

  struct inclusion_result {
    bool                                     holds = true;
    std::optional<std::pair<element, element>> counterexample;  // least violating pair
  };

  inclusion_result check_inclusion(bin_relation const& lhs, bin_relation const& rhs);

  struct alternating_chain {
    std::vector<element> elements;  // start, ..., goal
    bool                 starts_with_first = true;

    std::size_t factors() const noexcept {
      return elements.empty() ? 0 : elements.size() - 1;
    }
  };

  // Minimal alternating path from start to goal, trying both starting
  // relations; ties are broken by the lexicographically least element
  // sequence (then by starting with first). Returns nullopt when goal is
  // unreachable; throws cap_exceeded when the shortest path needs more than
  // cap factors.
  std::optional<alternating_chain> shortest_alternating_chain(element             start,
                                                              element             goal,
                                                              bin_relation const& first,
                                                              bin_relation const& second,
                                                              std::size_t         cap);

}  // namespace algwit

#endif  // ALGWIT_RELATION_HPP_
