#ifndef ALGWIT_PARTITION_HPP_
#define ALGWIT_PARTITION_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "algwit/algebra.hpp"
#include "algwit/limits.hpp"

namespace algwit {

  // Set partition of {0..size-1} in canonical form: block numbers appear in
  // order of first occurrence, so equal partitions are equal vectors.
  class partition {
   public:
    partition() = default;
    explicit partition(std::vector<std::uint32_t> block_of);

    static partition identity(std::size_t size);
    static partition total(std::size_t size);
    static partition from_blocks(std::size_t size, std::vector<std::vector<element>> const& blocks);

    std::size_t size() const noexcept {
      return _block.size();
    }
    std::size_t block_count() const noexcept {
      return _count;
    }
    std::uint32_t block_of(element e) const {
      return _block.at(e);
    }
    std::vector<std::uint32_t> const& block_ids() const noexcept {
      return _block;
    }
    bool related(element a, element b) const {
      return _block.at(a) == _block.at(b);
    }

    // Blocks as sorted element lists, ordered by least element.
    std::vector<std::vector<element>> blocks() const;

    friend bool operator==(partition const&, partition const&) = default;

   private:
    std::vector<std::uint32_t> _block;
    std::size_t                _count = 0;
  };

  partition partition_meet(partition const& p, partition const& q);

  // Join as equivalence relations (transitive closure of the union).
  partition equivalence_join(partition const& p, partition const& q);

  // Least congruence containing both inputs; both must be congruences.
  partition partition_join(finite_algebra const& alg, partition const& p, partition const& q);

  partition congruence_generated(finite_algebra const&                          alg,
                                 std::vector<std::pair<element, element>> const& pairs,
                                 limits const&                                  lim = {});

  // A translation that separates a related pair: op applied to args with
  // position replaced by a and by b gives unrelated results.
  struct compatibility_failure {
    std::size_t          op       = 0;
    std::size_t          position = 0;
    element              a        = 0;
    element              b        = 0;
    std::vector<element> args;
    element              image_a = 0;
    element              image_b = 0;
  };

  struct congruence_check {
    bool                                 ok = true;
    std::optional<compatibility_failure> failure;
  };

  congruence_check is_congruence(finite_algebra const& alg,
                                 partition const&      part,
                                 limits const&         lim = {});

  // Same test on the subalgebra with universe `subset` (sorted); part is a
  // partition of the positions of subset.
  congruence_check is_congruence_on(finite_algebra const&       alg,
                                    std::vector<element> const& subset,
                                    partition const&            part,
                                    limits const&               lim = {});

  // Restriction to a subuniverse of the product congruence given factorwise.
  // The result partitions positions in the sorted subuniverse.
  partition induced_product_congruence(factor_indexing const&        indexing,
                                       std::vector<partition> const& factor_parts,
                                       std::vector<element> const&   subuniverse);

}  // namespace algwit

#endif  // ALGWIT_PARTITION_HPP_
