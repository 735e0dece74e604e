#ifndef ALGWIT_BOXSET_HPP_
#define ALGWIT_BOXSET_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "algwit/algebra.hpp"
#include "algwit/closure.hpp"
#include "algwit/limits.hpp"

namespace algwit {

  // A product of per-leaf value sets; bit v of masks[l] means value v is
  // allowed at leaf l. Leaves hold at most 64 elements.
  struct box {
    std::vector<std::uint64_t> masks;

    bool contains(box const& other) const;
    bool intersects(box const& other) const;
    friend bool operator==(box const&, box const&) = default;
  };

  // A subset of a product universe written as a union of boxes over the
  // leaf factors. Flat element indices follow the product's own encoding.
  class box_set {
   public:
    box_set() = default;
    explicit box_set(std::vector<std::size_t> leaf_sizes);

    static box_set for_algebra(finite_algebra const& alg);

    std::vector<std::size_t> const& leaf_sizes() const noexcept {
      return _indexing.factor_sizes();
    }
    factor_indexing const& indexing() const noexcept {
      return _indexing;
    }
    std::vector<box> const& boxes() const noexcept {
      return _boxes;
    }

    box full_box() const;
    box point_box(element e) const;

    // Adds a box unless an existing box covers it; boxes it covers are dropped.
    void add(box b);
    void add_all(box_set const& other);

    bool contains(element e) const;
    std::vector<element> elements(std::size_t cap) const;

   private:
    factor_indexing  _indexing;
    std::vector<box> _boxes;
  };

  // Closure test for a box union inside a product. Operations are applied to
  // whole boxes leaf by leaf, so the cost depends on the number of boxes and
  // not on the number of elements. Agrees with is_subuniverse.
  subuniverse_check is_subuniverse_boxes(finite_algebra const& alg,
                                         box_set const&        set,
                                         limits const&         lim = {});

}  // namespace algwit

#endif  // ALGWIT_BOXSET_HPP_
