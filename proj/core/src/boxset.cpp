#include "algwit/boxset.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <optional>

#include "algwit/error.hpp"
#include "detail/semi_naive.hpp"

namespace algwit {

  bool box::contains(box const& other) const {
    for (std::size_t l = 0; l < masks.size(); ++l) {
      if ((other.masks[l] & ~masks[l]) != 0) {
        return false;
      }
    }
    return true;
  }

  bool box::intersects(box const& other) const {
    for (std::size_t l = 0; l < masks.size(); ++l) {
      if ((other.masks[l] & masks[l]) == 0) {
        return false;
      }
    }
    return true;
  }

  box_set::box_set(std::vector<std::size_t> leaf_sizes) : _indexing(std::move(leaf_sizes)) {
    for (auto s : _indexing.factor_sizes()) {
      if (s > 64) {
        throw invalid_input("box_set: leaf factors may have at most 64 elements");
      }
    }
  }

  box_set box_set::for_algebra(finite_algebra const& alg) {
    std::vector<std::size_t> sizes;
    for (auto const* leaf : leaf_factors(alg)) {
      sizes.push_back(leaf->size());
    }
    return box_set(std::move(sizes));
  }

  box box_set::full_box() const {
    box b;
    for (auto s : leaf_sizes()) {
      b.masks.push_back(s == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << s) - 1);
    }
    return b;
  }

  box box_set::point_box(element e) const {
    box b;
    for (std::size_t l = 0; l < leaf_sizes().size(); ++l) {
      b.masks.push_back(std::uint64_t{1} << _indexing.component(e, l));
    }
    return b;
  }

  void box_set::add(box b) {
    if (b.masks.size() != leaf_sizes().size()) {
      throw invalid_input("box_set::add: box has the wrong number of leaves");
    }
    for (auto m : b.masks) {
      if (m == 0) {
        return;
      }
    }
    for (auto const& old : _boxes) {
      if (old.contains(b)) {
        return;
      }
    }
    std::erase_if(_boxes, [&](box const& old) { return b.contains(old); });
    _boxes.push_back(std::move(b));
  }

  void box_set::add_all(box_set const& other) {
    for (auto const& b : other._boxes) {
      add(b);
    }
  }

  bool box_set::contains(element e) const {
    if (e >= _indexing.size()) {
      return false;
    }
    return std::any_of(_boxes.begin(), _boxes.end(), [&](box const& b) {
      for (std::size_t l = 0; l < b.masks.size(); ++l) {
        if (((b.masks[l] >> _indexing.component(e, l)) & 1) == 0) {
          return false;
        }
      }
      return true;
    });
  }

  std::vector<element> box_set::elements(std::size_t cap) const {
    std::vector<element> out;
    std::size_t const    leaves = leaf_sizes().size();
    std::vector<element> tuple(leaves);
    for (auto const& b : _boxes) {
      std::vector<std::vector<element>> values(leaves);
      for (std::size_t l = 0; l < leaves; ++l) {
        for (std::uint64_t m = b.masks[l]; m != 0; m &= m - 1) {
          values[l].push_back(static_cast<element>(std::countr_zero(m)));
        }
      }
      std::vector<std::size_t> pos(leaves, 0);
      while (true) {
        for (std::size_t l = 0; l < leaves; ++l) {
          tuple[l] = values[l][pos[l]];
        }
        out.push_back(static_cast<element>(_indexing.to_index(tuple)));
        if (out.size() > 4 * cap + 1024) {
          std::sort(out.begin(), out.end());
          out.erase(std::unique(out.begin(), out.end()), out.end());
          if (out.size() > cap) {
            throw cap_exceeded("box_set::elements: element cap reached", out.size());
          }
        }
        std::size_t l = leaves;
        while (l-- > 0) {
          if (++pos[l] < values[l].size()) {
            break;
          }
          pos[l] = 0;
        }
        if (l == static_cast<std::size_t>(-1)) {
          break;
        }
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.size() > cap) {
      throw cap_exceeded("box_set::elements: element cap reached", out.size());
    }
    return out;
  }

  namespace {
    // Returns a point of q outside the union of cands, if there is one.
    std::optional<box> uncovered_point(box q, std::vector<box const*> cands) {
      std::erase_if(cands, [&](box const* c) { return !c->intersects(q); });
      if (cands.empty()) {
        for (auto& m : q.masks) {
          m &= (~m + 1);
        }
        return q;
      }
      for (auto const* c : cands) {
        if (c->contains(q)) {
          return std::nullopt;
        }
      }
      box const& c = *cands.front();
      for (std::size_t l = 0; l < q.masks.size(); ++l) {
        std::uint64_t outside = q.masks[l] & ~c.masks[l];
        if (outside != 0) {
          box inner = q;
          inner.masks[l] &= c.masks[l];
          box outer = q;
          outer.masks[l] = outside;
          if (auto p = uncovered_point(std::move(inner), cands)) {
            return p;
          }
          return uncovered_point(std::move(outer), std::move(cands));
        }
      }
      return std::nullopt;
    }

    struct leaf_op_key {
      std::size_t                leaf;
      std::size_t                op;
      std::vector<std::uint64_t> masks;
      auto operator<=>(leaf_op_key const&) const = default;
    };

    // Calls f(args) for every tuple with args[p] in masks[p]; stops when f
    // returns false.
    template <typename F>
    void for_each_in_masks(std::vector<std::uint64_t> const& masks, F&& f) {
      std::size_t const                  r = masks.size();
      std::vector<std::vector<element>>  values(r);
      for (std::size_t p = 0; p < r; ++p) {
        for (std::uint64_t m = masks[p]; m != 0; m &= m - 1) {
          values[p].push_back(static_cast<element>(std::countr_zero(m)));
        }
      }
      std::vector<std::size_t> pos(r, 0);
      std::vector<element>     args(r);
      while (true) {
        for (std::size_t p = 0; p < r; ++p) {
          args[p] = values[p][pos[p]];
        }
        if (!f(args)) {
          return;
        }
        std::size_t p = r;
        while (p-- > 0) {
          if (++pos[p] < values[p].size()) {
            break;
          }
          pos[p] = 0;
        }
        if (p == static_cast<std::size_t>(-1)) {
          return;
        }
      }
    }
  }  // namespace

  subuniverse_check is_subuniverse_boxes(finite_algebra const& alg,
                                         box_set const&        set,
                                         limits const&         lim) {
    auto const leaves = leaf_factors(alg);
    if (leaves.size() != set.leaf_sizes().size()) {
      throw invalid_input("is_subuniverse_boxes: box set does not match the algebra");
    }
    for (std::size_t l = 0; l < leaves.size(); ++l) {
      if (leaves[l]->size() != set.leaf_sizes()[l]) {
        throw invalid_input("is_subuniverse_boxes: leaf sizes do not match");
      }
      if (!leaves[l]->has_tables()) {
        throw invalid_input("is_subuniverse_boxes: leaf factor without tables");
      }
    }
    // equal leaves share image memos
    std::vector<std::size_t> kind(leaves.size());
    for (std::size_t l = 0; l < leaves.size(); ++l) {
      kind[l] = l;
      for (std::size_t e = 0; e < l; ++e) {
        if (*leaves[e] == *leaves[l]) {
          kind[l] = kind[e];
          break;
        }
      }
    }

    auto const&                                     boxes = set.boxes();
    std::vector<box const*>                         all;
    for (auto const& b : boxes) {
      all.push_back(&b);
    }
    auto const                                      sym = symmetric_ops(alg);
    std::map<leaf_op_key, std::uint64_t>            memo;
    std::size_t                                     work = 0;
    subuniverse_check                               result;

    for (std::size_t op = 0; op < alg.op_count() && result.closed; ++op) {
      unsigned const r = alg.arity(op);
      detail::semi_naive_tuples(r, sym[op], 0, boxes.size(), [&](auto const& idx) {
        if (++work > lim.work_cap) {
          throw cap_exceeded("is_subuniverse_boxes: work cap reached", work);
        }
        box image;
        for (std::size_t l = 0; l < leaves.size(); ++l) {
          leaf_op_key key{kind[l], op, {}};
          for (auto i : idx) {
            key.masks.push_back(boxes[i].masks[l]);
          }
          if (sym[op]) {
            std::sort(key.masks.begin(), key.masks.end());
          }
          auto it = memo.find(key);
          if (it == memo.end()) {
            std::uint64_t out = 0;
            auto const&   tab = leaves[l]->table(op).entries;
            auto const    n   = leaves[l]->size();
            for_each_in_masks(key.masks, [&](std::vector<element> const& a) {
              out |= std::uint64_t{1} << tab[table_index(n, a)];
              return true;
            });
            it = memo.emplace(std::move(key), out).first;
          }
          image.masks.push_back(it->second);
        }
        auto missing = uncovered_point(image, all);
        if (!missing) {
          return true;
        }
        // rebuild one offending application leaf by leaf
        std::vector<std::vector<element>> coords(r, std::vector<element>(leaves.size()));
        std::vector<element>              target(leaves.size());
        for (std::size_t l = 0; l < leaves.size(); ++l) {
          target[l] = static_cast<element>(std::countr_zero(missing->masks[l]));
          std::vector<std::uint64_t> masks;
          for (auto i : idx) {
            masks.push_back(boxes[i].masks[l]);
          }
          auto const& tab = leaves[l]->table(op).entries;
          auto const  n   = leaves[l]->size();
          for_each_in_masks(masks, [&](std::vector<element> const& a) {
            if (tab[table_index(n, a)] != target[l]) {
              return true;
            }
            for (std::size_t p = 0; p < r; ++p) {
              coords[p][l] = a[p];
            }
            return false;
          });
        }
        op_application v;
        v.op = op;
        for (std::size_t p = 0; p < r; ++p) {
          v.args.push_back(static_cast<element>(set.indexing().to_index(coords[p])));
        }
        v.result         = static_cast<element>(set.indexing().to_index(target));
        result.closed    = false;
        result.violation = std::move(v);
        return false;
      });
    }
    return result;
  }

}  // namespace algwit
