#ifndef ALGWIT_DETAIL_SEMI_NAIVE_HPP_
#define ALGWIT_DETAIL_SEMI_NAIVE_HPP_

#include <algorithm>
#include <cstddef>
#include <vector>

namespace algwit::detail {

  // Enumerates index tuples over [0, new_end) that use at least one index in
  // [old_end, new_end). For symmetric operations only non-decreasing tuples
  // are produced. f returns false to stop; the return value reports whether
  // enumeration ran to completion.
  template <typename F>
  bool semi_naive_tuples(unsigned    arity,
                         bool        symmetric,
                         std::size_t old_end,
                         std::size_t new_end,
                         F&&         f) {
    if (old_end >= new_end) {
      return true;
    }
    std::vector<std::size_t> idx(arity);
    if (symmetric) {
      // non-decreasing tuples whose last (largest) entry is new
      for (std::size_t top = old_end; top < new_end; ++top) {
        idx[arity - 1] = top;
        if (arity == 1) {
          if (!f(idx)) {
            return false;
          }
          continue;
        }
        std::fill(idx.begin(), idx.end() - 1, 0);
        while (true) {
          if (!f(idx)) {
            return false;
          }
          std::size_t p = arity - 1;
          while (p-- > 0) {
            if (idx[p] < top) {
              ++idx[p];
              for (std::size_t r = p + 1; r + 1 < arity; ++r) {
                idx[r] = idx[p];
              }
              break;
            }
          }
          if (p == static_cast<std::size_t>(-1)) {
            break;
          }
        }
      }
      return true;
    }
    for (std::size_t pos = 0; pos < arity; ++pos) {
      if (pos > 0 && old_end == 0) {
        break;
      }
      std::vector<std::size_t> lo(arity, 0), hi(arity, new_end);
      for (std::size_t r = 0; r < pos; ++r) {
        hi[r] = old_end;
      }
      lo[pos] = old_end;
      for (std::size_t r = 0; r < arity; ++r) {
        idx[r] = lo[r];
      }
      while (true) {
        if (!f(idx)) {
          return false;
        }
        std::size_t p = arity;
        while (p-- > 0) {
          if (++idx[p] < hi[p]) {
            break;
          }
          idx[p] = lo[p];
        }
        if (p == static_cast<std::size_t>(-1)) {
          break;
        }
      }
    }
    return true;
  }

}  // namespace algwit::detail

#endif  // ALGWIT_DETAIL_SEMI_NAIVE_HPP_
