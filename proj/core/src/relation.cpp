#include "algwit/relation.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "algwit/error.hpp"

namespace algwit {

  namespace {
    void same_size(bin_relation const& r, bin_relation const& s, char const* who) {
      if (r.size() != s.size()) {
        throw invalid_input(std::string(who) + ": relations of different sizes");
      }
    }
  }  // namespace

  std::size_t bin_relation::pair_count() const {
    std::size_t n = 0;
    for (auto const& r : _rows) {
      n += r.count();
    }
    return n;
  }

  bin_relation rel_identity(std::size_t size) {
    bin_relation r(size);
    for (element i = 0; i < size; ++i) {
      r.set(i, i);
    }
    return r;
  }

  bin_relation rel_full(std::size_t size) {
    bin_relation r(size);
    for (element i = 0; i < size; ++i) {
      r.row(i).set();
    }
    return r;
  }

  bin_relation rel_of_partition(partition const& part) {
    bin_relation r(part.size());
    for (auto const& block : part.blocks()) {
      element_set mask(part.size());
      for (element e : block) {
        mask.set(e);
      }
      for (element e : block) {
        r.row(e) = mask;
      }
    }
    return r;
  }

  bin_relation rel_compose(bin_relation const& r, bin_relation const& s) {
    same_size(r, s, "rel_compose");
    bin_relation out(r.size());
    for (element i = 0; i < r.size(); ++i) {
      auto const& ri = r.row(i);
      auto&       oi = out.row(i);
      for (auto k = ri.find_first(); k != element_set::npos; k = ri.find_next(k)) {
        oi |= s.row(static_cast<element>(k));
      }
    }
    return out;
  }

  bin_relation rel_meet(bin_relation const& r, bin_relation const& s) {
    same_size(r, s, "rel_meet");
    bin_relation out = r;
    for (element i = 0; i < r.size(); ++i) {
      out.row(i) &= s.row(i);
    }
    return out;
  }

  bin_relation rel_converse(bin_relation const& r) {
    bin_relation out(r.size());
    for (element i = 0; i < r.size(); ++i) {
      auto const& ri = r.row(i);
      for (auto k = ri.find_first(); k != element_set::npos; k = ri.find_next(k)) {
        out.set(static_cast<element>(k), i);
      }
    }
    return out;
  }

  bin_relation rel_power(bin_relation const& r, std::size_t k) {
    bin_relation out = rel_identity(r.size());
    for (std::size_t i = 0; i < k; ++i) {
      out = i == 0 ? r : rel_compose(out, r);
    }
    return out;
  }

  bin_relation eval_chain(chain_pattern const& pattern) {
    same_size(pattern.first, pattern.second, "eval_chain");
    if (pattern.factor_count == 0) {
      return rel_identity(pattern.first.size());
    }
    bin_relation out = pattern.first;
    for (std::size_t i = 1; i < pattern.factor_count; ++i) {
      out = rel_compose(out, i % 2 == 0 ? pattern.first : pattern.second);
    }
    return out;
  }

  inclusion_result check_inclusion(bin_relation const& lhs, bin_relation const& rhs) {
    same_size(lhs, rhs, "check_inclusion");
    for (element i = 0; i < lhs.size(); ++i) {
      if (!lhs.row(i).is_subset_of(rhs.row(i))) {
        auto extra = lhs.row(i) - rhs.row(i);
        return {false, std::make_pair(i, static_cast<element>(extra.find_first()))};
      }
    }
    return {};
  }

  std::optional<alternating_chain> shortest_alternating_chain(element             start,
                                                              element             goal,
                                                              bin_relation const& first,
                                                              bin_relation const& second,
                                                              std::size_t         cap) {
    same_size(first, second, "shortest_alternating_chain");
    std::size_t const n = first.size();
    if (start >= n || goal >= n) {
      throw invalid_input("shortest_alternating_chain: element out of range");
    }
    if (start == goal) {
      return alternating_chain{{start}, true};
    }
    bin_relation const rel[2]  = {first, second};
    bin_relation const back[2] = {rel_converse(first), rel_converse(second)};
    constexpr auto     inf     = std::numeric_limits<std::size_t>::max();

    // remaining[p][e]: fewest factors from e to goal when the next factor
    // is relation p
    std::vector<std::size_t> remaining[2] = {std::vector<std::size_t>(n, inf),
                                             std::vector<std::size_t>(n, inf)};
    std::deque<std::pair<int, element>> queue;
    remaining[0][goal] = 0;
    remaining[1][goal] = 0;
    queue.emplace_back(0, goal);
    queue.emplace_back(1, goal);
    while (!queue.empty()) {
      auto [p, e] = queue.front();
      queue.pop_front();
      // a predecessor x steps to e with relation q, after which relation p
      // is next, so q = 1 - p
      int const   q  = 1 - p;
      auto const& in = back[q].row(e);
      for (auto x = in.find_first(); x != element_set::npos; x = in.find_next(x)) {
        if (remaining[q][x] == inf) {
          remaining[q][x] = remaining[p][e] + 1;
          queue.emplace_back(q, static_cast<element>(x));
        }
      }
    }
    std::size_t best = std::min(remaining[0][start], remaining[1][start]);
    if (best == inf) {
      return std::nullopt;
    }
    if (best > cap) {
      throw cap_exceeded("shortest_alternating_chain: shortest chain needs "
                             + std::to_string(best) + " factors, cap is " + std::to_string(cap),
                         best);
    }
    std::optional<alternating_chain> chosen;
    for (int s = 0; s < 2; ++s) {
      if (remaining[s][start] != best) {
        continue;
      }
      alternating_chain chain{{start}, s == 0};
      element           cur = start;
      int               p   = s;
      for (std::size_t left = best; left > 0; --left) {
        auto const& out = rel[p].row(cur);
        for (auto y = out.find_first(); y != element_set::npos; y = out.find_next(y)) {
          if (remaining[1 - p][y] == left - 1) {
            cur = static_cast<element>(y);
            break;
          }
        }
        chain.elements.push_back(cur);
        p = 1 - p;
      }
      if (!chosen || chain.elements < chosen->elements) {
        chosen = std::move(chain);
      }
    }
    return chosen;
  }

}  // namespace algwit
