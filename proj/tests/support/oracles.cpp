#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace oracle {

  namespace {
    bool next_tuple(std::vector<element>& t, std::size_t base) {
      for (std::size_t p = t.size(); p-- > 0;) {
        if (++t[p] < base) {
          return true;
        }
        t[p] = 0;
      }
      return false;
    }
  }  // namespace

  matrix equivalence(std::vector<std::uint32_t> const& block_of) {
    std::size_t n = block_of.size();
    matrix      m(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] = block_of[i] == block_of[j];
      }
    }
    return m;
  }

  matrix identity(std::size_t n) {
    matrix m(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
      m[i][i] = true;
    }
    return m;
  }

  matrix compose(matrix const& a, matrix const& b) {
    std::size_t n = a.size();
    matrix      m(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!a[i][k]) {
          continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
          if (b[k][j]) {
            m[i][j] = true;
          }
        }
      }
    }
    return m;
  }

  matrix meet(matrix const& a, matrix const& b) {
    matrix m = a;
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < a.size(); ++j) {
        m[i][j] = a[i][j] && b[i][j];
      }
    }
    return m;
  }

  matrix power(matrix const& a, std::size_t k) {
    matrix m = identity(a.size());
    for (std::size_t i = 0; i < k; ++i) {
      m = compose(m, a);
    }
    return m;
  }

  matrix alternate(matrix const& first, matrix const& second, std::size_t factors) {
    matrix m = identity(first.size());
    for (std::size_t i = 0; i < factors; ++i) {
      m = compose(m, i % 2 == 0 ? first : second);
    }
    return m;
  }

  bool subset(matrix const& a, matrix const& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[i][j] && !b[i][j]) {
          return false;
        }
      }
    }
    return true;
  }

  element subset_ujm(std::vector<element> const& args, unsigned j) {
    std::size_t m    = args.size();
    element     best = 0;
    bool        seen = false;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      if (static_cast<unsigned>(__builtin_popcount(mask)) != j) {
        continue;
      }
      element join = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (mask & (1u << i)) {
          join = std::max(join, args[i]);
        }
      }
      best = seen ? std::min(best, join) : join;
      seen = true;
    }
    return best;
  }

  std::vector<std::vector<std::uint32_t>> all_partitions(std::size_t n) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t>              rgs(n, 0);
    std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t top) {
      if (i == n) {
        out.push_back(rgs);
        return;
      }
      for (std::uint32_t b = 0; b <= top + 1; ++b) {
        rgs[i] = b;
        rec(i + 1, std::max(top, b));
      }
    };
    if (n == 0) {
      out.emplace_back();
      return out;
    }
    rgs[0] = 0;
    rec(1, 0);
    return out;
  }

  bool compatible(finite_algebra const& alg, std::vector<std::uint32_t> const& block_of) {
    std::size_t n = alg.size();
    for (std::size_t op = 0; op < alg.op_count(); ++op) {
      unsigned             r = alg.arity(op);
      std::vector<element> args(r, 0);
      do {
        for (unsigned p = 0; p < r; ++p) {
          std::vector<element> other = args;
          for (element y = 0; y < n; ++y) {
            if (block_of[y] != block_of[args[p]]) {
              continue;
            }
            other[p] = y;
            if (block_of[alg.apply_unchecked(op, args)] != block_of[alg.apply_unchecked(op, other)]) {
              return false;
            }
          }
        }
      } while (next_tuple(args, n));
    }
    return true;
  }

  std::vector<std::uint32_t> generated_congruence(finite_algebra const&                          alg,
                                                  std::vector<std::pair<element, element>> const& pairs) {
    std::vector<std::vector<std::uint32_t>> candidates;
    for (auto const& p : all_partitions(alg.size())) {
      bool contains = std::all_of(pairs.begin(), pairs.end(),
                                  [&](auto const& pr) { return p[pr.first] == p[pr.second]; });
      if (contains && compatible(alg, p)) {
        candidates.push_back(p);
      }
    }
    auto blocks = [](std::vector<std::uint32_t> const& p) {
      return *std::max_element(p.begin(), p.end()) + 1;
    };
    auto best = *std::max_element(candidates.begin(), candidates.end(),
                                  [&](auto const& x, auto const& y) { return blocks(x) < blocks(y); });
    auto refines = [](std::vector<std::uint32_t> const& fine, std::vector<std::uint32_t> const& coarse) {
      for (std::size_t i = 0; i < fine.size(); ++i) {
        for (std::size_t j = 0; j < fine.size(); ++j) {
          if (fine[i] == fine[j] && coarse[i] != coarse[j]) {
            return false;
          }
        }
      }
      return true;
    };
    for (auto const& c : candidates) {
      if (!refines(best, c)) {
        throw std::logic_error("oracle: compatible partitions have no least element");
      }
    }
    return best;
  }

  std::set<element> closure(finite_algebra const& alg, std::set<element> gens) {
    std::set<element> cur = std::move(gens);
    for (bool grew = true; grew;) {
      grew = false;
      std::vector<element> pool(cur.begin(), cur.end());
      for (std::size_t op = 0; op < alg.op_count(); ++op) {
        unsigned             r = alg.arity(op);
        std::vector<element> idx(r, 0), args(r);
        do {
          for (unsigned p = 0; p < r; ++p) {
            args[p] = pool[idx[p]];
          }
          if (cur.insert(alg.apply_unchecked(op, args)).second) {
            grew = true;
          }
        } while (next_tuple(idx, pool.size()));
      }
    }
    return cur;
  }

  bool closed(finite_algebra const& alg, std::set<element> const& subset) {
    if (subset.empty()) {
      return true;
    }
    std::vector<element> pool(subset.begin(), subset.end());
    for (std::size_t op = 0; op < alg.op_count(); ++op) {
      unsigned             r = alg.arity(op);
      std::vector<element> idx(r, 0), args(r);
      do {
        for (unsigned p = 0; p < r; ++p) {
          args[p] = pool[idx[p]];
        }
        if (!subset.contains(alg.apply_unchecked(op, args))) {
          return false;
        }
      } while (next_tuple(idx, pool.size()));
    }
    return true;
  }

  bool symmetric(finite_algebra const& alg, std::size_t op) {
    unsigned             r = alg.arity(op);
    std::vector<element> args(r, 0);
    do {
      element                  v = alg.apply_unchecked(op, args);
      std::vector<std::size_t> perm(r);
      for (unsigned i = 0; i < r; ++i) {
        perm[i] = i;
      }
      std::vector<element> permuted(r);
      while (std::next_permutation(perm.begin(), perm.end())) {
        for (unsigned i = 0; i < r; ++i) {
          permuted[i] = args[perm[i]];
        }
        if (alg.apply_unchecked(op, permuted) != v) {
          return false;
        }
      }
    } while (next_tuple(args, alg.size()));
    return true;
  }

  bool k_absorbing(finite_algebra const& alg, std::size_t op, element zero, unsigned k) {
    unsigned             r = alg.arity(op);
    std::vector<element> args(r, 0);
    do {
      auto zeros = static_cast<unsigned>(std::count(args.begin(), args.end(), zero));
      if (zeros >= k && alg.apply_unchecked(op, args) != zero) {
        return false;
      }
    } while (next_tuple(args, alg.size()));
    return true;
  }

  element eval(algwit::term const& t, finite_algebra const& alg, std::vector<element> const& args) {
    if (t.is_variable()) {
      return args.at(t.variable_index());
    }
    std::vector<element> sub;
    for (auto const& a : t.args()) {
      sub.push_back(eval(a, alg, args));
    }
    return alg.apply(t.op(), sub);
  }

  std::size_t free_size(std::vector<finite_algebra> const& gens, unsigned g) {
    // coordinates: every (algebra, point of A^g)
    std::vector<std::pair<std::size_t, std::vector<element>>> coords;
    for (std::size_t a = 0; a < gens.size(); ++a) {
      std::vector<element> pt(g, 0);
      do {
        coords.emplace_back(a, pt);
      } while (next_tuple(pt, gens[a].size()));
    }
    using vec = std::vector<element>;
    std::set<vec> cur;
    for (unsigned v = 0; v < g; ++v) {
      vec p;
      for (auto const& c : coords) {
        p.push_back(c.second[v]);
      }
      cur.insert(p);
    }
    for (bool grew = true; grew;) {
      grew = false;
      std::vector<vec> pool(cur.begin(), cur.end());
      for (std::size_t op = 0; op < gens[0].op_count(); ++op) {
        unsigned             r = gens[0].arity(op);
        std::vector<element> idx(r, 0), args(r);
        do {
          vec out(coords.size());
          for (std::size_t c = 0; c < coords.size(); ++c) {
            for (unsigned p = 0; p < r; ++p) {
              args[p] = pool[idx[p]][c];
            }
            out[c] = gens[coords[c].first].apply_unchecked(op, args);
          }
          if (cur.insert(std::move(out)).second) {
            grew = true;
          }
        } while (next_tuple(idx, pool.size()));
      }
    }
    return cur.size();
  }

  std::optional<walk> shortest_walk(element       start,
                                    element       goal,
                                    matrix const& first,
                                    matrix const& second,
                                    std::size_t   max_factors) {
    std::size_t n = first.size();
    if (start == goal) {
      return walk{{start}, true};
    }
    for (std::size_t len = 1; len <= max_factors; ++len) {
      std::optional<walk> best;
      for (bool from_first : {true, false}) {
        // reach[i][x]: goal reachable from x using factors i..len-1
        std::vector<std::vector<bool>> reach(len + 1, std::vector<bool>(n, false));
        reach[len][goal] = true;
        for (std::size_t i = len; i-- > 0;) {
          matrix const& rel = (i % 2 == 0) == from_first ? first : second;
          for (element x = 0; x < n; ++x) {
            for (element y = 0; y < n && !reach[i][x]; ++y) {
              if (rel[x][y] && reach[i + 1][y]) {
                reach[i][x] = true;
              }
            }
          }
        }
        if (!reach[0][start]) {
          continue;
        }
        std::vector<element> path{start};
        for (std::size_t i = 0; i < len; ++i) {
          matrix const& rel = (i % 2 == 0) == from_first ? first : second;
          for (element y = 0; y < n; ++y) {
            if (rel[path.back()][y] && reach[i + 1][y]) {
              path.push_back(y);
              break;
            }
          }
        }
        if (!best || path < best->elements) {
          best = walk{path, from_first};
        }
      }
      if (best) {
        return best;
      }
    }
    return std::nullopt;
  }

  std::vector<std::uint32_t> random_partition(std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n - 1));
    std::uint32_t                                 target = pick(rng) + 1;
    std::vector<std::uint32_t>                    raw(n);
    for (auto& b : raw) {
      b = pick(rng) % target;
    }
    std::map<std::uint32_t, std::uint32_t> relabel;
    for (auto& b : raw) {
      auto it = relabel.try_emplace(b, static_cast<std::uint32_t>(relabel.size())).first;
      b       = it->second;
    }
    return raw;
  }

  finite_algebra random_algebra(std::size_t size, unsigned arity, std::mt19937_64& rng) {
    std::uniform_int_distribution<element> pick(0, static_cast<element>(size - 1));
    algwit::operation_table                t{"f", arity, {}};
    std::size_t                            len = 1;
    for (unsigned i = 0; i < arity; ++i) {
      len *= size;
    }
    t.entries.resize(len);
    for (auto& e : t.entries) {
      e = pick(rng);
    }
    return finite_algebra("random", size, {t});
  }

}  // namespace oracle
