#include "algwit/partition.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "algwit/closure.hpp"
#include "algwit/error.hpp"

namespace algwit {

  namespace {
    struct union_find {
      std::vector<std::uint32_t> parent;

      explicit union_find(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
      }
      std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
          parent[x] = parent[parent[x]];
          x         = parent[x];
        }
        return x;
      }
      bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) {
          return false;
        }
        if (a > b) {
          std::swap(a, b);
        }
        parent[b] = a;
        return true;
      }
      partition result() {
        std::vector<std::uint32_t> ids(parent.size());
        for (std::uint32_t x = 0; x < parent.size(); ++x) {
          ids[x] = find(x);
        }
        return partition(std::move(ids));
      }
    };

    void check_same_size(partition const& p, partition const& q, char const* who) {
      if (p.size() != q.size()) {
        throw invalid_input(std::string(who) + ": partitions of different sizes");
      }
    }
  }  // namespace

  partition::partition(std::vector<std::uint32_t> block_of) : _block(std::move(block_of)) {
    std::map<std::uint32_t, std::uint32_t> renumber;
    for (auto& b : _block) {
      auto it = renumber.try_emplace(b, static_cast<std::uint32_t>(renumber.size())).first;
      b       = it->second;
    }
    _count = renumber.size();
  }

  partition partition::identity(std::size_t size) {
    std::vector<std::uint32_t> ids(size);
    std::iota(ids.begin(), ids.end(), 0);
    return partition(std::move(ids));
  }

  partition partition::total(std::size_t size) {
    return partition(std::vector<std::uint32_t>(size, 0));
  }

  partition partition::from_blocks(std::size_t                              size,
                                   std::vector<std::vector<element>> const& blocks) {
    std::vector<std::uint32_t> ids(size, static_cast<std::uint32_t>(-1));
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (blocks[b].empty()) {
        throw invalid_input("partition: empty block");
      }
      for (element e : blocks[b]) {
        if (e >= size) {
          throw invalid_input("partition: element " + std::to_string(e) + " out of range");
        }
        if (ids[e] != static_cast<std::uint32_t>(-1)) {
          throw invalid_input("partition: element " + std::to_string(e)
                              + " occurs in two blocks");
        }
        ids[e] = static_cast<std::uint32_t>(b);
      }
    }
    for (std::size_t e = 0; e < size; ++e) {
      if (ids[e] == static_cast<std::uint32_t>(-1)) {
        throw invalid_input("partition: element " + std::to_string(e) + " is in no block");
      }
    }
    return partition(std::move(ids));
  }

  std::vector<std::vector<element>> partition::blocks() const {
    std::vector<std::vector<element>> out(_count);
    for (element e = 0; e < _block.size(); ++e) {
      out[_block[e]].push_back(e);
    }
    return out;
  }

  partition partition_meet(partition const& p, partition const& q) {
    check_same_size(p, q, "partition_meet");
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> ids;
    std::vector<std::uint32_t>                                       out(p.size());
    for (element e = 0; e < p.size(); ++e) {
      auto key = std::make_pair(p.block_of(e), q.block_of(e));
      out[e]   = ids.try_emplace(key, static_cast<std::uint32_t>(ids.size())).first->second;
    }
    return partition(std::move(out));
  }

  partition equivalence_join(partition const& p, partition const& q) {
    check_same_size(p, q, "partition_join");
    union_find                 uf(p.size());
    std::vector<std::uint32_t> first_p(p.block_count(), static_cast<std::uint32_t>(-1));
    std::vector<std::uint32_t> first_q(q.block_count(), static_cast<std::uint32_t>(-1));
    for (std::uint32_t e = 0; e < p.size(); ++e) {
      auto& fp = first_p[p.block_of(e)];
      auto& fq = first_q[q.block_of(e)];
      if (fp == static_cast<std::uint32_t>(-1)) {
        fp = e;
      } else {
        uf.unite(fp, e);
      }
      if (fq == static_cast<std::uint32_t>(-1)) {
        fq = e;
      } else {
        uf.unite(fq, e);
      }
    }
    return uf.result();
  }

  partition partition_join(finite_algebra const& alg, partition const& p, partition const& q) {
    check_same_size(p, q, "partition_join");
    if (p.size() != alg.size()) {
      throw invalid_input("partition_join: partition size does not match the algebra");
    }
    if (!is_congruence(alg, p).ok) {
      throw invalid_input("partition_join: first argument is not a congruence");
    }
    if (!is_congruence(alg, q).ok) {
      throw invalid_input("partition_join: second argument is not a congruence");
    }
    return equivalence_join(p, q);
  }

  namespace {
    // Calls f(args) for all tuples over n elements of length len.
    template <typename F>
    bool for_each_tuple(std::size_t n, std::size_t len, F&& f) {
      std::vector<element> t(len, 0);
      while (true) {
        if (!f(t)) {
          return false;
        }
        std::size_t p = len;
        while (p-- > 0) {
          if (++t[p] < n) {
            break;
          }
          t[p] = 0;
        }
        if (p == static_cast<std::size_t>(-1)) {
          return true;
        }
      }
    }

    congruence_check check_on(finite_algebra const&       alg,
                              std::vector<element> const& universe,
                              std::vector<std::uint32_t> const& position_of,
                              partition const&            part,
                              limits const&               lim) {
      auto const        sym  = symmetric_ops(alg);
      std::size_t       work = 0;
      congruence_check  result;
      auto const        blocks = part.blocks();
      std::vector<element> args;
      for (std::size_t op = 0; op < alg.op_count(); ++op) {
        unsigned const r         = alg.arity(op);
        std::size_t    positions = sym[op] ? 1 : r;
        args.resize(r);
        for (std::size_t pos = 0; pos < positions; ++pos) {
          for (auto const& block : blocks) {
            for (std::size_t k = 1; k < block.size(); ++k) {
              element const a = universe[block[k - 1]];
              element const b = universe[block[k]];
              bool done = !for_each_tuple(universe.size(), r - 1, [&](std::vector<element> const& rest) {
                if (++work > lim.work_cap) {
                  throw cap_exceeded("is_congruence: work cap reached", work);
                }
                for (std::size_t i = 0, s = 0; i < r; ++i) {
                  args[i] = i == pos ? a : universe[rest[s++]];
                }
                element ia = alg.apply_unchecked(op, args);
                args[pos]  = b;
                element ib = alg.apply_unchecked(op, args);
                if (!part.related(position_of[ia], position_of[ib])) {
                  args[pos] = a;
                  result.ok = false;
                  result.failure =
                      compatibility_failure{op, pos, a, b, args, ia, ib};
                  return false;
                }
                return true;
              });
              if (done) {
                return result;
              }
            }
          }
        }
      }
      return result;
    }
  }  // namespace

  congruence_check is_congruence(finite_algebra const& alg,
                                 partition const&      part,
                                 limits const&         lim) {
    if (part.size() != alg.size()) {
      throw invalid_input("is_congruence: partition size " + std::to_string(part.size())
                          + " does not match algebra size " + std::to_string(alg.size()));
    }
    std::vector<element> universe(alg.size());
    std::iota(universe.begin(), universe.end(), 0);
    std::vector<std::uint32_t> position(universe.begin(), universe.end());
    return check_on(alg, universe, position, part, lim);
  }

  congruence_check is_congruence_on(finite_algebra const&       alg,
                                    std::vector<element> const& subset,
                                    partition const&            part,
                                    limits const&               lim) {
    if (part.size() != subset.size()) {
      throw invalid_input("is_congruence_on: partition size does not match the subuniverse");
    }
    std::vector<std::uint32_t> position(alg.size(), static_cast<std::uint32_t>(-1));
    for (std::size_t i = 0; i < subset.size(); ++i) {
      if (subset[i] >= alg.size() || (i > 0 && subset[i] <= subset[i - 1])) {
        throw invalid_input("is_congruence_on: subset must be sorted and in range");
      }
      position[subset[i]] = static_cast<std::uint32_t>(i);
    }
    // the subset must be closed for the test to be meaningful
    auto closed = is_subuniverse(alg, subset, lim);
    if (!closed.closed) {
      throw invalid_input("is_congruence_on: subset is not a subuniverse");
    }
    return check_on(alg, subset, position, part, lim);
  }

  partition congruence_generated(finite_algebra const&                           alg,
                                 std::vector<std::pair<element, element>> const& pairs,
                                 limits const&                                   lim) {
    union_find                               uf(alg.size());
    std::vector<std::pair<element, element>> pending;
    for (auto [a, b] : pairs) {
      if (a >= alg.size() || b >= alg.size()) {
        throw invalid_input("congruence_generated: pair outside the universe");
      }
      if (uf.unite(a, b)) {
        pending.emplace_back(a, b);
      }
    }
    auto const           sym  = symmetric_ops(alg);
    std::size_t          work = 0;
    std::vector<element> args;
    // every merge is pushed through all unary translations
    while (!pending.empty()) {
      auto [a, b] = pending.back();
      pending.pop_back();
      for (std::size_t op = 0; op < alg.op_count(); ++op) {
        unsigned const r = alg.arity(op);
        args.resize(r);
        for (std::size_t pos = 0; pos < (sym[op] ? 1u : r); ++pos) {
          for_each_tuple(alg.size(), r - 1, [&](std::vector<element> const& rest) {
            if (++work > lim.work_cap) {
              throw cap_exceeded("congruence_generated: work cap reached", work);
            }
            for (std::size_t i = 0, s = 0; i < r; ++i) {
              args[i] = i == pos ? a : rest[s++];
            }
            element ia = alg.apply_unchecked(op, args);
            args[pos]  = b;
            element ib = alg.apply_unchecked(op, args);
            if (uf.unite(ia, ib)) {
              pending.emplace_back(ia, ib);
            }
            return true;
          });
        }
      }
    }
    return uf.result();
  }

  partition induced_product_congruence(factor_indexing const&        indexing,
                                       std::vector<partition> const& factor_parts,
                                       std::vector<element> const&   subuniverse) {
    if (factor_parts.size() != indexing.factor_count()) {
      throw invalid_input("induced_product_congruence: expected "
                          + std::to_string(indexing.factor_count()) + " factor partitions, got "
                          + std::to_string(factor_parts.size()));
    }
    for (std::size_t f = 0; f < factor_parts.size(); ++f) {
      if (factor_parts[f].size() != indexing.factor_sizes()[f]) {
        throw invalid_input("induced_product_congruence: factor " + std::to_string(f)
                            + " partition has the wrong size");
      }
    }
    if (subuniverse.empty()) {
      throw invalid_input("induced_product_congruence: empty subuniverse");
    }
    std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
    std::vector<std::uint32_t>                          out(subuniverse.size());
    std::vector<std::uint32_t>                          key(factor_parts.size());
    for (std::size_t i = 0; i < subuniverse.size(); ++i) {
      if (subuniverse[i] >= indexing.size()) {
        throw invalid_input("induced_product_congruence: element out of range");
      }
      for (std::size_t f = 0; f < factor_parts.size(); ++f) {
        key[f] = factor_parts[f].block_of(indexing.component(subuniverse[i], f));
      }
      out[i] = ids.try_emplace(key, static_cast<std::uint32_t>(ids.size())).first->second;
    }
    return partition(std::move(out));
  }

}  // namespace algwit
