#include "algwit/closure.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "algwit/error.hpp"
#include "algwit/predicates.hpp"
#include "detail/semi_naive.hpp"

namespace algwit {

  std::vector<bool> symmetric_ops(finite_algebra const& alg) {
    std::vector<bool> out(alg.op_count());
    for (std::size_t op = 0; op < alg.op_count(); ++op) {
      out[op] = is_symmetrical(alg, op);
    }
    return out;
  }

  closure_result subalgebra_closure(finite_algebra const& alg,
                                    std::vector<element>  generators,
                                    bool                  track_terms,
                                    limits const&         lim) {
    for (element g : generators) {
      if (g >= alg.size()) {
        throw invalid_input("subalgebra_closure: generator " + std::to_string(g)
                            + " outside the universe");
      }
    }
    std::sort(generators.begin(), generators.end());
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());

    if (generators.size() > lim.closure_cap) {
      throw cap_exceeded("subalgebra_closure: closure cap " + std::to_string(lim.closure_cap)
                             + " reached",
                         generators.size());
    }

    std::vector<element>                 found;
    std::vector<term>                    terms;
    std::unordered_map<element, std::size_t> where;
    for (std::size_t i = 0; i < generators.size(); ++i) {
      where.emplace(generators[i], found.size());
      found.push_back(generators[i]);
      if (track_terms) {
        terms.push_back(term::variable(i));
      }
    }

    auto const           sym = symmetric_ops(alg);
    std::vector<element> args;
    std::size_t          old_end = 0;
    while (old_end < found.size()) {
      std::size_t const new_end = found.size();
      for (std::size_t op = 0; op < alg.op_count(); ++op) {
        args.resize(alg.arity(op));
        detail::semi_naive_tuples(
            alg.arity(op), sym[op], old_end, new_end, [&](auto const& idx) {
              for (std::size_t p = 0; p < idx.size(); ++p) {
                args[p] = found[idx[p]];
              }
              element value = alg.apply_unchecked(op, args);
              if (where.emplace(value, found.size()).second) {
                if (found.size() >= lim.closure_cap) {
                  throw cap_exceeded("subalgebra_closure: closure cap "
                                         + std::to_string(lim.closure_cap) + " reached",
                                     found.size());
                }
                found.push_back(value);
                if (track_terms) {
                  std::vector<term> sub;
                  for (auto i : idx) {
                    sub.push_back(terms[i]);
                  }
                  terms.push_back(term::apply(op, std::move(sub)));
                }
              }
              return true;
            });
      }
      old_end = new_end;
    }

    std::vector<std::size_t> order(found.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return found[a] < found[b]; });
    closure_result result;
    result.generators = std::move(generators);
    for (auto i : order) {
      result.elements.push_back(found[i]);
      if (track_terms) {
        result.provenance.push_back(terms[i]);
      }
    }
    return result;
  }

  subuniverse_check is_subuniverse(finite_algebra const&       alg,
                                   std::vector<element> const& subset,
                                   limits const&               lim) {
    std::vector<element> members(subset);
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    std::vector<char> in(alg.size(), 0);
    for (element e : members) {
      if (e >= alg.size()) {
        throw invalid_input("is_subuniverse: element " + std::to_string(e)
                            + " outside the universe");
      }
      in[e] = 1;
    }
    auto const           sym  = symmetric_ops(alg);
    std::size_t          work = 0;
    subuniverse_check    result;
    std::vector<element> args;
    for (std::size_t op = 0; op < alg.op_count() && result.closed; ++op) {
      args.resize(alg.arity(op));
      detail::semi_naive_tuples(alg.arity(op), sym[op], 0, members.size(), [&](auto const& idx) {
        if (++work > lim.work_cap) {
          throw cap_exceeded("is_subuniverse: work cap reached", work);
        }
        for (std::size_t p = 0; p < idx.size(); ++p) {
          args[p] = members[idx[p]];
        }
        element value = alg.apply_unchecked(op, args);
        if (!in[value]) {
          result.closed    = false;
          result.violation = op_application{op, args, value};
          return false;
        }
        return true;
      });
    }
    return result;
  }

}  // namespace algwit
