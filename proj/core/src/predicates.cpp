#include "algwit/predicates.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "algwit/error.hpp"

namespace algwit {

  namespace {
    void check_op(finite_algebra const& alg, std::size_t op, char const* who) {
      if (op >= alg.op_count()) {
        throw invalid_input(std::string(who) + ": no operation " + std::to_string(op));
      }
    }

    void check_k(finite_algebra const& alg, std::size_t op, unsigned k, char const* who) {
      if (k < 1 || k > alg.arity(op)) {
        throw invalid_input(std::string(who) + ": need 1 <= k <= arity ("
                            + std::to_string(alg.arity(op)) + "), got "
                            + std::to_string(k));
      }
    }

    // Calls f(args, value) for every entry of the table, in table order.
    template <typename F>
    bool all_entries(finite_algebra const& alg, std::size_t op, F&& f) {
      auto const&          t = alg.table(op);
      std::vector<element> args(t.arity, 0);
      for (element value : t.entries) {
        if (!f(args, value)) {
          return false;
        }
        for (std::size_t p = t.arity; p-- > 0;) {
          if (++args[p] < alg.size()) {
            break;
          }
          args[p] = 0;
        }
      }
      return true;
    }
  }  // namespace

  bool is_k_absorbing(finite_algebra const& alg, std::size_t op, element zero, unsigned k) {
    check_op(alg, op, "is_k_absorbing");
    check_k(alg, op, k, "is_k_absorbing");
    if (zero >= alg.size()) {
      throw invalid_input("is_k_absorbing: element out of range");
    }
    if (!alg.has_tables() && alg.is_product()) {
      auto const& data = alg.product_data();
      for (std::size_t f = 0; f < data.factors.size(); ++f) {
        if (!is_k_absorbing(data.factors[f], op, data.indexing.component(zero, f), k)) {
          return false;
        }
      }
      return true;
    }
    return all_entries(alg, op, [&](std::vector<element> const& args, element value) {
      auto zeros = static_cast<unsigned>(std::count(args.begin(), args.end(), zero));
      return zeros < k || value == zero;
    });
  }

  bool is_k_majority(finite_algebra const& alg, std::size_t op, unsigned k) {
    check_op(alg, op, "is_k_majority");
    check_k(alg, op, k, "is_k_majority");
    if (!alg.has_tables() && alg.is_product()) {
      for (auto const& f : alg.product_data().factors) {
        if (!is_k_majority(f, op, k)) {
          return false;
        }
      }
      return true;
    }
    std::vector<unsigned> count(alg.size(), 0);
    return all_entries(alg, op, [&](std::vector<element> const& args, element value) {
      for (element a : args) {
        ++count[a];
      }
      bool ok = true;
      for (element a : args) {
        if (count[a] >= k && value != a) {
          ok = false;
        }
      }
      for (element a : args) {
        count[a] = 0;
      }
      return ok;
    });
  }

  bool is_symmetrical(finite_algebra const& alg, std::size_t op) {
    check_op(alg, op, "is_symmetrical");
    unsigned const m = alg.arity(op);
    if (m < 2) {
      return true;
    }
    if (!alg.has_tables() && alg.is_product()) {
      for (auto const& f : alg.product_data().factors) {
        if (!is_symmetrical(f, op)) {
          return false;
        }
      }
      return true;
    }
    auto const&          entries = alg.table(op).entries;
    std::vector<element> moved(m);
    return all_entries(alg, op, [&](std::vector<element> const& args, element value) {
      moved = args;
      std::swap(moved[0], moved[1]);
      if (entries[table_index(alg.size(), moved)] != value) {
        return false;
      }
      moved.assign(args.begin() + 1, args.end());
      moved.push_back(args[0]);
      return entries[table_index(alg.size(), moved)] == value;
    });
  }

}  // namespace algwit
