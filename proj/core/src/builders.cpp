#include "algwit/builders.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "algwit/error.hpp"

namespace algwit {

  namespace {
    operation_table binary_table(std::string name, std::size_t n, bool take_max) {
      operation_table t{std::move(name), 2, std::vector<element>(n * n)};
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          t.entries[x * n + y]
              = static_cast<element>(take_max ? std::max(x, y) : std::min(x, y));
        }
      }
      return t;
    }
  }  // namespace

  finite_algebra make_chain_lattice(std::size_t size) {
    if (size < 2) {
      throw invalid_input("make_chain_lattice: size must be at least 2");
    }
    return finite_algebra("C" + std::to_string(size),
                          size,
                          {binary_table("join", size, true),
                           binary_table("meet", size, false)});
  }

  finite_algebra make_ujm_reduct(std::size_t chain_size, unsigned j, unsigned m) {
    if (chain_size < 2) {
      throw invalid_input("make_ujm_reduct: chain size must be at least 2");
    }
    if (m < 3) {
      throw invalid_input("make_ujm_reduct: m must be at least 3");
    }
    if (j < 1 || j > m) {
      throw invalid_input("make_ujm_reduct: need 1 <= j <= m");
    }
    std::size_t const length = table_length(chain_size, m);
    if (length > (std::size_t{1} << 28)) {
      throw cap_exceeded("make_ujm_reduct: table too large", length);
    }
    operation_table      t{"u", m, std::vector<element>(length)};
    std::vector<element> args(m, 0), sorted(m);
    for (std::size_t idx = 0; idx < length; ++idx) {
      std::copy(args.begin(), args.end(), sorted.begin());
      std::nth_element(sorted.begin(), sorted.begin() + (j - 1), sorted.end());
      t.entries[idx] = sorted[j - 1];
      for (std::size_t p = m; p-- > 0;) {
        if (++args[p] < chain_size) {
          break;
        }
        args[p] = 0;
      }
    }
    return finite_algebra("N^{" + std::to_string(j) + "," + std::to_string(m) + "}_"
                              + std::to_string(chain_size),
                          chain_size,
                          {std::move(t)});
  }

  finite_algebra make_trivial_algebra(std::vector<unsigned> const& arities) {
    std::vector<operation_table> ops;
    for (std::size_t k = 0; k < arities.size(); ++k) {
      ops.push_back({"u" + std::to_string(k), arities[k], {0}});
    }
    if (ops.size() == 1) {
      ops[0].name = "u";
    }
    return finite_algebra("trivial", 1, std::move(ops));
  }

  finite_algebra direct_product(std::vector<finite_algebra> factors, limits const& lim) {
    if (factors.empty()) {
      throw invalid_input("direct_product: no factors");
    }
    std::size_t size = 1;
    std::string label;
    for (auto const& f : factors) {
      if (size > lim.closure_cap / f.size()) {
        throw cap_exceeded("direct_product: universe exceeds cap", size);
      }
      size *= f.size();
      label += (label.empty() ? "" : " x ") + f.label();
    }
    if (size > lim.closure_cap) {
      throw cap_exceeded("direct_product: universe exceeds cap", size);
    }
    if (factors.size() == 1) {
      label = "(" + label + ")";
    }
    return finite_algebra::product(std::move(factors), std::move(label), lim.table_cap);
  }

}  // namespace algwit

namespace algwit {

  finite_algebra make_sum_algebra(std::size_t n, unsigned arity) {
    if (n < 1 || n > 255 || arity < 1) {
      throw invalid_input("make_sum_algebra: need 1 <= n <= 255 and arity >= 1");
    }
    if (table_length(n, arity) > (std::size_t{1} << 24)) {
      throw invalid_input("make_sum_algebra: table too large");
    }
    operation_table t{"s" + std::to_string(arity), arity, {}};
    t.entries.resize(table_length(n, arity));
    for (std::size_t idx = 0; idx < t.entries.size(); ++idx) {
      std::size_t rest = idx, total = 0;
      for (unsigned p = 0; p < arity; ++p) {
        total += rest % n;
        rest /= n;
      }
      t.entries[idx] = static_cast<element>(total % n);
    }
    return finite_algebra("Z" + std::to_string(n) + "-sum" + std::to_string(arity), n,
                          {std::move(t)});
  }

  finite_algebra make_dissent_fixture() {
    operation_table d{"d", 3, {}};
    for (element idx = 0; idx < 8; ++idx) {
      d.entries.push_back(((idx >> 2) ^ (idx >> 1) ^ idx) & 1);
    }
    operation_table e{"e", 4, {}};
    for (element idx = 0; idx < 16; ++idx) {
      int ones = std::popcount(idx);
      e.entries.push_back(ones == 1 || ones == 4 ? 1 : 0);
    }
    return finite_algebra("dissent-fixture", 2, {std::move(d), std::move(e)});
  }

}  // namespace algwit
