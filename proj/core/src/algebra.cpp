#include "algwit/algebra.hpp"

#include <array>
#include <limits>

#include "algwit/error.hpp"

namespace algwit {

  factor_indexing::factor_indexing(std::vector<std::size_t> factor_sizes)
      : _sizes(std::move(factor_sizes)), _strides(_sizes.size()) {
    std::size_t stride = 1;
    for (std::size_t i = _sizes.size(); i-- > 0;) {
      if (_sizes[i] == 0) {
        throw invalid_input("factor_indexing: factor " + std::to_string(i)
                            + " has size 0");
      }
      _strides[i] = stride;
      if (stride > std::numeric_limits<std::size_t>::max() / _sizes[i]) {
        throw invalid_input("factor_indexing: product size overflows");
      }
      stride *= _sizes[i];
    }
    _size = stride;
  }

  std::size_t factor_indexing::to_index(std::span<element const> tuple) const {
    if (tuple.size() != _sizes.size()) {
      throw invalid_input("factor_indexing: expected tuple of length "
                          + std::to_string(_sizes.size()) + ", got "
                          + std::to_string(tuple.size()));
    }
    std::size_t index = 0;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      if (tuple[i] >= _sizes[i]) {
        throw invalid_input("factor_indexing: coordinate " + std::to_string(i)
                            + " out of range");
      }
      index += tuple[i] * _strides[i];
    }
    return index;
  }

  std::vector<element> factor_indexing::to_tuple(std::size_t index) const {
    if (index >= _size) {
      throw invalid_input("factor_indexing: index " + std::to_string(index)
                          + " out of range");
    }
    std::vector<element> tuple(_sizes.size());
    for (std::size_t i = 0; i < _sizes.size(); ++i) {
      tuple[i] = component(index, i);
    }
    return tuple;
  }

  std::size_t table_length(std::size_t size, unsigned arity) noexcept {
    std::size_t length = 1;
    for (unsigned i = 0; i < arity; ++i) {
      if (size != 0 && length > std::numeric_limits<std::size_t>::max() / size) {
        return std::numeric_limits<std::size_t>::max();
      }
      length *= size;
    }
    return length;
  }

  std::size_t table_index(std::size_t size, std::span<element const> args) {
    std::size_t index = 0;
    for (element a : args) {
      index = index * size + a;
    }
    return index;
  }

  finite_algebra::finite_algebra(std::string                  label,
                                 std::size_t                  size,
                                 std::vector<operation_table> ops)
      : _label(std::move(label)), _size(size), _tables(std::move(ops)) {
    if (_size == 0) {
      throw invalid_input("finite_algebra: size must be positive");
    }
    for (std::size_t k = 0; k < _tables.size(); ++k) {
      auto const& op = _tables[k];
      if (op.arity == 0) {
        throw invalid_input("finite_algebra: operation " + std::to_string(k)
                            + " has arity 0 (constants are not supported)");
      }
      if (op.entries.size() != table_length(_size, op.arity)) {
        throw invalid_input("finite_algebra: operation " + std::to_string(k)
                            + " table length " + std::to_string(op.entries.size())
                            + " != size^arity");
      }
      for (element e : op.entries) {
        if (e >= _size) {
          throw invalid_input("finite_algebra: operation " + std::to_string(k)
                              + " has entry " + std::to_string(e)
                              + " outside the universe");
        }
      }
      _arities.push_back(op.arity);
      _names.push_back(op.name);
    }
  }

  finite_algebra finite_algebra::product(std::vector<finite_algebra> factors,
                                         std::string                 label,
                                         std::size_t                 table_cap) {
    if (factors.empty()) {
      throw invalid_input("direct_product: no factors");
    }
    for (std::size_t i = 1; i < factors.size(); ++i) {
      if (!factors[i].similar_to(factors[0])) {
        throw invalid_input("direct_product: factor " + std::to_string(i)
                            + " is not similar to factor 0");
      }
    }
    std::vector<std::size_t> sizes;
    for (auto const& f : factors) {
      sizes.push_back(f.size());
    }
    auto data      = std::make_shared<product_structure>();
    data->indexing = factor_indexing(sizes);
    data->factors  = std::move(factors);

    finite_algebra result;
    result._label   = std::move(label);
    result._size    = data->indexing.size();
    result._arities = data->factors[0]._arities;
    result._names   = data->factors[0]._names;
    result._product = data;

    bool tabulate = true;
    for (unsigned r : result._arities) {
      if (table_length(result._size, r) > table_cap) {
        tabulate = false;
      }
    }
    if (tabulate) {
      std::vector<operation_table> tables;
      for (std::size_t k = 0; k < result._arities.size(); ++k) {
        unsigned        r = result._arities[k];
        operation_table t{result._names[k], r, {}};
        t.entries.resize(table_length(result._size, r));
        std::vector<element> args(r, 0);
        for (std::size_t idx = 0; idx < t.entries.size(); ++idx) {
          t.entries[idx] = result.apply_unchecked(k, args);
          // advance the odometer, last argument fastest
          for (std::size_t p = r; p-- > 0;) {
            if (++args[p] < result._size) {
              break;
            }
            args[p] = 0;
          }
        }
        tables.push_back(std::move(t));
      }
      result._tables = std::move(tables);
    }
    return result;
  }

  operation_table const& finite_algebra::table(std::size_t op) const {
    if (op >= _arities.size()) {
      throw invalid_input("finite_algebra: no operation " + std::to_string(op));
    }
    if (_tables.empty()) {
      throw invalid_input("finite_algebra '" + _label
                          + "': operation tables are not materialised");
    }
    return _tables[op];
  }

  product_structure const& finite_algebra::product_data() const {
    if (!_product) {
      throw invalid_input("finite_algebra '" + _label + "' is not a product");
    }
    return *_product;
  }

  element finite_algebra::apply(std::size_t op, std::span<element const> args) const {
    if (op >= _arities.size()) {
      throw invalid_input("apply_op: no operation " + std::to_string(op));
    }
    if (args.size() != _arities[op]) {
      throw invalid_input("apply_op: operation " + std::to_string(op) + " has arity "
                          + std::to_string(_arities[op]) + ", got "
                          + std::to_string(args.size()) + " arguments");
    }
    for (element a : args) {
      if (a >= _size) {
        throw invalid_input("apply_op: element " + std::to_string(a)
                            + " outside universe of size " + std::to_string(_size));
      }
    }
    return apply_unchecked(op, args);
  }

  element finite_algebra::apply_unchecked(std::size_t              op,
                                          std::span<element const> args) const {
    if (!_tables.empty()) {
      return _tables[op].entries[table_index(_size, args)];
    }
    auto const&                 idx = _product->indexing;
    std::array<element, 32>     small{};
    std::vector<element>        large;
    std::span<element>          component_args(small.data(), args.size());
    if (args.size() > small.size()) {
      large.resize(args.size());
      component_args = std::span<element>(large);
    }
    std::size_t result = 0;
    for (std::size_t f = 0; f < idx.factor_count(); ++f) {
      for (std::size_t p = 0; p < args.size(); ++p) {
        component_args[p] = idx.component(args[p], f);
      }
      result = result * idx.factor_sizes()[f]
               + _product->factors[f].apply_unchecked(op, component_args);
    }
    return static_cast<element>(result);
  }

  bool operator==(finite_algebra const& a, finite_algebra const& b) {
    if (a._size != b._size || a._arities != b._arities || a._names != b._names) {
      return false;
    }
    for (std::size_t k = 0; k < a._arities.size(); ++k) {
      if (a.table(k).entries != b.table(k).entries) {
        return false;
      }
    }
    return true;
  }

  namespace {
    void collect_leaves(finite_algebra const&               alg,
                        std::vector<finite_algebra const*>& out) {
      if (!alg.is_product()) {
        out.push_back(&alg);
        return;
      }
      for (auto const& f : alg.product_data().factors) {
        collect_leaves(f, out);
      }
    }
  }  // namespace

  std::vector<finite_algebra const*> leaf_factors(finite_algebra const& alg) {
    std::vector<finite_algebra const*> out;
    collect_leaves(alg, out);
    return out;
  }

}  // namespace algwit
