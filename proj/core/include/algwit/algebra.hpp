#ifndef ALGWIT_ALGEBRA_HPP_
#define ALGWIT_ALGEBRA_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace algwit {

  using element = std::uint32_t;

  // Mixed-radix encoding of a product universe. The first coordinate is the
  // most significant digit, so nested products flatten without reindexing:
  // A x (B x C) and A x B x C share flat indices.
  class factor_indexing {
   public:
    factor_indexing() = default;
    explicit factor_indexing(std::vector<std::size_t> factor_sizes);

    std::size_t size() const noexcept {
      return _size;
    }
    std::size_t factor_count() const noexcept {
      return _sizes.size();
    }
    std::vector<std::size_t> const& factor_sizes() const noexcept {
      return _sizes;
    }

    std::size_t to_index(std::span<element const> tuple) const;
    std::vector<element> to_tuple(std::size_t index) const;
    element component(std::size_t index, std::size_t factor) const {
      return static_cast<element>((index / _strides[factor]) % _sizes[factor]);
    }

   private:
    std::vector<std::size_t> _sizes;
    std::vector<std::size_t> _strides;
    std::size_t              _size = 1;
  };

  struct operation_table {
    std::string          name;
    unsigned             arity = 0;
    std::vector<element> entries;  // size^arity, first argument most significant
  };

  class finite_algebra;

  // Factors and indexing of an algebra built as a direct product.
  struct product_structure {
    std::vector<finite_algebra> factors;
    factor_indexing             indexing;
  };

  // A finite algebra on {0, ..., size-1}. Operations are either stored as
  // tables or, for products too large to tabulate, evaluated componentwise
  // on demand. Values are immutable once built.
  class finite_algebra {
   public:
    finite_algebra() = default;
    finite_algebra(std::string                  label,
                   std::size_t                  size,
                   std::vector<operation_table> ops);

    // Product whose operations are computed coordinatewise. Tables are
    // materialised when size^arity stays within table_cap.
    static finite_algebra product(std::vector<finite_algebra> factors,
                                  std::string                 label,
                                  std::size_t                 table_cap);

    std::string const& label() const noexcept {
      return _label;
    }
    std::size_t size() const noexcept {
      return _size;
    }
    std::size_t op_count() const noexcept {
      return _arities.size();
    }
    unsigned arity(std::size_t op) const {
      return _arities.at(op);
    }
    std::string const& op_name(std::size_t op) const {
      return _names.at(op);
    }

    bool has_tables() const noexcept {
      return !_tables.empty() || _arities.empty();
    }
    operation_table const& table(std::size_t op) const;

    bool is_product() const noexcept {
      return static_cast<bool>(_product);
    }
    product_structure const& product_data() const;

    // Checked application: arity and element ranges are validated.
    element apply(std::size_t op, std::span<element const> args) const;
    // No validation; args must have the right length and be in range.
    element apply_unchecked(std::size_t op, std::span<element const> args) const;

    bool similar_to(finite_algebra const& other) const noexcept {
      return _arities == other._arities;
    }

    std::vector<unsigned> const& arities() const noexcept {
      return _arities;
    }

    finite_algebra with_label(std::string label) const {
      finite_algebra copy = *this;
      copy._label         = std::move(label);
      return copy;
    }

    friend bool operator==(finite_algebra const& a, finite_algebra const& b);

   private:
    std::string                              _label;
    std::size_t                              _size = 0;
    std::vector<unsigned>                    _arities;
    std::vector<std::string>                 _names;
    std::vector<operation_table>             _tables;
    std::shared_ptr<product_structure const> _product;
  };

  // Index of args in a table of the given universe size.
  std::size_t table_index(std::size_t size, std::span<element const> args);

  // Number of entries of a size^arity table, or SIZE_MAX on overflow.
  std::size_t table_length(std::size_t size, unsigned arity) noexcept;

  // Leaf factors of a (possibly nested) product; a non-product algebra is its
  // own single leaf. Flat indices over the leaves coincide with the algebra's
  // own element indices.
  std::vector<finite_algebra const*> leaf_factors(finite_algebra const& alg);

}  // namespace algwit

#endif  // ALGWIT_ALGEBRA_HPP_
