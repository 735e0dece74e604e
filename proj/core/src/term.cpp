#include "algwit/term.hpp"

#include <algorithm>
#include <unordered_map>

#include "algwit/error.hpp"

namespace algwit {

  term term::variable(std::size_t index) {
    auto n         = std::make_shared<node>();
    n->is_variable = true;
    n->index       = index;
    return term(std::move(n));
  }

  term term::apply(std::size_t op, std::vector<term> args) {
    if (args.empty()) {
      throw invalid_input("term::apply: operation symbols need at least one argument");
    }
    auto n         = std::make_shared<node>();
    n->is_variable = false;
    n->index       = op;
    n->args        = std::move(args);
    return term(std::move(n));
  }

  namespace {
    template <typename F>
    std::size_t fold_dag(term const&                                   t,
                         std::unordered_map<void const*, std::size_t>& memo,
                         F const&                                      combine) {
      auto it = memo.find(t.identity());
      if (it != memo.end()) {
        return it->second;
      }
      std::vector<std::size_t> child;
      for (auto const& a : t.args()) {
        child.push_back(fold_dag(a, memo, combine));
      }
      std::size_t value = combine(t, child);
      memo.emplace(t.identity(), value);
      return value;
    }
  }  // namespace

  std::size_t term::variable_count() const {
    std::unordered_map<void const*, std::size_t> memo;
    return fold_dag(*this, memo, [](term const& t, std::vector<std::size_t> const& c) {
      if (t.is_variable()) {
        return t.variable_index() + 1;
      }
      return *std::max_element(c.begin(), c.end());
    });
  }

  std::size_t term::depth() const {
    std::unordered_map<void const*, std::size_t> memo;
    return fold_dag(*this, memo, [](term const& t, std::vector<std::size_t> const& c) {
      if (t.is_variable()) {
        return std::size_t{0};
      }
      return *std::max_element(c.begin(), c.end()) + 1;
    });
  }

  bool term::well_formed_for(finite_algebra const& alg) const {
    std::unordered_map<void const*, std::size_t> memo;
    return fold_dag(*this,
                    memo,
                    [&alg](term const& t, std::vector<std::size_t> const& c) {
                      if (t.is_variable()) {
                        return std::size_t{1};
                      }
                      if (t.op() >= alg.op_count() || alg.arity(t.op()) != c.size()) {
                        return std::size_t{0};
                      }
                      return static_cast<std::size_t>(
                          std::all_of(c.begin(), c.end(), [](auto v) { return v == 1; }));
                    })
           == 1;
  }

  element term::evaluate(finite_algebra const& alg, std::span<element const> assignment) const {
    std::unordered_map<void const*, std::size_t> memo;
    std::vector<element>                         buf;
    return static_cast<element>(fold_dag(
        *this, memo, [&](term const& t, std::vector<std::size_t> const& c) -> std::size_t {
          if (t.is_variable()) {
            if (t.variable_index() >= assignment.size()) {
              throw invalid_input("term::evaluate: variable x"
                                  + std::to_string(t.variable_index())
                                  + " has no value");
            }
            return assignment[t.variable_index()];
          }
          buf.assign(c.begin(), c.end());
          return alg.apply(t.op(), buf);
        }));
  }

  std::vector<element> term::evaluate_all(finite_algebra const& alg,
                                          std::size_t           arity) const {
    if (variable_count() > arity) {
      throw invalid_input("term::evaluate_all: term uses more than "
                          + std::to_string(arity) + " variables");
    }
    std::size_t const rows = table_length(alg.size(), static_cast<unsigned>(arity));
    if (rows > (std::size_t{1} << 26)) {
      throw cap_exceeded("term::evaluate_all: too many assignments", rows);
    }
    if (!well_formed_for(alg)) {
      throw invalid_input("term::evaluate_all: term does not match the signature of '"
                          + alg.label() + "'");
    }
    std::unordered_map<void const*, std::vector<element>> memo;
    std::vector<element>                                  args;

    auto rec = [&](auto&& self, term const& t) -> std::vector<element> const& {
      auto it = memo.find(t.identity());
      if (it != memo.end()) {
        return it->second;
      }
      std::vector<element> values(rows);
      if (t.is_variable()) {
        std::size_t stride = 1;
        for (std::size_t p = t.variable_index() + 1; p < arity; ++p) {
          stride *= alg.size();
        }
        for (std::size_t r = 0; r < rows; ++r) {
          values[r] = static_cast<element>((r / stride) % alg.size());
        }
      } else {
        std::vector<std::vector<element> const*> child;
        for (auto const& a : t.args()) {
          child.push_back(&self(self, a));
        }
        args.resize(child.size());
        for (std::size_t r = 0; r < rows; ++r) {
          for (std::size_t p = 0; p < child.size(); ++p) {
            args[p] = (*child[p])[r];
          }
          values[r] = alg.apply_unchecked(t.op(), args);
        }
      }
      return memo.emplace(t.identity(), std::move(values)).first->second;
    };
    return rec(rec, *this);
  }

  term term::substitute(std::span<term const> replacement) const {
    std::unordered_map<void const*, term> memo;
    auto rec = [&](auto&& self, term const& t) -> term {
      auto it = memo.find(t.identity());
      if (it != memo.end()) {
        return it->second;
      }
      term out;
      if (t.is_variable()) {
        if (t.variable_index() >= replacement.size()) {
          throw invalid_input("term::substitute: no replacement for x"
                              + std::to_string(t.variable_index()));
        }
        out = replacement[t.variable_index()];
      } else {
        std::vector<term> args;
        for (auto const& a : t.args()) {
          args.push_back(self(self, a));
        }
        out = apply(t.op(), std::move(args));
      }
      memo.emplace(t.identity(), out);
      return out;
    };
    return rec(rec, *this);
  }

  std::string term::to_string(finite_algebra const* signature) const {
    if (is_variable()) {
      return "x" + std::to_string(variable_index());
    }
    std::string out = signature != nullptr && op() < signature->op_count()
                          ? signature->op_name(op())
                          : "f" + std::to_string(op());
    out += "(";
    for (std::size_t i = 0; i < args().size(); ++i) {
      out += (i == 0 ? "" : ",") + args()[i].to_string(signature);
    }
    return out + ")";
  }

  bool operator==(term const& a, term const& b) {
    if (a._node == b._node) {
      return true;
    }
    if (a.is_variable() != b.is_variable() || a._node->index != b._node->index
        || a.args().size() != b.args().size()) {
      return false;
    }
    for (std::size_t i = 0; i < a.args().size(); ++i) {
      if (!(a.args()[i] == b.args()[i])) {
        return false;
      }
    }
    return true;
  }

}  // namespace algwit
