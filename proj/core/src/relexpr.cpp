#include "algwit/relexpr.hpp"

#include "algwit/error.hpp"

namespace algwit {

  namespace {
    element_set partition_image(std::vector<std::vector<element>> const& blocks,
                                partition const&                         p,
                                element_set const&                       from) {
      element_set       out(from.size());
      std::vector<char> hit(blocks.size(), 0);
      for (auto x = from.find_first(); x != element_set::npos; x = from.find_next(x)) {
        auto b = p.block_of(static_cast<element>(x));
        if (!hit[b]) {
          hit[b] = 1;
          for (element e : blocks[b]) {
            out.set(e);
          }
        }
      }
      return out;
    }
  }  // namespace

  rel_expr rel_expr::atom(partition const& p, std::string name) {
    auto n    = std::make_shared<node>();
    n->type   = kind::atom;
    n->size   = p.size();
    n->part   = std::make_shared<partition const>(p);
    n->blocks = p.blocks();
    n->name   = std::move(name);
    return rel_expr(std::move(n));
  }

  rel_expr rel_expr::meet(partition const& p, std::string name, rel_expr e) {
    if (e.size() != p.size()) {
      throw invalid_input("rel_expr::meet: size mismatch");
    }
    auto n    = std::make_shared<node>();
    n->type   = kind::meet;
    n->size   = p.size();
    n->part   = std::make_shared<partition const>(p);
    n->blocks = p.blocks();
    n->name   = std::move(name);
    n->children.push_back(std::move(e));
    return rel_expr(std::move(n));
  }

  rel_expr rel_expr::compose(std::vector<rel_expr> factors) {
    if (factors.empty()) {
      throw invalid_input("rel_expr::compose: no factors");
    }
    for (auto const& f : factors) {
      if (f.size() != factors.front().size()) {
        throw invalid_input("rel_expr::compose: size mismatch");
      }
    }
    if (factors.size() == 1) {
      return factors.front();
    }
    auto n      = std::make_shared<node>();
    n->type     = kind::compose;
    n->size     = factors.front().size();
    n->children = std::move(factors);
    return rel_expr(std::move(n));
  }

  rel_expr rel_expr::power(rel_expr e, std::size_t k) {
    if (k == 1) {
      return e;
    }
    auto n      = std::make_shared<node>();
    n->type     = kind::power;
    n->size     = e.size();
    n->exponent = k;
    n->children.push_back(std::move(e));
    return rel_expr(std::move(n));
  }

  element_set rel_expr::image(element_set const& from) const {
    if (from.size() != size()) {
      throw invalid_input("rel_expr::image: set of the wrong size");
    }
    switch (_node->type) {
      case kind::atom:
        return partition_image(_node->blocks, *_node->part, from);
      case kind::meet: {
        // x (P meet E) y iff x, y share a P-block and x E y
        element_set out(size());
        element_set part(size());
        std::vector<char> hit(_node->blocks.size(), 0);
        for (auto x = from.find_first(); x != element_set::npos; x = from.find_next(x)) {
          auto b = _node->part->block_of(static_cast<element>(x));
          if (hit[b]) {
            continue;
          }
          hit[b] = 1;
          part.reset();
          element_set block_mask(size());
          for (element e : _node->blocks[b]) {
            block_mask.set(e);
          }
          part = from & block_mask;
          out |= _node->children.front().image(part) & block_mask;
        }
        return out;
      }
      case kind::compose: {
        element_set cur = from;
        for (auto const& c : _node->children) {
          if (cur.none()) {
            break;
          }
          cur = c.image(cur);
        }
        return cur;
      }
      case kind::power: {
        element_set cur = from;
        for (std::size_t i = 0; i < _node->exponent; ++i) {
          element_set next = _node->children.front().image(cur);
          if (next == cur) {
            break;
          }
          cur = std::move(next);
        }
        return cur;
      }
    }
    return from;
  }

  element_set rel_expr::image_of(element x) const {
    element_set s(size());
    s.set(x);
    return image(s);
  }

  bin_relation rel_expr::to_relation() const {
    switch (_node->type) {
      case kind::atom:
        return rel_of_partition(*_node->part);
      case kind::meet:
        return rel_meet(rel_of_partition(*_node->part), _node->children.front().to_relation());
      case kind::compose: {
        bin_relation out = _node->children.front().to_relation();
        for (std::size_t i = 1; i < _node->children.size(); ++i) {
          out = rel_compose(out, _node->children[i].to_relation());
        }
        return out;
      }
      case kind::power:
        return rel_power(_node->children.front().to_relation(), _node->exponent);
    }
    return rel_identity(size());
  }

  std::string rel_expr::to_string() const {
    switch (_node->type) {
      case kind::atom:
        return _node->name;
      case kind::meet: {
        auto const& c = _node->children.front();
        if (c.type() == kind::atom) {
          return _node->name + c.to_string();
        }
        return _node->name + "(" + c.to_string() + ")";
      }
      case kind::compose: {
        std::string out;
        for (std::size_t i = 0; i < _node->children.size(); ++i) {
          out += (i == 0 ? "" : " o ") + _node->children[i].to_string();
        }
        return out;
      }
      case kind::power:
        return "(" + _node->children.front().to_string() + ")^"
               + std::to_string(_node->exponent);
    }
    return {};
  }

  std::optional<std::vector<element>> witness_chain(element                       x,
                                                    element                       y,
                                                    std::vector<partition> const& steps) {
    if (steps.empty()) {
      if (x == y) {
        return std::vector<element>{x};
      }
      return std::nullopt;
    }
    std::size_t const n = steps.front().size();
    if (x >= n || y >= n) {
      throw invalid_input("witness_chain: element out of range");
    }
    // reach[i]: elements from which y is reachable using steps[i..]
    std::vector<element_set> reach(steps.size() + 1, element_set(n));
    reach.back().set(y);
    for (std::size_t i = steps.size(); i-- > 0;) {
      auto blocks = steps[i].blocks();
      reach[i]    = partition_image(blocks, steps[i], reach[i + 1]);
    }
    if (!reach[0].test(x)) {
      return std::nullopt;
    }
    std::vector<element> chain{x};
    element              cur = x;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      for (element z = 0; z < n; ++z) {
        if (reach[i + 1].test(z) && steps[i].related(cur, z)) {
          cur = z;
          break;
        }
      }
      chain.push_back(cur);
    }
    return chain;
  }

}  // namespace algwit
