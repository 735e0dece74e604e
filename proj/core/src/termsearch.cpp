#include "algwit/termsearch.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "algwit/closure.hpp"
#include "algwit/error.hpp"
#include "detail/semi_naive.hpp"

namespace algwit {

  namespace {
    // Odometer over A^k, last position fastest.
    bool next_assignment(std::vector<element>& s, std::size_t size) {
      for (std::size_t p = s.size(); p-- > 0;) {
        if (++s[p] < size) {
          return true;
        }
        s[p] = 0;
      }
      return false;
    }

    std::vector<element> instantiate(pattern const& pat, std::vector<element> const& s) {
      std::vector<element> point(pat.size());
      for (std::size_t p = 0; p < pat.size(); ++p) {
        point[p] = s[pat[p]];
      }
      return point;
    }

    std::string pattern_text(pattern const& pat) {
      static char const names[] = {'x', 'y', 'z', 'u', 'v', 'w'};
      std::string       out     = "(";
      for (std::size_t p = 0; p < pat.size(); ++p) {
        out += (p == 0 ? "" : ",");
        out += pat[p] < sizeof(names) ? std::string(1, names[pat[p]])
                                      : "p" + std::to_string(pat[p]);
      }
      return out + ")";
    }

    std::vector<term> variables(std::size_t n) {
      std::vector<term> out;
      for (std::size_t i = 0; i < n; ++i) {
        out.push_back(term::variable(i));
      }
      return out;
    }

    void require_similar(std::vector<finite_algebra> const& gens, char const* who) {
      if (gens.empty()) {
        throw invalid_input(std::string(who) + ": no generating algebras");
      }
      for (auto const& a : gens) {
        if (!a.similar_to(gens[0])) {
          throw invalid_input(std::string(who) + ": generating algebras are not similar");
        }
        if (a.size() > 255) {
          throw invalid_input(std::string(who) + ": generating algebras must have at most "
                              "255 elements");
        }
        if (a.op_count() == 0) {
          throw invalid_input(std::string(who) + ": generating algebras have no operations");
        }
      }
    }

    struct vector_closure_out {
      std::vector<std::string> rows;
      std::vector<term>        terms;
      std::optional<std::size_t> hit;
    };

    std::vector<bool> common_symmetry(std::vector<finite_algebra> const& gens) {
      std::vector<bool> sym(gens[0].op_count(), true);
      for (auto const& a : gens) {
        auto s = symmetric_ops(a);
        for (std::size_t op = 0; op < sym.size(); ++op) {
          sym[op] = sym[op] && s[op];
        }
      }
      return sym;
    }

    // Two-element generators with at most 64 coordinates: rows are bit masks
    // and each operation is evaluated as a sum of minterms.
    template <typename Stop>
    vector_closure_out boolean_closure(std::vector<finite_algebra> const& gens,
                                       std::vector<std::size_t> const&    owner,
                                       std::vector<std::string> const&    initial,
                                       limits const&                      lim,
                                       Stop&&                             stop) {
      std::size_t const width = owner.size();
      auto to_bits = [&](std::string const& row) {
        std::uint64_t b = 0;
        for (std::size_t c = 0; c < width; ++c) {
          b |= static_cast<std::uint64_t>(row[c] != 0) << c;
        }
        return b;
      };
      auto to_row = [&](std::uint64_t b) {
        std::string row(width, '\0');
        for (std::size_t c = 0; c < width; ++c) {
          row[c] = static_cast<char>((b >> c) & 1);
        }
        return row;
      };
      struct part {
        std::uint64_t              mask = 0;
        std::vector<std::uint32_t> minterms;
        bool                       negate = false;  // minterms list the zeros
      };
      std::size_t const              ops = gens[0].op_count();
      std::vector<std::vector<part>> parts(ops);
      for (std::size_t op = 0; op < ops; ++op) {
        for (std::size_t i = 0; i < gens.size(); ++i) {
          part pt;
          for (std::size_t c = 0; c < width; ++c) {
            if (owner[c] == i) {
              pt.mask |= std::uint64_t{1} << c;
            }
          }
          if (pt.mask == 0) {
            continue;
          }
          auto const& entries = gens[i].table(op).entries;
          auto ones = static_cast<std::size_t>(std::count(entries.begin(), entries.end(), 1u));
          pt.negate = 2 * ones > entries.size();
          for (std::uint32_t t = 0; t < entries.size(); ++t) {
            if ((entries[t] == 1) != pt.negate) {
              pt.minterms.push_back(t);
            }
          }
          parts[op].push_back(std::move(pt));
        }
      }
      auto const sym = common_symmetry(gens);

      vector_closure_out                             out;
      std::vector<std::uint64_t>                     rows;
      std::unordered_map<std::uint64_t, std::size_t> where;
      auto finish = [&] {
        for (auto b : rows) {
          out.rows.push_back(to_row(b));
        }
        return out;
      };
      for (std::size_t v = 0; v < initial.size(); ++v) {
        auto b = to_bits(initial[v]);
        if (where.emplace(b, rows.size()).second) {
          rows.push_back(b);
          out.terms.push_back(term::variable(v));
          if (stop(initial[v])) {
            out.hit = rows.size() - 1;
            return finish();
          }
        }
      }
      std::size_t                work    = 0;
      std::size_t                old_end = 0;
      std::vector<std::uint64_t> args;
      while (old_end < rows.size() && !out.hit) {
        std::size_t const new_end = rows.size();
        for (std::size_t op = 0; op < ops && !out.hit; ++op) {
          unsigned const r = gens[0].arity(op);
          args.resize(r);
          detail::semi_naive_tuples(r, sym[op], old_end, new_end, [&](auto const& idx) {
            work += width;
            if (work > lim.work_cap) {
              throw cap_exceeded("vector closure: work cap reached", rows.size());
            }
            for (unsigned p = 0; p < r; ++p) {
              args[p] = rows[idx[p]];
            }
            std::uint64_t value = 0;
            for (auto const& pt : parts[op]) {
              std::uint64_t acc = 0;
              for (std::uint32_t t : pt.minterms) {
                std::uint64_t w = pt.mask;
                for (unsigned p = 0; p < r && w != 0; ++p) {
                  w &= ((t >> (r - 1 - p)) & 1) != 0 ? args[p] : ~args[p];
                }
                acc |= w;
              }
              value |= pt.negate ? (pt.mask & ~acc) : acc;
            }
            if (!where.emplace(value, rows.size()).second) {
              return true;
            }
            if (rows.size() >= lim.closure_cap) {
              throw cap_exceeded("vector closure: closure cap "
                                     + std::to_string(lim.closure_cap) + " reached",
                                 rows.size());
            }
            rows.push_back(value);
            std::vector<term> sub;
            for (auto i : idx) {
              sub.push_back(out.terms[i]);
            }
            out.terms.push_back(term::apply(op, std::move(sub)));
            if (stop(to_row(value))) {
              out.hit = rows.size() - 1;
              return false;
            }
            return true;
          });
        }
        old_end = new_end;
      }
      return finish();
    }

    // Closure of the initial vectors under the componentwise operations;
    // coordinate c lives in gens[owner[c]]. stop(row) ends the search early.
    template <typename Stop>
    vector_closure_out vector_closure(std::vector<finite_algebra> const& gens,
                                      std::vector<std::size_t> const&    owner,
                                      std::vector<std::string> const&    initial,
                                      limits const&                      lim,
                                      Stop&&                             stop) {
      bool boolean = owner.size() <= 64;
      for (auto const& a : gens) {
        boolean = boolean && a.size() == 2 && a.has_tables();
      }
      if (boolean) {
        return boolean_closure(gens, owner, initial, lim, stop);
      }
      vector_closure_out                           out;
      std::unordered_map<std::string, std::size_t> where;
      for (std::size_t v = 0; v < initial.size(); ++v) {
        if (where.emplace(initial[v], out.rows.size()).second) {
          out.rows.push_back(initial[v]);
          out.terms.push_back(term::variable(v));
          if (stop(out.rows.back())) {
            out.hit = out.rows.size() - 1;
            return out;
          }
        }
      }
      std::size_t const width = owner.size();
      std::size_t const ops   = gens[0].op_count();
      auto const        sym   = common_symmetry(gens);
      std::size_t          work    = 0;
      std::size_t          old_end = 0;
      std::string          value(width, '\0');
      std::vector<element> args;
      while (old_end < out.rows.size() && !out.hit) {
        std::size_t const new_end = out.rows.size();
        for (std::size_t op = 0; op < ops && !out.hit; ++op) {
          unsigned const r = gens[0].arity(op);
          args.resize(r);
          detail::semi_naive_tuples(r, sym[op], old_end, new_end, [&](auto const& idx) {
            work += width;
            if (work > lim.work_cap) {
              throw cap_exceeded("vector closure: work cap reached", out.rows.size());
            }
            for (std::size_t c = 0; c < width; ++c) {
              for (unsigned p = 0; p < r; ++p) {
                args[p] = static_cast<unsigned char>(out.rows[idx[p]][c]);
              }
              value[c] = static_cast<char>(gens[owner[c]].apply_unchecked(op, args));
            }
            if (!where.emplace(value, out.rows.size()).second) {
              return true;
            }
            if (out.rows.size() >= lim.closure_cap) {
              throw cap_exceeded("vector closure: closure cap "
                                     + std::to_string(lim.closure_cap) + " reached",
                                 out.rows.size());
            }
            out.rows.push_back(value);
            std::vector<term> sub;
            for (auto i : idx) {
              sub.push_back(out.terms[i]);
            }
            out.terms.push_back(term::apply(op, std::move(sub)));
            if (stop(out.rows.back())) {
              out.hit = out.rows.size() - 1;
              return false;
            }
            return true;
          });
        }
        old_end = new_end;
      }
      return out;
    }
  }  // namespace

  unsigned pattern_variable_count(term_equation const& eq) {
    unsigned k = 0;
    for (unsigned v : eq.lhs) {
      k = std::max(k, v + 1);
    }
    if (eq.rhs_term) {
      for (unsigned v : eq.rhs) {
        k = std::max(k, v + 1);
      }
    } else {
      k = std::max(k, eq.rhs_var + 1);
    }
    return k;
  }

  std::optional<equation_violation> verify_term_identity(std::span<term const>          terms,
                                                         finite_algebra const&          alg,
                                                         std::span<term_equation const> eqs) {
    for (std::size_t e = 0; e < eqs.size(); ++e) {
      auto const& eq = eqs[e];
      auto check_side = [&](std::size_t slot, pattern const& pat) {
        if (slot >= terms.size()) {
          throw invalid_input("verify_term_identity: equation '" + eq.label
                              + "' refers to a missing term");
        }
        if (terms[slot].variable_count() > pat.size()) {
          throw invalid_input("verify_term_identity: term " + std::to_string(slot)
                              + " has more variables than the pattern of '" + eq.label
                              + "'");
        }
        if (!terms[slot].well_formed_for(alg)) {
          throw invalid_input("verify_term_identity: term " + std::to_string(slot)
                              + " does not fit the signature of '" + alg.label() + "'");
        }
      };
      check_side(eq.lhs_term, eq.lhs);
      if (eq.rhs_term) {
        check_side(*eq.rhs_term, eq.rhs);
      }
      unsigned const k = pattern_variable_count(eq);
      if (table_length(alg.size(), k) > (std::size_t{1} << 26)) {
        throw cap_exceeded("verify_term_identity: too many assignments",
                           table_length(alg.size(), k));
      }
      std::vector<element> s(k, 0);
      do {
        element lhs = terms[eq.lhs_term].evaluate(alg, instantiate(eq.lhs, s));
        element rhs = eq.rhs_term ? terms[*eq.rhs_term].evaluate(alg, instantiate(eq.rhs, s))
                                  : s[eq.rhs_var];
        if (lhs != rhs) {
          return equation_violation{e, 0, s, lhs, rhs};
        }
      } while (next_assignment(s, alg.size()));
    }
    return std::nullopt;
  }

  std::optional<equation_violation> verify_term_identity(
      std::span<term const>              terms,
      std::vector<finite_algebra> const& gens,
      std::span<term_equation const>     eqs) {
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (auto v = verify_term_identity(terms, gens[i], eqs)) {
        v->algebra = i;
        return v;
      }
    }
    return std::nullopt;
  }

  std::vector<term_equation> near_unanimity_equations(unsigned arity) {
    std::vector<term_equation> out;
    for (unsigned p = 0; p < arity; ++p) {
      pattern pat(arity, 0);
      pat[p] = 1;
      out.push_back({"u" + pattern_text(pat) + " = x", 0, pat, std::nullopt, {}, 0});
    }
    return out;
  }

  std::vector<term_equation> lone_dissent_equations(unsigned arity) {
    std::vector<term_equation> out;
    for (unsigned p = 0; p < arity; ++p) {
      pattern pat(arity, 0);
      pat[p] = 1;
      out.push_back({"u" + pattern_text(pat) + " = y", 0, pat, std::nullopt, {}, 1});
    }
    return out;
  }

  std::vector<term_equation> maltsev_equations() {
    return {{"t(x,y,y) = x", 0, {0, 1, 1}, std::nullopt, {}, 0},
            {"t(x,x,y) = y", 0, {0, 0, 1}, std::nullopt, {}, 1}};
  }

  std::vector<term_equation> idempotence_equations(unsigned arity) {
    pattern pat(arity, 0);
    return {{"u" + pattern_text(pat) + " = x", 0, pat, std::nullopt, {}, 0}};
  }

  std::vector<term_equation> half_nu_equations(unsigned m) {
    return absorption_equations(half_nu_scheme(m));
  }

  std::vector<term_equation> dissent_unanimity_equations(unsigned m) {
    return absorption_equations(dissent_unanimity_scheme(m));
  }

  std::size_t free_algebra::projection(unsigned v) const {
    if (v >= generators) {
      throw invalid_input("free_algebra: no generator x" + std::to_string(v));
    }
    std::string key(width(), '\0');
    for (std::size_t c = 0; c < width(); ++c) {
      key[c] = static_cast<char>(points[c][v]);
    }
    for (std::size_t i = 0; i < size(); ++i) {
      auto row = value(i);
      if (std::equal(row.begin(), row.end(), key.begin(),
                     [](std::uint8_t a, char b) { return a == static_cast<unsigned char>(b); })) {
        return i;
      }
    }
    throw verification_failed("free_algebra: projection missing");
  }

  std::size_t free_algebra::coordinate(std::size_t algebra, std::span<element const> point) const {
    if (algebra >= gens.size() || point.size() != generators) {
      throw invalid_input("free_algebra::coordinate: bad algebra or point");
    }
    std::size_t base = 0;
    for (std::size_t i = 0; i < algebra; ++i) {
      base += table_length(gens[i].size(), generators);
    }
    for (element e : point) {
      if (e >= gens[algebra].size()) {
        throw invalid_input("free_algebra::coordinate: value out of range");
      }
    }
    return base + table_index(gens[algebra].size(), point);
  }

  free_algebra build_free_algebra(std::vector<finite_algebra> gens, unsigned g, limits const& lim) {
    require_similar(gens, "build_free_algebra");
    if (g < 2) {
      throw invalid_input("build_free_algebra: need at least 2 generators");
    }
    double bits = 0;
    for (auto const& a : gens) {
      bits += static_cast<double>(table_length(a.size(), g)) * std::log2(static_cast<double>(a.size()));
    }
    if (bits > std::log2(static_cast<double>(lim.work_cap))) {
      throw cap_exceeded("build_free_algebra: value space of 2^" + std::to_string(bits)
                             + " exceeds the cap",
                         0);
    }
    free_algebra fa;
    fa.gens       = std::move(gens);
    fa.generators = g;
    for (std::size_t i = 0; i < fa.gens.size(); ++i) {
      std::vector<element> s(g, 0);
      do {
        fa.owner.push_back(i);
        fa.points.push_back(s);
      } while (next_assignment(s, fa.gens[i].size()));
    }
    std::vector<std::string> initial(g, std::string(fa.width(), '\0'));
    for (unsigned v = 0; v < g; ++v) {
      for (std::size_t c = 0; c < fa.width(); ++c) {
        initial[v][c] = static_cast<char>(fa.points[c][v]);
      }
    }
    auto out = vector_closure(fa.gens, fa.owner, initial, lim, [](std::string const&) {
      return false;
    });
    std::vector<std::size_t> order(out.rows.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return out.rows[a] < out.rows[b]; });
    fa.data.reserve(out.rows.size() * fa.width());
    for (auto i : order) {
      fa.data.insert(fa.data.end(), out.rows[i].begin(), out.rows[i].end());
      fa.provenance.push_back(out.terms[i]);
    }
    return fa;
  }

  chain_scheme jonsson_scheme() {
    chain_scheme s;
    s.name       = "jonsson";
    s.generators = 3;
    s.every      = {{{0, 1, 0}, 0}};
    s.first      = {{{0, 1, 2}, 0}};
    s.last       = {{{0, 1, 2}, 2}};
    s.even       = {{0, 0, 1}, {0, 0, 1}};
    s.odd        = {{0, 1, 1}, {0, 1, 1}};
    return s;
  }

  chain_scheme alvin_scheme() {
    chain_scheme s = jonsson_scheme();
    s.name         = "alvin";
    std::swap(s.even, s.odd);
    return s;
  }

  chain_scheme day_scheme() {
    chain_scheme s;
    s.name       = "day";
    s.generators = 4;
    s.every      = {{{0, 1, 1, 0}, 0}};
    s.first      = {{{0, 1, 2, 3}, 0}};
    s.last       = {{{0, 1, 2, 3}, 3}};
    s.even       = {{0, 0, 1, 1}, {0, 0, 1, 1}};
    s.odd        = {{0, 1, 1, 2}, {0, 1, 1, 2}};
    return s;
  }

  chain_scheme hagemann_mitschke_scheme() {
    chain_scheme s;
    s.name       = "hm";
    s.generators = 3;
    s.first      = {{{0, 1, 2}, 0}};
    s.last       = {{{0, 1, 2}, 2}};
    s.even       = {{0, 0, 1}, {0, 1, 1}};
    s.odd        = s.even;
    return s;
  }

  chain_scheme directed_jonsson_scheme() {
    chain_scheme s;
    s.name        = "directed-jonsson";
    s.generators  = 3;
    s.first_index = 1;
    s.every       = {{{0, 1, 0}, 0}};
    s.first       = {{{0, 0, 1}, 0}};
    s.last        = {{{0, 1, 1}, 1}};
    s.even        = {{0, 1, 1}, {0, 0, 1}};
    s.odd         = s.even;
    return s;
  }

  chain_scheme directed_minority_scheme() {
    chain_scheme s;
    s.name        = "directed-minority";
    s.generators  = 3;
    s.first_index = 1;
    s.every       = {{{0, 1, 0}, 1}};
    s.first       = {{{0, 0, 1}, 1}};
    s.last        = {{{0, 1, 1}, 0}};
    s.even        = {{0, 1, 1}, {0, 0, 1}};
    s.odd         = s.even;
    return s;
  }

  std::vector<std::string> chain_scheme_names() {
    return {"jonsson", "alvin", "day", "hm", "directed-jonsson", "directed-minority"};
  }

  chain_scheme chain_scheme_by_name(std::string const& name) {
    if (name == "jonsson") {
      return jonsson_scheme();
    }
    if (name == "alvin") {
      return alvin_scheme();
    }
    if (name == "day") {
      return day_scheme();
    }
    if (name == "hm") {
      return hagemann_mitschke_scheme();
    }
    if (name == "directed-jonsson") {
      return directed_jonsson_scheme();
    }
    if (name == "directed-minority") {
      return directed_minority_scheme();
    }
    throw invalid_input("unknown chain scheme '" + name + "'");
  }

  std::vector<term_equation> chain_equations(chain_scheme const& scheme, unsigned level) {
    std::size_t const count =
        level >= scheme.first_index ? level - scheme.first_index + 1 : std::size_t{1};
    std::vector<term_equation> out;
    auto name = [&](std::size_t slot) {
      return "t" + std::to_string(scheme.first_index + slot);
    };
    auto add = [&](std::size_t slot, node_constraint const& c) {
      out.push_back({name(slot) + pattern_text(c.pat) + " = " + pattern_text({c.var}).substr(1, 1),
                     slot, c.pat, std::nullopt, {}, c.var});
    };
    for (auto const& c : scheme.first) {
      add(0, c);
    }
    for (auto const& c : scheme.last) {
      add(count - 1, c);
    }
    for (std::size_t slot = 0; slot < count; ++slot) {
      for (auto const& c : scheme.every) {
        add(slot, c);
      }
    }
    for (std::size_t slot = 0; slot + 1 < count; ++slot) {
      auto const& rule = (scheme.first_index + slot) % 2 == 0 ? scheme.even : scheme.odd;
      out.push_back({name(slot) + pattern_text(rule.from) + " = " + name(slot + 1)
                         + pattern_text(rule.to),
                     slot, rule.from, slot + 1, rule.to, 0});
    }
    return out;
  }

  std::string to_string(search_verdict v) {
    switch (v) {
      case search_verdict::found:
        return "found";
      case search_verdict::none:
        return "none";
      case search_verdict::cap:
        return "cap";
    }
    return "?";
  }

  namespace {
    // Coordinates of the free algebra reached by substituting pattern
    // variables into pat, in the order of algebras and assignments.
    std::vector<std::size_t> pattern_coordinates(free_algebra const& fa, pattern const& pat) {
      unsigned k = 0;
      for (unsigned v : pat) {
        k = std::max(k, v + 1);
      }
      std::vector<std::size_t> out;
      for (std::size_t i = 0; i < fa.gens.size(); ++i) {
        std::vector<element> s(k, 0);
        do {
          out.push_back(fa.coordinate(i, instantiate(pat, s)));
        } while (next_assignment(s, fa.gens[i].size()));
      }
      return out;
    }

    bool satisfies(free_algebra const& fa, std::size_t e, std::vector<node_constraint> const& cs) {
      auto row = fa.value(e);
      for (auto const& c : cs) {
        unsigned k = c.var + 1;
        for (unsigned v : c.pat) {
          k = std::max(k, v + 1);
        }
        for (std::size_t i = 0; i < fa.gens.size(); ++i) {
          std::vector<element> s(k, 0);
          do {
            if (row[fa.coordinate(i, instantiate(c.pat, s))] != s[c.var]) {
              return false;
            }
          } while (next_assignment(s, fa.gens[i].size()));
        }
      }
      return true;
    }
  }  // namespace

  chain_result chain_level(free_algebra const& fa, chain_scheme const& scheme, unsigned level_cap) {
    if (fa.generators != scheme.generators) {
      throw invalid_input("chain_level: scheme '" + scheme.name + "' needs a free algebra on "
                          + std::to_string(scheme.generators) + " generators");
    }
    chain_result r;
    r.scheme    = scheme.name;
    r.level_cap = level_cap;
    r.free_size = fa.size();
    if (fa.size() == 1) {
      r.verdict          = search_verdict::found;
      r.level            = 0;
      r.witness          = {fa.provenance[0]};
      r.witness_elements = {0};
      r.candidates       = 1;
      return r;
    }

    std::vector<std::size_t> cand;
    for (std::size_t e = 0; e < fa.size(); ++e) {
      if (satisfies(fa, e, scheme.every)) {
        cand.push_back(e);
      }
    }
    r.candidates = cand.size();
    std::vector<char> is_last(cand.size(), 0);
    std::vector<std::size_t> start;
    for (std::size_t l = 0; l < cand.size(); ++l) {
      is_last[l] = satisfies(fa, cand[l], scheme.last);
      if (satisfies(fa, cand[l], scheme.first)) {
        start.push_back(l);
      }
    }

    std::map<pattern, std::vector<std::string>> keys;
    for (pattern const* pat : {&scheme.even.from, &scheme.even.to, &scheme.odd.from, &scheme.odd.to}) {
      if (keys.count(*pat) != 0) {
        continue;
      }
      auto coords = pattern_coordinates(fa, *pat);
      auto& ks    = keys[*pat];
      for (std::size_t e : cand) {
        auto        row = fa.value(e);
        std::string k(coords.size(), '\0');
        for (std::size_t c = 0; c < coords.size(); ++c) {
          k[c] = static_cast<char>(row[coords[c]]);
        }
        ks.push_back(std::move(k));
      }
    }
    auto rule_at = [&](std::size_t edge) -> edge_rule const& {
      return (scheme.first_index + edge) % 2 == 0 ? scheme.even : scheme.odd;
    };

    std::vector<std::vector<std::size_t>> layers{start};
    std::set<std::pair<std::vector<std::size_t>, int>> seen;
    std::optional<std::size_t> edges;
    while (true) {
      auto const& cur = layers.back();
      std::size_t const e = layers.size() - 1;
      if (std::any_of(cur.begin(), cur.end(), [&](std::size_t l) { return is_last[l] != 0; })) {
        edges = e;
        break;
      }
      if (cur.empty() || scheme.first_index + e >= level_cap) {
        r.verdict = cur.empty() ? search_verdict::none : search_verdict::cap;
        break;
      }
      int parity = static_cast<int>((scheme.first_index + e) % 2);
      if (!seen.insert({cur, parity}).second) {
        r.verdict = search_verdict::none;
        break;
      }
      auto const&                     rule = rule_at(e);
      auto const&                     from = keys.at(rule.from);
      auto const&                     to   = keys.at(rule.to);
      std::unordered_set<std::string> reach;
      for (std::size_t l : cur) {
        reach.insert(from[l]);
      }
      std::vector<std::size_t> next;
      for (std::size_t l = 0; l < cand.size(); ++l) {
        if (reach.count(to[l]) != 0) {
          next.push_back(l);
        }
      }
      layers.push_back(std::move(next));
    }
    r.layers = layers.size();
    if (!edges) {
      return r;
    }

    std::size_t const E = *edges;
    std::vector<std::vector<std::size_t>> good(E + 1);
    for (std::size_t l : layers[E]) {
      if (is_last[l] != 0) {
        good[E].push_back(l);
      }
    }
    for (std::size_t k = E; k-- > 0;) {
      auto const&                     rule = rule_at(k);
      std::unordered_set<std::string> targets;
      for (std::size_t l : good[k + 1]) {
        targets.insert(keys.at(rule.to)[l]);
      }
      for (std::size_t l : layers[k]) {
        if (targets.count(keys.at(rule.from)[l]) != 0) {
          good[k].push_back(l);
        }
      }
    }
    std::vector<std::size_t> chain{good[0].front()};
    for (std::size_t k = 0; k < E; ++k) {
      auto const& rule = rule_at(k);
      auto const& want = keys.at(rule.from)[chain.back()];
      for (std::size_t l : good[k + 1]) {
        if (keys.at(rule.to)[l] == want) {
          chain.push_back(l);
          break;
        }
      }
    }
    r.verdict = search_verdict::found;
    r.level   = static_cast<unsigned>(scheme.first_index + E);
    for (std::size_t l : chain) {
      r.witness_elements.push_back(cand[l]);
      r.witness.push_back(fa.provenance[cand[l]]);
    }
    auto eqs = chain_equations(scheme, r.level);
    if (auto v = verify_term_identity(r.witness, fa.gens, eqs)) {
      throw verification_failed("chain_level: witness fails '" + eqs[v->equation].label + "'");
    }
    return r;
  }

  chain_result chain_level(std::vector<finite_algebra> const& gens,
                           chain_scheme const&                scheme,
                           unsigned                           level_cap,
                           limits const&                      lim) {
    return chain_level(build_free_algebra(gens, scheme.generators, lim), scheme, level_cap);
  }

  absorption_scheme near_unanimity_scheme(unsigned arity) {
    if (arity < 3) {
      throw invalid_input("near-unanimity scheme: arity must be at least 3");
    }
    absorption_scheme s;
    s.name  = "nu";
    s.arity = arity;
    for (unsigned p = 0; p < arity; ++p) {
      pattern pat(arity, 0);
      pat[p] = 1;
      s.rows.push_back({pat, 0});
    }
    return s;
  }

  absorption_scheme lone_dissent_scheme(unsigned arity) {
    absorption_scheme s = near_unanimity_scheme(arity);
    s.name              = "lone-dissent";
    for (auto& row : s.rows) {
      row.out = 1;
    }
    return s;
  }

  absorption_scheme half_nu_scheme(unsigned m) {
    if (m < 3) {
      throw invalid_input("half-nu scheme: m must be at least 3");
    }
    absorption_scheme s;
    s.name  = "half-nu";
    s.arity = m + 2;
    pattern first(m + 2, 0);
    first[0] = first[1] = 1;
    s.rows.push_back({first, 0});
    for (unsigned p = 0; p < m + 2; ++p) {
      pattern pat(m + 2, 0);
      pat[p] = 1;
      s.rows.push_back({pat, 0});
    }
    pattern lhs(m + 2, 1), rhs(m + 2, 1);
    lhs[0] = lhs[1] = lhs[2] = 0;
    rhs[0]                   = 0;
    s.links.push_back({lhs, rhs});
    return s;
  }

  absorption_scheme dissent_unanimity_scheme(unsigned m) {
    if (m < 3) {
      throw invalid_input("dissent-unanimity scheme: m must be at least 3");
    }
    absorption_scheme s;
    s.name         = "dissent-unanimity";
    s.arity        = 2 * m;
    s.pattern_vars = 3;
    for (unsigned i = 0; i < m; ++i) {
      pattern pat(2 * m, 0);
      std::fill(pat.begin() + m, pat.end(), 1);
      pat[i]     = 1;
      pat[m + i] = 2;
      s.rows.push_back({pat, 1});
    }
    return s;
  }

  std::vector<std::string> absorption_scheme_names() {
    return {"nu", "lone-dissent", "half-nu", "dissent-unanimity"};
  }

  absorption_scheme absorption_scheme_by_name(std::string const& name, unsigned parameter) {
    if (name == "nu") {
      return near_unanimity_scheme(parameter);
    }
    if (name == "lone-dissent") {
      return lone_dissent_scheme(parameter);
    }
    if (name == "half-nu") {
      return half_nu_scheme(parameter);
    }
    if (name == "dissent-unanimity") {
      return dissent_unanimity_scheme(parameter);
    }
    throw invalid_input("unknown absorption scheme '" + name + "'");
  }

  std::vector<term_equation> absorption_equations(absorption_scheme const& scheme) {
    static char const          names[] = {'x', 'y', 'z'};
    std::vector<term_equation> out;
    for (auto const& row : scheme.rows) {
      out.push_back({"u" + pattern_text(row.pat) + " = " + std::string(1, names[row.out]), 0,
                     row.pat, std::nullopt, {}, row.out});
    }
    for (auto const& link : scheme.links) {
      out.push_back({"u" + pattern_text(link.lhs) + " = u" + pattern_text(link.rhs), 0,
                     link.lhs, 0, link.rhs, 0});
    }
    return out;
  }

  namespace {
    struct search_space {
      std::vector<std::size_t>                  owner;
      std::vector<std::vector<element>>         points;
      std::vector<std::pair<std::size_t, char>> fixed;  // coordinate must equal value
      std::vector<std::pair<std::size_t, std::size_t>> equal;

      bool satisfied(std::string const& row) const {
        for (auto const& [c, v] : fixed) {
          if (row[c] != v) {
            return false;
          }
        }
        for (auto const& [a, b] : equal) {
          if (row[a] != row[b]) {
            return false;
          }
        }
        return true;
      }
    };

    // Coordinates and constraints for the given (algebra, assignment) groups.
    search_space make_space(std::vector<finite_algebra> const&                     gens,
                            absorption_scheme const&                               scheme,
                            std::vector<std::pair<std::size_t, std::vector<element>>> const& groups) {
      search_space                                              sp;
      std::map<std::pair<std::size_t, std::vector<element>>, std::size_t> index;
      auto coord = [&](std::size_t alg, std::vector<element> point) {
        auto [it, fresh] = index.try_emplace({alg, point}, sp.owner.size());
        if (fresh) {
          sp.owner.push_back(alg);
          sp.points.push_back(std::move(point));
        }
        return it->second;
      };
      for (auto const& [alg, s] : groups) {
        (void)gens;
        for (auto const& row : scheme.rows) {
          sp.fixed.emplace_back(coord(alg, instantiate(row.pat, s)), static_cast<char>(s[row.out]));
        }
        for (auto const& link : scheme.links) {
          auto a = coord(alg, instantiate(link.lhs, s));
          auto b = coord(alg, instantiate(link.rhs, s));
          sp.equal.emplace_back(a, b);
        }
      }
      return sp;
    }

    vector_closure_out run_space(std::vector<finite_algebra> const& gens,
                                 absorption_scheme const&           scheme,
                                 search_space const&                sp,
                                 limits const&                      lim,
                                 bool                               early_stop) {
      std::vector<std::string> initial(scheme.arity, std::string(sp.owner.size(), '\0'));
      for (unsigned v = 0; v < scheme.arity; ++v) {
        for (std::size_t c = 0; c < sp.owner.size(); ++c) {
          initial[v][c] = static_cast<char>(sp.points[c][v]);
        }
      }
      return vector_closure(gens, sp.owner, initial, lim, [&](std::string const& row) {
        return early_stop && sp.satisfied(row);
      });
    }

    std::vector<std::vector<element>> assignments(std::size_t size, unsigned k) {
      std::vector<std::vector<element>> out;
      std::vector<element>              s(k, 0);
      do {
        out.push_back(s);
      } while (next_assignment(s, size));
      return out;
    }

    void validate_scheme(absorption_scheme const& scheme) {
      auto check = [&](pattern const& pat) {
        if (pat.size() != scheme.arity) {
          throw invalid_input("absorption scheme '" + scheme.name
                              + "': pattern length differs from the arity");
        }
        for (unsigned v : pat) {
          if (v >= scheme.pattern_vars) {
            throw invalid_input("absorption scheme '" + scheme.name
                                + "': pattern variable out of range");
          }
        }
      };
      for (auto const& row : scheme.rows) {
        check(row.pat);
        if (row.out >= scheme.pattern_vars) {
          throw invalid_input("absorption scheme '" + scheme.name + "': output out of range");
        }
      }
      for (auto const& link : scheme.links) {
        check(link.lhs);
        check(link.rhs);
      }
    }
  }  // namespace

  absorption_result absorption_search(std::vector<finite_algebra> const& gens,
                                      absorption_scheme const&           scheme,
                                      limits const&                      lim) {
    require_similar(gens, "absorption_search");
    validate_scheme(scheme);
    absorption_result r;
    r.scheme = scheme.name;
    r.arity  = scheme.arity;

    using group = std::pair<std::size_t, std::vector<element>>;
    auto refuted = [&](std::vector<group> const& groups) -> std::optional<std::size_t> {
      auto sp = make_space(gens, scheme, groups);
      try {
        auto out = run_space(gens, scheme, sp, lim, true);
        r.explored += out.rows.size();
        if (out.hit) {
          return std::nullopt;
        }
        return out.rows.size();
      } catch (cap_exceeded const& e) {
        r.explored += e.explored();
        return std::nullopt;
      }
    };

    std::vector<group> all;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      std::vector<group> mine;
      for (auto& s : assignments(gens[i].size(), scheme.pattern_vars)) {
        if (auto size = refuted({{i, s}})) {
          r.refutation = absorption_refutation{i, s, *size};
          r.verdict    = search_verdict::none;
          return r;
        }
        mine.emplace_back(i, s);
      }
      if (auto size = refuted(mine)) {
        r.refutation = absorption_refutation{i, std::nullopt, *size};
        r.verdict    = search_verdict::none;
        return r;
      }
      all.insert(all.end(), mine.begin(), mine.end());
    }

    auto sp       = make_space(gens, scheme, all);
    r.coordinates = sp.owner.size();
    vector_closure_out out;
    try {
      out = run_space(gens, scheme, sp, lim, true);
    } catch (cap_exceeded const& e) {
      throw cap_exceeded("absorption_search '" + scheme.name + "' arity "
                             + std::to_string(scheme.arity) + ": " + e.what(),
                         r.explored + e.explored());
    }
    r.explored += out.rows.size();
    if (!out.hit) {
      r.verdict = search_verdict::none;
      return r;
    }
    r.verdict = search_verdict::found;
    r.witness = out.terms[*out.hit];
    auto eqs  = absorption_equations(scheme);
    std::vector<term> ws{*r.witness};
    if (auto v = verify_term_identity(ws, gens, eqs)) {
      throw verification_failed("absorption_search: witness fails '" + eqs[v->equation].label
                                + "'");
    }
    return r;
  }

  bool recheck_refutation(std::vector<finite_algebra> const& gens,
                          absorption_scheme const&           scheme,
                          absorption_refutation const&       ref,
                          limits const&                      lim) {
    require_similar(gens, "recheck_refutation");
    validate_scheme(scheme);
    if (ref.algebra >= gens.size()) {
      return false;
    }
    std::vector<std::pair<std::size_t, std::vector<element>>> groups;
    if (ref.assignment) {
      if (ref.assignment->size() != scheme.pattern_vars) {
        return false;
      }
      groups.emplace_back(ref.algebra, *ref.assignment);
    } else {
      for (auto& s : assignments(gens[ref.algebra].size(), scheme.pattern_vars)) {
        groups.emplace_back(ref.algebra, s);
      }
    }
    auto sp  = make_space(gens, scheme, groups);
    auto out = run_space(gens, scheme, sp, lim, false);
    return std::none_of(out.rows.begin(), out.rows.end(),
                        [&](std::string const& row) { return sp.satisfied(row); });
  }

  term ld_compose(term const& d, unsigned d_arity, term const& e, unsigned e_arity) {
    if (d_arity < 3 || e_arity < 3) {
      throw invalid_input("ld_compose: lone-dissent terms have arity at least 3");
    }
    std::vector<term> rep{e};
    for (unsigned i = 1; i < d_arity; ++i) {
      rep.push_back(term::variable(e_arity - 1 + i));
    }
    return d.substitute(rep);
  }

  term ld_iterate(term const& d, unsigned d_arity, unsigned k) {
    if (k < 1) {
      throw invalid_input("ld_iterate: k must be at least 1");
    }
    term     t     = d;
    unsigned arity = d_arity;
    for (unsigned i = 1; i < k; ++i) {
      t = ld_compose(d, d_arity, t, arity);
      arity += d_arity - 1;
    }
    return t;
  }

  term ld_maltsev(term const& d, unsigned d_arity) {
    if (d_arity < 3) {
      throw invalid_input("ld_maltsev: arity must be at least 3");
    }
    std::vector<term> rep{term::variable(0)};
    for (unsigned i = 1; i + 1 < d_arity; ++i) {
      rep.push_back(term::variable(1));
    }
    rep.push_back(term::variable(2));
    return d.substitute(rep);
  }

  term ld_near_unanimity(term const& d, unsigned d_arity, term const& e, unsigned e_arity) {
    if (d_arity < 3 || e_arity != d_arity + 1) {
      throw invalid_input("ld_near_unanimity: need arities m + 1 and m + 2 with m >= 2");
    }
    auto              vars = variables(e_arity);
    std::vector<term> inner;
    for (unsigned omit = e_arity; omit-- > 0;) {
      std::vector<term> args;
      for (unsigned v = 0; v < e_arity; ++v) {
        if (v != omit) {
          args.push_back(vars[v]);
        }
      }
      inner.push_back(d.substitute(args));
    }
    return e.substitute(inner);
  }

  std::vector<term_equation> schema_equations(std::string const& kind, unsigned arity) {
    if (kind == "lone-dissent") {
      return lone_dissent_equations(arity);
    }
    if (kind == "nu") {
      return near_unanimity_equations(arity);
    }
    if (kind == "maltsev") {
      if (arity != 3) {
        throw invalid_input("the Maltsev schema is ternary");
      }
      return maltsev_equations();
    }
    if (kind == "idempotent") {
      return idempotence_equations(arity);
    }
    if (kind == "half-nu") {
      if (arity < 5) {
        throw invalid_input("the half-nu schema needs arity m + 2 >= 5");
      }
      return half_nu_equations(arity - 2);
    }
    if (kind == "dissent-unanimity") {
      if (arity % 2 != 0 || arity < 6) {
        throw invalid_input("the dissent-unanimity schema needs an even arity 2m >= 6");
      }
      return dissent_unanimity_equations(arity / 2);
    }
    throw invalid_input("unknown schema '" + kind + "'");
  }

  void require_lone_dissent(std::vector<finite_algebra> const& gens,
                            term const&                        d,
                            unsigned                           arity) {
    auto              eqs = lone_dissent_equations(arity);
    std::vector<term> ts{d};
    if (auto v = verify_term_identity(ts, gens, eqs)) {
      throw hypothesis_failed("lone-dissent", "'" + eqs[v->equation].label + "' fails on '"
                                                  + gens[v->algebra].label() + "'");
    }
  }

  arithmetical_report arithmetical_pipeline(std::vector<finite_algebra> const& gens,
                                            term const&                        d,
                                            unsigned                           d_arity,
                                            term const&                        e,
                                            unsigned                           e_arity,
                                            limits const&                      lim) {
    if (d_arity < 3 || e_arity < 3) {
      throw invalid_input("arithmetical_pipeline: arities must be at least 3");
    }
    arithmetical_report rep;
    rep.m = d_arity - 1;
    rep.n = e_arity - 1;
    if (std::gcd(rep.m, rep.n) != 1) {
      throw invalid_input("arithmetical_pipeline: m = " + std::to_string(rep.m) + " and n = "
                          + std::to_string(rep.n) + " are not coprime");
    }
    require_lone_dissent(gens, d, d_arity);
    require_lone_dissent(gens, e, e_arity);

    for (unsigned k = 1; k <= rep.n && rep.k == 0; ++k) {
      for (unsigned h = 1; h <= rep.m; ++h) {
        long diff = static_cast<long>(k * rep.m) - static_cast<long>(h * rep.n);
        if (diff == 1 || diff == -1) {
          rep.k = k;
          rep.h = h;
          break;
        }
      }
    }
    if (rep.k == 0) {
      throw verification_failed("arithmetical_pipeline: no k, h with |km - hn| = 1");
    }
    auto check = [&](std::string claim, term t, unsigned arity, std::string kind) {
      auto         schema = schema_equations(kind, arity);
      toolkit_step step{std::move(claim), std::move(t), arity, std::move(kind), std::move(schema),
                        std::nullopt};
      std::vector<term> ts{step.result};
      step.violation = verify_term_identity(ts, gens, step.schema);
      rep.steps.push_back(step);
      return step;
    };
    unsigned const ad = rep.k * rep.m + 1;
    unsigned const ae = rep.h * rep.n + 1;
    auto sd = check("iterated d is lone-dissent of arity " + std::to_string(ad),
                    ld_iterate(d, d_arity, rep.k), ad, "lone-dissent");
    auto se = check("iterated e is lone-dissent of arity " + std::to_string(ae),
                    ld_iterate(e, e_arity, rep.h), ae, "lone-dissent");
    auto const& lo = ad < ae ? sd : se;
    auto const& hi = ad < ae ? se : sd;
    auto nu = check("composite is a near-unanimity term of arity " + std::to_string(hi.arity),
                    ld_near_unanimity(lo.result, lo.arity, hi.result, hi.arity), hi.arity, "nu");
    auto mal = check("t(x,y,z) = d(x,y,...,y,z) is a Maltsev term", ld_maltsev(d, d_arity), 3,
                     "maltsev");
    if (mal.passed()) {
      rep.maltsev = mal.result;
    }
    auto found = absorption_search(gens, near_unanimity_scheme(3), lim);
    if (found.verdict == search_verdict::found) {
      auto maj = check("majority term found by absorption search", *found.witness, 3, "nu");
      if (maj.passed()) {
        rep.majority = maj.result;
      }
    }
    rep.passed = nu.passed() && rep.maltsev.has_value() && rep.majority.has_value()
                 && std::all_of(rep.steps.begin(), rep.steps.end(),
                                [](toolkit_step const& s) { return s.passed(); });
    return rep;
  }

}  // namespace algwit
