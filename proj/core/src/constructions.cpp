#include "algwit/constructions.hpp"

#include <algorithm>
#include <map>

#include "algwit/builders.hpp"
#include "algwit/error.hpp"
#include "algwit/predicates.hpp"

namespace algwit {

  using masks_t = std::vector<std::uint64_t>;

  namespace {
    masks_t full_masks(finite_algebra const& alg) {
      return box_set::for_algebra(alg).full_box().masks;
    }

    masks_t point_masks(finite_algebra const& alg, element e) {
      return box_set::for_algebra(alg).point_box(e).masks;
    }

    masks_t cat(std::initializer_list<masks_t> parts) {
      masks_t out;
      for (auto const& p : parts) {
        out.insert(out.end(), p.begin(), p.end());
      }
      return out;
    }

    bool within(masks_t const& inner, masks_t const& outer) {
      for (std::size_t i = 0; i < inner.size(); ++i) {
        if ((inner[i] & ~outer[i]) != 0) {
          return false;
        }
      }
      return true;
    }

    // Partition of {0..n-1} grouping indices with equal keys.
    template <typename Key>
    partition partition_by_key(std::size_t n, Key&& key) {
      std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
      std::vector<std::uint32_t>                          out(n);
      for (std::size_t i = 0; i < n; ++i) {
        out[i] = ids.try_emplace(key(i), static_cast<std::uint32_t>(ids.size())).first->second;
      }
      return partition(std::move(out));
    }

    std::size_t position_in(std::vector<element> const& sorted, element e) {
      auto it = std::lower_bound(sorted.begin(), sorted.end(), e);
      if (it == sorted.end() || *it != e) {
        return static_cast<std::size_t>(-1);
      }
      return static_cast<std::size_t>(it - sorted.begin());
    }
  }  // namespace

  void sharpness_params::validate() const {
    if (m < 3) {
      throw invalid_input("m must be at least 3, got " + std::to_string(m));
    }
    if (q < 2) {
      throw invalid_input("q must be at least 2, got " + std::to_string(q));
    }
  }

  std::pair<partition, partition> beta_gamma_star(unsigned q) {
    if (q < 1) {
      throw invalid_input("beta_gamma_star: q must be at least 1");
    }
    std::vector<std::uint32_t> beta(q + 1), gamma(q + 1);
    for (unsigned x = 0; x <= q; ++x) {
      beta[x]  = (q - x) / 2;
      gamma[x] = (q - x + 1) / 2;
    }
    return {partition(std::move(beta)), partition(std::move(gamma))};
  }

  std::string to_string(type_tag t) {
    switch (t) {
      case type_tag::I:
        return "I";
      case type_tag::II:
        return "II";
      case type_tag::III:
        return "III";
      case type_tag::IV:
        return "IV";
    }
    return "?";
  }

  filtered_output build_type_filtered(filtered_input const& in, limits const& lim) {
    finite_algebra const* algs[] = {&in.a1, &in.a2, &in.a3, &in.a4};
    for (auto const* alg : algs) {
      if (alg->op_count() != 1) {
        throw hypothesis_failed("signature", "each algebra must have exactly one operation");
      }
      if (!alg->similar_to(in.a1)) {
        throw hypothesis_failed("signature", "the four algebras are not similar");
      }
    }
    unsigned const m = in.a1.arity(0);
    if (m < 3) {
      throw hypothesis_failed("arity", "the operation must be at least ternary");
    }
    if (in.h < 1 || in.h > in.k || in.h + in.k > m) {
      throw hypothesis_failed("h-k-range", "need 1 <= h <= k and h + k <= m, got h = "
                                               + std::to_string(in.h)
                                               + ", k = " + std::to_string(in.k));
    }
    if (in.zero1 >= in.a1.size() || in.zero2 >= in.a2.size() || in.zero4 >= in.a4.size()
        || in.a >= in.a3.size() || in.d >= in.a3.size()) {
      throw invalid_input("build_type_filtered: designated element out of range");
    }
    if (!is_k_absorbing(in.a1, 0, in.zero1, in.h)) {
      throw hypothesis_failed("absorbing-1", "zero of the first factor is not h-absorbing");
    }
    if (!is_k_absorbing(in.a2, 0, in.zero2, in.h)) {
      throw hypothesis_failed("absorbing-2", "zero of the second factor is not h-absorbing");
    }
    if (!is_k_majority(in.a3, 0, in.k)) {
      throw hypothesis_failed("majority-3", "operation of the third factor is not k-majority");
    }
    if (!is_k_absorbing(in.a4, 0, in.zero4, 2)) {
      throw hypothesis_failed("absorbing-4", "zero of the fourth factor is not 2-absorbing");
    }
    finite_algebra f_ambient = finite_algebra::product({in.a3, in.a4}, "A3 x A4", lim.table_cap);
    auto           f_leaves  = box_set::for_algebra(f_ambient).leaf_sizes();
    if (in.f.leaf_sizes() != f_leaves) {
      throw invalid_input("build_type_filtered: F is not a box set over the leaves of A3 x A4");
    }
    if (!is_subuniverse_boxes(f_ambient, in.f, lim).closed) {
      throw hypothesis_failed("subuniverse-F", "F is not closed in A3 x A4");
    }

    filtered_output out;
    out.product = finite_algebra::product(
        {in.a1, in.a2, in.a3, in.a4},
        in.a1.label() + " x " + in.a2.label() + " x " + in.a3.label() + " x " + in.a4.label(),
        lim.table_cap);
    out.universe = box_set::for_algebra(out.product);

    std::size_t const l3     = box_set::for_algebra(in.a3).leaf_sizes().size();
    masks_t const     full1  = full_masks(in.a1);
    masks_t const     full2  = full_masks(in.a2);
    masks_t const     zero1  = point_masks(in.a1, in.zero1);
    masks_t const     zero2  = point_masks(in.a2, in.zero2);
    masks_t const     pa     = point_masks(in.a3, in.a);
    masks_t const     pd     = point_masks(in.a3, in.d);
    masks_t const     zero4  = point_masks(in.a4, in.zero4);
    for (auto const& fb : in.f.boxes()) {
      masks_t x3(fb.masks.begin(), fb.masks.begin() + static_cast<std::ptrdiff_t>(l3));
      masks_t x4(fb.masks.begin() + static_cast<std::ptrdiff_t>(l3), fb.masks.end());
      if (within(pa, x3)) {
        out.universe.add({cat({full1, zero2, pa, x4})});
      }
      out.universe.add({cat({zero1, zero2, x3, x4})});
      if (within(pd, x3)) {
        out.universe.add({cat({zero1, full2, pd, x4})});
      }
      if (within(zero4, x4)) {
        out.universe.add({cat({full1, full2, x3, zero4})});
      }
    }
    auto check = is_subuniverse_boxes(out.product, out.universe, lim);
    if (!check.closed) {
      throw verification_failed("build_type_filtered: the constructed set is not closed");
    }
    return out;
  }

  std::set<type_tag> type_filtered_tags(filtered_input const& in, element e) {
    factor_indexing idx({in.a1.size(), in.a2.size(), in.a3.size(), in.a4.size()});
    auto            t = idx.to_tuple(e);
    std::set<type_tag> tags;
    if (t[1] == in.zero2 && t[2] == in.a) {
      tags.insert(type_tag::I);
    }
    if (t[0] == in.zero1 && t[1] == in.zero2) {
      tags.insert(type_tag::II);
    }
    if (t[0] == in.zero1 && t[2] == in.d) {
      tags.insert(type_tag::III);
    }
    if (t[3] == in.zero4) {
      tags.insert(type_tag::IV);
    }
    return tags;
  }

  punctured_power build_punctured_power(unsigned m, limits const& lim) {
    if (m < 4) {
      throw invalid_input("build_punctured_power: m must be at least 4 (for m = 3 the set "
                          "without the top is not closed)");
    }
    std::vector<finite_algebra> factors(m - 1, make_ujm_reduct(2, 2, m));
    punctured_power             out;
    out.algebra  = direct_product(std::move(factors), lim);
    out.universe = box_set::for_algebra(out.algebra);
    for (unsigned i = 0; i + 1 < m; ++i) {
      box b = out.universe.full_box();
      b.masks[i] = 1;
      out.universe.add(std::move(b));
    }
    if (!is_subuniverse_boxes(out.algebra, out.universe, lim).closed) {
      throw verification_failed("build_punctured_power: the set without the top is not closed");
    }
    return out;
  }

  std::optional<std::size_t> sharpness_witness::position_of(element product_element) const {
    auto p = position_in(universe, product_element);
    if (p == static_cast<std::size_t>(-1)) {
      return std::nullopt;
    }
    return p;
  }

  std::vector<element> sharpness_witness::tuple_of(std::size_t position) const {
    return good.indexing().to_tuple(universe.at(position));
  }

  std::optional<std::size_t> sharpness_witness::position_of_tuple(
      std::vector<element> const& tuple) const {
    return position_of(static_cast<element>(good.indexing().to_index(tuple)));
  }

  sharpness_witness build_sharpness_witness(sharpness_params const& params, limits const& lim) {
    params.validate();
    unsigned const m     = params.m;
    unsigned const q     = params.q;
    unsigned const l     = params.ell();
    unsigned const pairs = params.m_odd() ? l - 2 : l - 1;

    sharpness_witness w;
    w.params = params;
    std::vector<finite_algebra> leaves;
    for (unsigned p = 0; p < pairs; ++p) {
      auto alg = make_ujm_reduct(q + 1, p + 2, m);
      leaves.push_back(alg);
      leaves.push_back(alg);
      w.coordinates.push_back("pair " + std::to_string(p + 1) + " left: " + alg.label());
      w.coordinates.push_back("pair " + std::to_string(p + 1) + " right: " + alg.label());
    }
    if (params.m_odd()) {
      leaves.push_back(make_ujm_reduct(q + 1, l, m));
      w.coordinates.push_back("half pair: " + leaves.back().label());
    }
    leaves.push_back(make_ujm_reduct(2, 2, m));
    w.coordinates.push_back("last: " + leaves.back().label());
    std::size_t const n_leaves = leaves.size();
    std::size_t const last     = n_leaves - 1;
    std::size_t const half     = 2 * pairs;  // meaningful only for m odd

    w.product = direct_product(leaves, lim).with_label("P(" + std::to_string(m) + ","
                                                       + std::to_string(q) + ")");
    w.good    = box_set::for_algebra(w.product);

    std::uint64_t const all_chain = (std::uint64_t{1} << (q + 1)) - 1;
    std::uint64_t const bit0      = 1;
    std::uint64_t const bitq      = std::uint64_t{1} << q;

    // (a) last coordinate 0
    {
      box b       = w.good.full_box();
      b.masks[last] = bit0;
      w.good.add(std::move(b));
    }
    // all pairs null; the half pair is unconstrained
    {
      box b(w.good.full_box());
      for (std::size_t i = 0; i < half; ++i) {
        b.masks[i] = bit0;
      }
      b.masks[last] = 2;
      w.good.add(std::move(b));
    }
    for (unsigned p = 0; p < pairs; ++p) {
      for (int branch = 0; branch < 2; ++branch) {
        box b(w.good.full_box());
        for (unsigned r = 0; r < p; ++r) {
          b.masks[2 * r]     = bit0;
          b.masks[2 * r + 1] = bit0;
        }
        // first non-null pair: (-,0) or (0,-)
        b.masks[2 * p]     = branch == 0 ? all_chain : bit0;
        b.masks[2 * p + 1] = branch == 0 ? bit0 : all_chain;
        for (unsigned r = p + 1; r < pairs; ++r) {
          b.masks[2 * r]     = branch == 0 ? bitq : bit0;
          b.masks[2 * r + 1] = branch == 0 ? bit0 : bitq;
        }
        if (params.m_odd()) {
          b.masks[half] = branch == 0 ? bitq : bit0;
        }
        b.masks[last] = 2;
        w.good.add(std::move(b));
      }
    }
    auto closed = is_subuniverse_boxes(w.product, w.good, lim);
    if (!closed.closed) {
      throw verification_failed("build_sharpness_witness: good elements are not closed");
    }
    w.universe = w.good.elements(lim.closure_cap);

    auto [bs, gs] = beta_gamma_star(q);
    auto total_q  = partition::total(q + 1);
    for (unsigned p = 0; p < pairs; ++p) {
      w.alpha_star.insert(w.alpha_star.end(), {total_q, total_q});
      if (params.q_odd()) {
        w.beta_star.insert(w.beta_star.end(), {bs, bs});
        w.gamma_star.insert(w.gamma_star.end(), {gs, gs});
      } else {
        w.beta_star.insert(w.beta_star.end(), {bs, gs});
        w.gamma_star.insert(w.gamma_star.end(), {gs, bs});
      }
    }
    if (params.m_odd()) {
      w.alpha_star.push_back(total_q);
      w.beta_star.push_back(bs);
      w.gamma_star.push_back(gs);
    }
    w.alpha_star.push_back(partition::identity(2));
    w.beta_star.push_back(partition::total(2));
    w.gamma_star.push_back(partition::total(2));
    w.alpha = induced_product_congruence(w.good.indexing(), w.alpha_star, w.universe);
    w.beta  = induced_product_congruence(w.good.indexing(), w.beta_star, w.universe);
    w.gamma = induced_product_congruence(w.good.indexing(), w.gamma_star, w.universe);

    std::vector<element> ta(n_leaves), td(n_leaves), tc(n_leaves);
    for (unsigned p = 0; p < pairs; ++p) {
      ta[2 * p] = q, ta[2 * p + 1] = 0;
      td[2 * p] = 0, td[2 * p + 1] = q;
      tc[2 * p] = 1, tc[2 * p + 1] = 1;
    }
    if (params.m_odd()) {
      ta[half] = q, td[half] = 0, tc[half] = 1;
    }
    ta[last] = 1, td[last] = 1, tc[last] = 0;
    auto pa = w.position_of_tuple(ta);
    auto pd = w.position_of_tuple(td);
    if (!pa || !pd) {
      throw verification_failed("build_sharpness_witness: a or d is not good");
    }
    w.a = *pa;
    w.d = *pd;
    if (q == 2) {
      w.c = w.position_of_tuple(tc);
      if (!w.c) {
        throw verification_failed("build_sharpness_witness: c is not good");
      }
    }
    (void)n_leaves;
    return w;
  }

  std::vector<std::size_t> canonical_witness_chain(sharpness_witness const& w) {
    if (w.params.q != 2) {
      throw invalid_input("canonical_witness_chain: only defined for q = 2");
    }
    unsigned const       l     = w.params.ell();
    unsigned const       pairs = w.params.m_odd() ? l - 2 : l - 1;
    std::vector<element> t     = w.tuple_of(w.a);
    std::vector<std::vector<element>> tuples{t};
    for (unsigned p = 0; p < pairs; ++p) {
      for (int s = 0; s < 2; ++s) {
        --t[2 * p];
        tuples.push_back(t);
      }
    }
    if (w.params.m_odd()) {
      for (int s = 0; s < 2; ++s) {
        --t[2 * pairs];
        tuples.push_back(t);
      }
    }
    for (unsigned p = pairs; p-- > 0;) {
      for (int s = 0; s < 2; ++s) {
        ++t[2 * p + 1];
        tuples.push_back(t);
      }
    }
    std::vector<std::size_t> chain;
    partition const          ab = partition_meet(w.alpha, w.beta);
    partition const          ag = partition_meet(w.alpha, w.gamma);
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      auto pos = w.position_of_tuple(tuples[i]);
      if (!pos) {
        throw verification_failed("canonical_witness_chain: chain element is not good");
      }
      if (i > 0) {
        partition const& rel = (i % 2 == 1) ? ab : ag;
        if (!rel.related(static_cast<element>(chain.back()), static_cast<element>(*pos))) {
          throw verification_failed("canonical_witness_chain: step " + std::to_string(i)
                                    + " is not related as claimed");
        }
      }
      chain.push_back(*pos);
    }
    if (chain.back() != w.d) {
      throw verification_failed("canonical_witness_chain: chain does not end at d");
    }
    return chain;
  }

  sharpness_report verify_sharpness(sharpness_witness const& w) {
    sharpness_report r;
    r.params = w.params;
    r.closed = is_subuniverse_boxes(w.product, w.good).closed;
    auto const a = static_cast<element>(w.a);
    auto const d = static_cast<element>(w.d);
    if (w.c) {
      auto const c = static_cast<element>(*w.c);
      if (w.alpha.related(a, d) && w.beta.related(a, c) && w.gamma.related(c, d)) {
        r.c_witness = w.c;
      }
    }
    std::vector<identity_family> fams{identity_family::q_power};
    if (w.params.q == 2) {
      fams.push_back(identity_family::power);
    }
    if (w.params.q_odd()) {
      fams.push_back(identity_family::q_power_shifted);
    }
    r.all_fail = true;
    for (auto fam : fams) {
      identity_params ip;
      ip.family = fam;
      ip.m      = w.params.m;
      ip.q      = w.params.q;
      auto inst = check_identity(ip, w.alpha, w.beta, w.gamma, std::make_pair(a, d));
      r.all_fail = r.all_fail && !inst.holds;
      r.instances.push_back(std::move(inst));
    }
    return r;
  }

  std::vector<finite_algebra> nm_generators(unsigned m) {
    if (m < 3) {
      throw invalid_input("nm_generators: m must be at least 3");
    }
    sharpness_params p{m, 2};
    std::vector<finite_algebra> out;
    for (unsigned j = 2; j <= p.ell(); ++j) {
      out.push_back(make_ujm_reduct(2, j, m));
    }
    return out;
  }

  finite_algebra im_generator(unsigned m, im_variant variant) {
    if (m < 4) {
      throw invalid_input("im_generator: m must be at least 4");
    }
    operation_table first;
    if (variant == im_variant::i) {
      first = {"i", 2, {0, 0, 1, 0}};
    } else {
      first = {"f", 3, {}};
      for (element x = 0; x < 2; ++x) {
        for (element y = 0; y < 2; ++y) {
          for (element z = 0; z < 2; ++z) {
            first.entries.push_back(x & ((1 - y) | z));
          }
        }
      }
    }
    auto u = make_ujm_reduct(2, 2, m).table(0);
    return finite_algebra((variant == im_variant::i ? "I_" : "I-_") + std::to_string(m),
                          2,
                          {std::move(first), std::move(u)});
  }

  namespace {
    struct descent_ctx {
      sharpness_params params;
      limits           lim;
      finite_algebra   n2m;
      partition        bs, gs;
    };

    element ambient_element(element x, element last) {
      return x * 2 + last;
    }

    void fail(induction_state const& s, std::string const& what) {
      throw verification_failed(s.step + " step, j = " + std::to_string(s.j) + ": " + what);
    }

    void check_state(descent_ctx const& ctx, induction_state& s) {
      unsigned const q = ctx.params.q;
      auto pos = [&](element x, element last) {
        return position_in(s.universe, ambient_element(x, last));
      };
      constexpr auto none = static_cast<std::size_t>(-1);

      identity_params ip;
      ip.family = identity_family::q_power_j;
      ip.m      = ctx.params.m;
      ip.q      = q;
      ip.j      = s.j;
      auto const p0 = pos(s.a, 1);
      auto const pq = pos(s.d, 1);
      if (p0 == none || pq == none) {
        fail(s, "(*) (a,1) or (d,1) is not in F");
      }
      s.failure = check_identity(ip, s.alpha, s.beta, s.gamma,
                                 std::make_pair(static_cast<element>(p0),
                                                static_cast<element>(pq)));
      if (s.failure.holds) {
        fail(s, "(*) the pair does not witness the failure of q-power-j");
      }
      s.checks.push_back("(*) ((a,1),(d,1)) in the left side and not in the right side");

      auto sides = build_identity(ip, s.alpha, s.beta, s.gamma);
      std::vector<std::size_t> chain{p0};
      for (element c : s.chain) {
        auto p = pos(c, 0);
        if (p == none) {
          fail(s, "(**) a chain element (c,0) is not in F");
        }
        chain.push_back(p);
      }
      chain.push_back(pq);
      if (chain.size() != sides.lhs_steps.size() + 1) {
        fail(s, "(**) chain has the wrong length");
      }
      for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        if (!sides.lhs_steps[i].related(static_cast<element>(chain[i]),
                                        static_cast<element>(chain[i + 1]))) {
          fail(s, "(**) chain step " + std::to_string(i + 1) + " is not related");
        }
      }
      s.checks.push_back("(**) chain through (c_i,0) follows the left side");

      auto by_last = partition_by_key(s.universe.size(), [&](std::size_t i) {
        return std::vector<std::uint32_t>{s.universe[i] % 2};
      });
      if (!(by_last == s.alpha)) {
        fail(s, "(***) alpha is not induced by 1 x 0");
      }
      s.checks.push_back("(***) alpha is induced by 1 x 0");
    }

    induction_state descend(descent_ctx const&     ctx,
                            induction_state const& prev,
                            finite_algebra const&  a1,
                            unsigned               h,
                            unsigned               k,
                            unsigned               new_j,
                            std::string            step) {
      unsigned const q = ctx.params.q;
      filtered_input in{a1, a1, prev.a3, ctx.n2m, 0, 0, 0, h, k, prev.a, prev.d, prev.f};
      auto           out = build_type_filtered(in, ctx.lim);

      induction_state s;
      s.j       = new_j;
      s.step    = std::move(step);
      s.a3      = finite_algebra::product({a1, a1, prev.a3}, "A3^" + std::to_string(new_j),
                                          ctx.lim.table_cap);
      s.ambient = finite_algebra::product({s.a3, ctx.n2m}, s.a3.label() + " x N2m",
                                          ctx.lim.table_cap);
      s.f        = out.universe;
      s.universe = s.f.elements(ctx.lim.closure_cap);

      std::size_t const s1 = a1.size();
      std::size_t const sf = prev.ambient.size();
      std::size_t const s3 = prev.a3.size();
      auto components = [&](std::size_t i) {
        element e  = s.universe[i];
        element x1 = static_cast<element>(e / (s1 * sf));
        element x2 = static_cast<element>((e / sf) % s1);
        auto    pf = position_in(prev.universe, static_cast<element>(e % sf));
        if (pf == static_cast<std::size_t>(-1)) {
          throw verification_failed("descent: element outside F");
        }
        return std::make_tuple(x1, x2, static_cast<element>(pf));
      };
      partition const& b2 = ctx.params.q_odd() ? ctx.bs : ctx.gs;
      partition const& g2 = ctx.params.q_odd() ? ctx.gs : ctx.bs;
      s.beta = partition_by_key(s.universe.size(), [&](std::size_t i) {
        auto [x1, x2, pf] = components(i);
        return std::vector<std::uint32_t>{ctx.bs.block_of(x1), b2.block_of(x2),
                                          prev.beta.block_of(pf)};
      });
      s.gamma = partition_by_key(s.universe.size(), [&](std::size_t i) {
        auto [x1, x2, pf] = components(i);
        return std::vector<std::uint32_t>{ctx.gs.block_of(x1), g2.block_of(x2),
                                          prev.gamma.block_of(pf)};
      });
      s.alpha = partition_by_key(s.universe.size(), [&](std::size_t i) {
        auto [x1, x2, pf] = components(i);
        (void)x1;
        (void)x2;
        return std::vector<std::uint32_t>{prev.alpha.block_of(pf)};
      });
      auto compose3 = [&](element x1, element x2, element x3) {
        return static_cast<element>((x1 * s1 + x2) * s3 + x3);
      };
      s.a = compose3(q, 0, prev.a);
      s.d = compose3(0, q, prev.d);
      for (unsigned i = 1; i < q; ++i) {
        s.chain.push_back(compose3(q - i, i, prev.chain[i - 1]));
      }
      return s;
    }
  }  // namespace

  std::vector<induction_state> run_descent_induction(sharpness_params const& params,
                                                     limits const&           lim) {
    params.validate();
    unsigned const m = params.m;
    unsigned const q = params.q;
    unsigned const l = params.ell();
    auto [bs, gs]    = beta_gamma_star(q);
    descent_ctx ctx{params, lim, make_ujm_reduct(2, 2, m), bs, gs};

    std::vector<induction_state> states;
    induction_state              top;
    if (params.m_odd()) {
      top.j       = l;
      top.step    = "first";
      top.a3      = make_ujm_reduct(q + 1, l, m);
      top.ambient = finite_algebra::product({top.a3, ctx.n2m}, top.a3.label() + " x N2m",
                                            lim.table_cap);
      top.f       = box_set::for_algebra(top.ambient);
      top.f.add(top.f.full_box());
      top.universe = top.f.elements(lim.closure_cap);
      std::size_t n = top.universe.size();
      top.beta  = partition_by_key(n, [&](std::size_t i) {
        return std::vector<std::uint32_t>{bs.block_of(top.universe[i] / 2)};
      });
      top.gamma = partition_by_key(n, [&](std::size_t i) {
        return std::vector<std::uint32_t>{gs.block_of(top.universe[i] / 2)};
      });
      top.alpha = partition_by_key(n, [&](std::size_t i) {
        return std::vector<std::uint32_t>{top.universe[i] % 2};
      });
      top.a = q;
      top.d = 0;
      for (unsigned i = 1; i < q; ++i) {
        top.chain.push_back(q - i);
      }
      check_state(ctx, top);
      states.push_back(top);
    } else {
      // a one-element third factor with F the whole of A3 x A4
      induction_state seed;
      seed.a3      = make_trivial_algebra({m});
      seed.ambient = finite_algebra::product({seed.a3, ctx.n2m}, "trivial x N2m", lim.table_cap);
      seed.f       = box_set::for_algebra(seed.ambient);
      seed.f.add(seed.f.full_box());
      seed.universe = seed.f.elements(lim.closure_cap);
      seed.alpha    = partition::identity(2);
      seed.beta     = partition::total(2);
      seed.gamma    = partition::total(2);
      seed.chain.assign(q - 1, 0);
      auto s = descend(ctx, seed, make_ujm_reduct(q + 1, l, m), l, l, l, "second");
      check_state(ctx, s);
      states.push_back(std::move(s));
    }
    for (unsigned j = l; j > 2; --j) {
      auto s = descend(ctx, states.back(), make_ujm_reduct(q + 1, j - 1, m), j - 1,
                       m - j + 1, j - 1, "third");
      check_state(ctx, s);
      states.push_back(std::move(s));
    }
    return states;
  }

}  // namespace algwit
