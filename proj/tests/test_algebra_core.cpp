#include <algorithm>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include <algwit/boxset.hpp>
#include <algwit/builders.hpp>
#include <algwit/closure.hpp>
#include <algwit/error.hpp>
#include <algwit/predicates.hpp>
#include <algwit/term.hpp>

#include "support/oracles.hpp"
#include "support/properties.hpp"

using namespace algwit;

namespace {
  std::mt19937_64 rng_for(std::uint64_t salt) {
    return std::mt19937_64(props::seed_from(0, nullptr) ^ salt);
  }
}  // namespace

TEST(FactorIndexing, RoundTripsEveryIndex) {
  factor_indexing idx({3, 1, 4, 2});
  ASSERT_EQ(idx.size(), 24u);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    auto t = idx.to_tuple(i);
    EXPECT_EQ(idx.to_index(t), i);
  }
  EXPECT_EQ(idx.to_tuple(5), (std::vector<element>{0, 0, 2, 1}));
}

TEST(FactorIndexing, RejectsBadInput) {
  EXPECT_THROW(factor_indexing({2, 0}), invalid_input);
  factor_indexing idx({2, 2});
  EXPECT_THROW(idx.to_index(std::vector<element>{2, 0}), invalid_input);
  EXPECT_THROW(idx.to_index(std::vector<element>{0}), invalid_input);
}

TEST(FiniteAlgebra, ValidatesTables) {
  EXPECT_THROW(finite_algebra("x", 0, {}), invalid_input);
  EXPECT_THROW(finite_algebra("x", 2, {{"f", 2, {0, 1, 1}}}), invalid_input);
  EXPECT_THROW(finite_algebra("x", 2, {{"f", 1, {0, 2}}}), invalid_input);
  EXPECT_THROW(finite_algebra("x", 2, {{"c", 0, {0}}}), invalid_input);
  finite_algebra ok("x", 2, {{"f", 1, {1, 0}}});
  EXPECT_THROW(ok.apply(0, std::vector<element>{0, 0}), invalid_input);
  EXPECT_THROW(ok.apply(1, std::vector<element>{0}), invalid_input);
  EXPECT_EQ(ok.apply(0, std::vector<element>{1}), 0u);
}

TEST(FiniteAlgebra, ProductIsCoordinatewise) {
  auto rng = rng_for(1);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = oracle::random_algebra(2 + trial % 3, 2, rng);
    auto b = oracle::random_algebra(3, 2, rng);
    for (std::size_t cap : {std::size_t{1} << 22, std::size_t{1}}) {
      auto p = finite_algebra::product({a, b}, "p", cap);
      EXPECT_EQ(p.has_tables(), cap > 1);
      for (element x = 0; x < p.size(); ++x) {
        for (element y = 0; y < p.size(); ++y) {
          element ax = x / 3, bx = x % 3, ay = y / 3, by = y % 3;
          element want = a.apply(0, std::vector<element>{ax, ay}) * 3
                         + b.apply(0, std::vector<element>{bx, by});
          EXPECT_EQ(p.apply(0, std::vector<element>{x, y}), want);
        }
      }
    }
  }
}

TEST(FiniteAlgebra, ProductRejectsDissimilarFactors) {
  EXPECT_THROW(finite_algebra::product({make_ujm_reduct(2, 2, 3), make_ujm_reduct(2, 2, 4)}, "p", 1u << 22),
               invalid_input);
}

TEST(Ujm, OrderStatisticAgainstSubsetOracle) {
  auto t = props::ujm_order_statistic();
  EXPECT_TRUE(t.ok()) << t.first_failure;
  EXPECT_GT(t.trials, 100000u);
}

TEST(Ujm, RejectsOutOfRangeParameters) {
  EXPECT_THROW(make_ujm_reduct(2, 0, 4), invalid_input);
  EXPECT_THROW(make_ujm_reduct(2, 5, 4), invalid_input);
  EXPECT_THROW(make_ujm_reduct(1, 1, 3), invalid_input);
}

TEST(Predicates, AbsorbingAndMajorityMatchBruteForce) {
  for (std::size_t s = 2; s <= 3; ++s) {
    for (unsigned m = 3; m <= 5; ++m) {
      for (unsigned j = 1; j <= m; ++j) {
        auto alg = make_ujm_reduct(s, j, m);
        for (unsigned k = 1; k <= m; ++k) {
          for (element z = 0; z < s; ++z) {
            EXPECT_EQ(is_k_absorbing(alg, 0, z, k), oracle::k_absorbing(alg, 0, z, k))
                << "s=" << s << " j=" << j << " m=" << m << " k=" << k << " z=" << z;
          }
          bool all = true;
          for (element z = 0; z < s; ++z) {
            all = all && oracle::k_absorbing(alg, 0, z, k);
          }
          EXPECT_EQ(is_k_majority(alg, 0, k), all);
        }
        // bottom is j-absorbing, top is (m-j+1)-absorbing
        EXPECT_TRUE(is_k_absorbing(alg, 0, 0, j));
        EXPECT_TRUE(is_k_absorbing(alg, 0, static_cast<element>(s - 1), m - j + 1));
      }
    }
  }
}

TEST(Predicates, NearUnanimityOfUjm) {
  // u_{j,m} is near-unanimity exactly when 2 <= j <= m - 1
  for (unsigned m = 3; m <= 6; ++m) {
    for (unsigned j = 1; j <= m; ++j) {
      EXPECT_EQ(is_near_unanimity(make_ujm_reduct(2, j, m), 0), j >= 2 && j + 1 <= m)
          << "j=" << j << " m=" << m;
    }
  }
}

TEST(Predicates, SymmetryAgainstAllPermutations) {
  auto rng = rng_for(2);
  for (int trial = 0; trial < 200; ++trial) {
    unsigned r   = 2 + trial % 3;
    auto     alg = oracle::random_algebra(2, r, rng);
    if (trial % 2 == 0) {
      // symmetrise: value depends on the multiset only
      auto               t = alg.table(0);
      std::vector<element> args(r, 0);
      for (std::size_t i = 0; i < t.entries.size(); ++i) {
        std::size_t rest = i;
        for (unsigned p = r; p-- > 0;) {
          args[p] = static_cast<element>(rest % 2);
          rest /= 2;
        }
        auto ones    = std::count(args.begin(), args.end(), 1u);
        t.entries[i] = t.entries[(std::size_t{1} << ones) - 1];
      }
      alg = finite_algebra("sym", 2, {t});
    }
    EXPECT_EQ(is_symmetrical(alg, 0), oracle::symmetric(alg, 0)) << "trial " << trial;
  }
  for (unsigned m = 3; m <= 5; ++m) {
    EXPECT_TRUE(is_symmetrical(make_ujm_reduct(3, 2, m), 0));
  }
}

TEST(Closure, MatchesBruteForceAndTermsEvaluate) {
  auto rng = rng_for(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n   = 3 + trial % 6;
    auto        alg = oracle::random_algebra(n, 1 + trial % 2, rng);
    std::uniform_int_distribution<element> pick(0, static_cast<element>(n - 1));
    std::vector<element> gens{pick(rng), pick(rng)};
    auto                 res = subalgebra_closure(alg, gens, true);
    auto                 ref = oracle::closure(alg, {gens.begin(), gens.end()});
    EXPECT_EQ(std::set<element>(res.elements.begin(), res.elements.end()), ref);
    for (std::size_t i = 0; i < res.elements.size(); ++i) {
      EXPECT_EQ(oracle::eval(res.provenance[i], alg, res.generators), res.elements[i]);
    }
    std::set<element> sub(res.elements.begin(), res.elements.end());
    EXPECT_EQ(is_subuniverse(alg, res.elements).closed, oracle::closed(alg, sub));
  }
}

TEST(Closure, CapIsEnforced) {
  auto    alg = make_chain_lattice(64);
  limits  lim;
  lim.closure_cap = 10;
  std::vector<element> all;
  for (element e = 0; e < 64; ++e) {
    all.push_back(e);
  }
  EXPECT_THROW(subalgebra_closure(alg, all, false, lim), cap_exceeded);
}

TEST(BoxSet, ClosureCheckAgreesWithBruteForce) {
  auto rng = rng_for(4);
  for (int trial = 0; trial < 150; ++trial) {
    unsigned m  = 3 + trial % 2;
    auto     f1 = make_ujm_reduct(2 + trial % 2, 1 + trial % m, m);
    auto     f2 = make_ujm_reduct(2, 1 + (trial / 2) % m, m);
    auto     p  = finite_algebra::product({f1, f2, f2}, "p", 1u << 22);
    box_set  set = box_set::for_algebra(p);
    std::uniform_int_distribution<int> nboxes(1, 3);
    for (int b = nboxes(rng); b > 0; --b) {
      box bx = set.full_box();
      for (std::size_t l = 0; l < bx.masks.size(); ++l) {
        std::uint64_t full = (std::uint64_t{1} << set.leaf_sizes()[l]) - 1;
        std::uint64_t mask = 0;
        while (mask == 0) {
          mask = rng() & full;
        }
        bx.masks[l] = mask;
      }
      set.add(bx);
    }
    auto              elems = set.elements(1u << 20);
    std::set<element> ref(elems.begin(), elems.end());
    for (element e = 0; e < p.size(); ++e) {
      EXPECT_EQ(set.contains(e), ref.contains(e));
    }
    EXPECT_EQ(is_subuniverse_boxes(p, set).closed, oracle::closed(p, ref)) << "trial " << trial;
    EXPECT_EQ(is_subuniverse(p, elems).closed, oracle::closed(p, ref)) << "trial " << trial;
  }
}

TEST(Term, EvaluationAgreesWithRecursiveOracle) {
  auto alg = make_ujm_reduct(3, 2, 3);
  auto x   = [](std::size_t i) { return term::variable(i); };
  term t   = term::apply(0, {term::apply(0, {x(0), x(1), x(2)}), x(1), term::apply(0, {x(2), x(2), x(0)})});
  EXPECT_EQ(t.variable_count(), 3u);
  EXPECT_EQ(t.depth(), 2u);
  std::vector<element> args(3, 0);
  for (element a = 0; a < 3; ++a) {
    for (element b = 0; b < 3; ++b) {
      for (element c = 0; c < 3; ++c) {
        args = {a, b, c};
        EXPECT_EQ(t.evaluate(alg, args), oracle::eval(t, alg, args));
      }
    }
  }
  EXPECT_TRUE(t.well_formed_for(alg));
  EXPECT_FALSE(term::apply(1, {x(0)}).well_formed_for(alg));
}
