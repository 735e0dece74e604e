#include <random>

#include <gtest/gtest.h>

#include <algwit/constructions.hpp>
#include <algwit/error.hpp>
#include <algwit/identity.hpp>
#include <algwit/partition.hpp>

#include "support/oracles.hpp"
#include "support/properties.hpp"

using namespace algwit;

namespace {
  std::mt19937_64 rng_for(std::uint64_t salt) {
    return std::mt19937_64(props::seed_from(0, nullptr) ^ salt);
  }

  struct triple {
    partition      alpha, beta, gamma;
    oracle::matrix a, b, g, ab, ag;
  };

  triple random_triple(std::size_t n, std::mt19937_64& rng) {
    triple t{partition(oracle::random_partition(n, rng)), partition(oracle::random_partition(n, rng)),
             partition(oracle::random_partition(n, rng)), {}, {}, {}, {}, {}};
    // bias alpha towards coarse partitions so the left sides are not trivial
    if (rng() % 2 == 0) {
      t.alpha = partition::total(n);
    }
    t.a  = oracle::equivalence(t.alpha.block_ids());
    t.b  = oracle::equivalence(t.beta.block_ids());
    t.g  = oracle::equivalence(t.gamma.block_ids());
    t.ab = oracle::meet(t.a, t.b);
    t.ag = oracle::meet(t.a, t.g);
    return t;
  }
}  // namespace

TEST(Identity, FamilyNamesRoundTrip) {
  for (auto f : all_identity_families()) {
    auto back = identity_family_from_string(to_string(f));
    ASSERT_TRUE(back);
    EXPECT_EQ(*back, f);
  }
  EXPECT_FALSE(identity_family_from_string("no-such-family"));
}

TEST(Identity, ParameterValidation) {
  auto     p = partition::total(3);
  EXPECT_THROW(check_identity({identity_family::q_power_shifted, 4, 2, 2, 1, {}}, p, p, p), invalid_input);
  EXPECT_THROW(check_identity({identity_family::q_chain_even, 4, 3, 2, 1, {}}, p, p, p), invalid_input);
  EXPECT_THROW(check_identity({identity_family::q_chain_odd, 4, 2, 2, 1, {}}, p, p, p), invalid_input);
  EXPECT_THROW(check_identity({identity_family::q_power_j, 5, 2, 4, 1, {}}, p, p, p), invalid_input);
  EXPECT_THROW(check_identity({identity_family::q_power, 2, 2, 2, 1, {}}, p, p, p), invalid_input);
}

TEST(Identity, ChainFamiliesAgainstMatrixOracle) {
  auto rng = rng_for(21);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n  = 2 + trial % 7;
    auto        t  = random_triple(n, rng);
    unsigned    k  = 1 + trial % 5;
    auto        lhs = oracle::meet(t.a, oracle::compose(t.b, t.g));

    identity_params dist{identity_family::n_distributive, 3, 2, 2, k, {}};
    identity_params alv{identity_family::n_alvin, 3, 2, 2, k, {}};
    auto            d = check_identity(dist, t.alpha, t.beta, t.gamma);
    auto            a = check_identity(alv, t.alpha, t.beta, t.gamma);
    EXPECT_EQ(d.holds, oracle::subset(lhs, oracle::alternate(t.ab, t.ag, k))) << "trial " << trial;
    EXPECT_EQ(a.holds, oracle::subset(lhs, oracle::alternate(t.ag, t.ab, k))) << "trial " << trial;
    EXPECT_TRUE(recheck_identity(d, t.alpha, t.beta, t.gamma));
    EXPECT_TRUE(recheck_identity(a, t.alpha, t.beta, t.gamma));

    unsigned        m = 3 + trial % 3;
    identity_params pw{identity_family::power, m, 2, 2, 1, {}};
    auto            pr = check_identity(pw, t.alpha, t.beta, t.gamma);
    auto            rhs = oracle::power(oracle::meet(t.a, oracle::compose(t.g, t.b)), m - 2);
    EXPECT_EQ(pr.holds, oracle::subset(lhs, rhs)) << "trial " << trial;
  }
}

TEST(Identity, QChainFamiliesAgainstMatrixOracle) {
  auto rng = rng_for(22);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 2 + trial % 7;
    auto        t = random_triple(n, rng);
    unsigned    q = 2 + trial % 3;
    unsigned    m = 3 + trial % 2;
    auto        lhs = oracle::meet(t.a, oracle::alternate(t.b, t.g, q));
    std::size_t factors = q % 2 == 0 ? std::size_t{m - 2} * q : 1 + std::size_t{m - 2} * (q - 1);
    auto stated  = q % 2 == 0 ? identity_family::q_chain_even : identity_family::q_chain_odd;
    auto swapped = q % 2 == 0 ? identity_family::q_chain_even_swapped : identity_family::q_chain_odd_swapped;
    auto s       = check_identity({stated, m, q, 2, 1, {}}, t.alpha, t.beta, t.gamma);
    auto w       = check_identity({swapped, m, q, 2, 1, {}}, t.alpha, t.beta, t.gamma);
    EXPECT_EQ(s.holds, oracle::subset(lhs, oracle::alternate(t.ab, t.ag, factors))) << "trial " << trial;
    EXPECT_EQ(w.holds, oracle::subset(lhs, oracle::alternate(t.ag, t.ab, factors))) << "trial " << trial;
  }
}

TEST(Identity, QPowerJAgainstMatrixOracle) {
  auto rng = rng_for(23);
  for (int trial = 0; trial < 150; ++trial) {
    auto     t = random_triple(2 + trial % 6, rng);
    unsigned m = 4 + trial % 3, q = 2 + trial % 3;
    unsigned j = 2 + trial % ((m + 1) / 2 - 1);
    auto     inst = check_identity({identity_family::q_power_j, m, q, j, 1, {}}, t.alpha, t.beta, t.gamma);
    // left side as for the q-power identity
    auto rel = t.b;
    for (unsigned i = 0; i + 2 < q; ++i) {
      rel = oracle::compose(rel, i % 2 == 0 ? t.ag : t.ab);
    }
    rel      = oracle::compose(rel, q % 2 == 0 ? t.g : t.b);
    auto lhs = oracle::meet(t.a, rel);
    auto rhs = oracle::power(oracle::meet(t.a, oracle::alternate(t.g, t.b, q)), m - 2 * j + 2);
    EXPECT_EQ(inst.holds, oracle::subset(lhs, rhs)) << "trial " << trial;
  }
}

TEST(Identity, ShiftedPowerEquivalence) {
  auto rng = rng_for(24);
  auto t   = props::shifted_power_equivalence(rng, 600);
  EXPECT_TRUE(t.ok()) << t.first_failure;
  RecordProperty("note", t.note);
}

TEST(Identity, CounterexampleAndWitnessAreConsistent) {
  auto rng = rng_for(25);
  for (int trial = 0; trial < 200; ++trial) {
    auto t    = random_triple(3 + trial % 6, rng);
    auto inst = check_identity({identity_family::n_distributive, 3, 2, 2, 1, {}}, t.alpha, t.beta, t.gamma);
    if (inst.holds) {
      continue;
    }
    ASSERT_TRUE(inst.counterexample);
    auto [x, y] = *inst.counterexample;
    EXPECT_TRUE(t.alpha.related(x, y));
    ASSERT_EQ(inst.witness.size(), 3u);
    EXPECT_EQ(inst.witness.front(), x);
    EXPECT_EQ(inst.witness.back(), y);
    EXPECT_TRUE(t.beta.related(inst.witness[0], inst.witness[1]));
    EXPECT_TRUE(t.gamma.related(inst.witness[1], inst.witness[2]));
    EXPECT_FALSE(t.ab[x][y]);
  }
}

TEST(Identity, RecheckRejectsTamperedInstances) {
  auto w    = build_sharpness_witness({4, 2});
  auto inst = check_identity({identity_family::n_distributive, 4, 2, 2, 3, {}}, w.alpha, w.beta, w.gamma);
  ASSERT_FALSE(inst.holds);
  EXPECT_TRUE(recheck_identity(inst, w.alpha, w.beta, w.gamma));
  auto forged  = inst;
  forged.holds = true;
  forged.counterexample.reset();
  EXPECT_FALSE(recheck_identity(forged, w.alpha, w.beta, w.gamma));
  auto bad_chain = inst;
  if (!bad_chain.witness.empty()) {
    std::swap(bad_chain.witness.front(), bad_chain.witness.back());
    EXPECT_FALSE(recheck_identity(bad_chain, w.alpha, w.beta, w.gamma));
  }
}

TEST(Identity, FocusAgreesWithFullCheck) {
  for (unsigned m = 3; m <= 5; ++m) {
    auto w = build_sharpness_witness({m, 2});
    for (unsigned n = 1; n <= 2 * m - 3; ++n) {
      identity_params p{identity_family::n_distributive, m, 2, 2, n, {}};
      auto            full  = check_identity(p, w.alpha, w.beta, w.gamma);
      auto            focus = check_identity(p, w.alpha, w.beta, w.gamma,
                                             std::make_pair(static_cast<element>(w.a), static_cast<element>(w.d)));
      // a failure at (a,d) implies a failure overall
      if (!focus.holds) {
        EXPECT_FALSE(full.holds);
      }
      EXPECT_EQ(focus.holds, n >= 2 * m - 4) << "m=" << m << " n=" << n;
    }
  }
}
