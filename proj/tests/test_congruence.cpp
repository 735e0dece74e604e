#include <random>

#include <gtest/gtest.h>

#include <algwit/builders.hpp>
#include <algwit/error.hpp>
#include <algwit/partition.hpp>
#include <algwit/relation.hpp>

#include "support/oracles.hpp"
#include "support/properties.hpp"

using namespace algwit;

namespace {
  std::mt19937_64 rng_for(std::uint64_t salt) {
    return std::mt19937_64(props::seed_from(0, nullptr) ^ salt);
  }

  oracle::matrix to_matrix(bin_relation const& r) {
    oracle::matrix m(r.size(), std::vector<bool>(r.size(), false));
    for (element a = 0; a < r.size(); ++a) {
      for (element b = 0; b < r.size(); ++b) {
        m[a][b] = r.test(a, b);
      }
    }
    return m;
  }

  bin_relation random_relation(std::size_t n, std::mt19937_64& rng) {
    bin_relation r(n);
    for (element a = 0; a < n; ++a) {
      for (element b = 0; b < n; ++b) {
        r.set(a, b, rng() % 3 == 0);
      }
    }
    return r;
  }
}  // namespace

TEST(Partition, NormalisesAndCountsBlocks) {
  partition p(std::vector<std::uint32_t>{5, 2, 5, 7});
  EXPECT_EQ(p.block_count(), 3u);
  EXPECT_TRUE(p.related(0, 2));
  EXPECT_FALSE(p.related(0, 1));
  EXPECT_EQ(p, partition::from_blocks(4, {{0, 2}, {1}, {3}}));
  EXPECT_EQ(partition::identity(3).block_count(), 3u);
  EXPECT_EQ(partition::total(3).block_count(), 1u);
}

TEST(Partition, MeetAndJoinAgainstMatrices) {
  auto rng = rng_for(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + trial % 9;
    partition   p(oracle::random_partition(n, rng));
    partition   q(oracle::random_partition(n, rng));
    auto        mp = oracle::equivalence(p.block_ids());
    auto        mq = oracle::equivalence(q.block_ids());
    EXPECT_EQ(oracle::equivalence(partition_meet(p, q).block_ids()), oracle::meet(mp, mq));
    // the join is the transitive closure of the union
    auto u = mp;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        u[i][j] = mp[i][j] || mq[i][j];
      }
    }
    auto closure = oracle::power(u, n);
    EXPECT_EQ(oracle::equivalence(equivalence_join(p, q).block_ids()), closure);
  }
}

TEST(Congruence, GeneratedAgainstExhaustivePartitions) {
  auto rng = rng_for(12);
  auto t   = props::congruence_generation(rng, 400);
  EXPECT_TRUE(t.ok()) << t.first_failure;
}

TEST(Congruence, IsCongruenceAgainstOracle) {
  auto rng = rng_for(13);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n   = 2 + trial % 5;
    auto        alg = oracle::random_algebra(n, 1 + trial % 2, rng);
    auto        rgs = oracle::random_partition(n, rng);
    auto        res = is_congruence(alg, partition(rgs));
    EXPECT_EQ(res.ok, oracle::compatible(alg, rgs)) << "trial " << trial;
    EXPECT_EQ(res.failure.has_value(), !res.ok);
  }
}

TEST(Congruence, JoinIsGeneratedByTheUnion) {
  auto rng = rng_for(14);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n   = 2 + trial % 5;
    auto        alg = oracle::random_algebra(n, 2, rng);
    std::uniform_int_distribution<element> pick(0, static_cast<element>(n - 1));
    auto p = congruence_generated(alg, {{pick(rng), pick(rng)}});
    auto q = congruence_generated(alg, {{pick(rng), pick(rng)}});
    std::vector<std::pair<element, element>> pairs;
    for (element a = 0; a < n; ++a) {
      for (element b = 0; b < n; ++b) {
        if (p.related(a, b) || q.related(a, b)) {
          pairs.emplace_back(a, b);
        }
      }
    }
    auto want = oracle::equivalence(oracle::generated_congruence(alg, pairs));
    EXPECT_EQ(oracle::equivalence(partition_join(alg, p, q).block_ids()), want);
  }
}

TEST(Relation, OperationsAgainstMatrices) {
  auto rng = rng_for(15);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + trial % 12;
    auto        r = random_relation(n, rng);
    auto        s = random_relation(n, rng);
    auto        mr = to_matrix(r), ms = to_matrix(s);
    EXPECT_EQ(to_matrix(rel_compose(r, s)), oracle::compose(mr, ms));
    EXPECT_EQ(to_matrix(rel_meet(r, s)), oracle::meet(mr, ms));
    EXPECT_EQ(to_matrix(rel_power(r, 3)), oracle::power(mr, 3));
    EXPECT_EQ(to_matrix(rel_power(r, 0)), oracle::identity(n));
    auto conv = to_matrix(rel_converse(r));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        EXPECT_EQ(conv[i][j], mr[j][i]);
      }
    }
    auto inc = check_inclusion(r, s);
    EXPECT_EQ(inc.holds, oracle::subset(mr, ms));
  }
}

TEST(Relation, ShortestAlternatingChainAgainstWalkEnumeration) {
  auto rng = rng_for(16);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 2 + trial % 10;
    partition   p(oracle::random_partition(n, rng));
    partition   q(oracle::random_partition(n, rng));
    auto        rp = rel_of_partition(p), rq = rel_of_partition(q);
    std::uniform_int_distribution<element> pick(0, static_cast<element>(n - 1));
    element a = pick(rng), b = pick(rng);
    auto    got  = shortest_alternating_chain(a, b, rp, rq, 2 * n);
    auto    want = oracle::shortest_walk(a, b, to_matrix(rp), to_matrix(rq), 2 * n);
    ASSERT_EQ(got.has_value(), want.has_value()) << "trial " << trial;
    if (got) {
      EXPECT_EQ(got->elements, want->elements) << "trial " << trial;
      if (got->factors() > 0) {
        EXPECT_EQ(got->starts_with_first, want->starts_with_first) << "trial " << trial;
      }
    }
  }
}

TEST(Relation, ShortestChainRespectsCap) {
  // a path 0 - 1 - 2 - 3 - 4 alternating between two partitions
  partition p = partition::from_blocks(5, {{0, 1}, {2, 3}, {4}});
  partition q = partition::from_blocks(5, {{0}, {1, 2}, {3, 4}});
  auto      c = shortest_alternating_chain(0, 4, rel_of_partition(p), rel_of_partition(q), 8);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->factors(), 4u);
  EXPECT_THROW(shortest_alternating_chain(0, 4, rel_of_partition(p), rel_of_partition(q), 3),
               cap_exceeded);
}
