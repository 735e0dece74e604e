#include <gtest/gtest.h>

#include <algwit/certificate.hpp>

#include "support/properties.hpp"

using namespace algwit;

namespace {
  void expect_fields(json const& c) {
    for (auto key : {"claim", "parameters", "verdict", "evidence", "stats", "tool_version"}) {
      EXPECT_TRUE(c.contains(key)) << key;
    }
    EXPECT_EQ(c.at("tool_version"), tool_version());
  }

  bool rechecks(json const& c) {
    return recheck_certificate(c).ok;
  }
}  // namespace

TEST(Certificate, EveryEmittedCertificateRechecks) {
  auto t = props::certificate_recheck();
  EXPECT_TRUE(t.ok()) << t.first_failure;
  EXPECT_GE(t.trials, 20u);
}

TEST(Certificate, SharpnessFieldsAndTampering) {
  auto c = certify_sharpness(4, 2);
  expect_fields(c);
  EXPECT_EQ(c.at("verdict"), "verified");
  ASSERT_TRUE(rechecks(c));

  auto moved_a             = c;
  moved_a["evidence"]["a"] = moved_a["evidence"]["d"];
  EXPECT_FALSE(rechecks(moved_a));

  auto no_c             = c;
  no_c["evidence"]["c"] = nullptr;
  EXPECT_FALSE(rechecks(no_c));

  auto short_chain = c;
  auto& chain      = short_chain["evidence"]["chain"];
  chain.erase(chain.begin() + 1);
  EXPECT_FALSE(rechecks(short_chain));
}

TEST(Certificate, LevelTampering) {
  auto c = certify_level("N:2:4", "jonsson", 16);
  expect_fields(c);
  ASSERT_EQ(c.at("verdict"), "found");
  ASSERT_TRUE(rechecks(c));

  auto lower                 = c;
  lower["evidence"]["level"] = 3;
  EXPECT_FALSE(rechecks(lower));

  auto swapped    = c;
  auto& w         = swapped["evidence"]["witness"];
  std::swap(w[1], w[2]);
  EXPECT_FALSE(rechecks(swapped));

  auto capped = certify_level("N:2:4", "jonsson", 3);
  EXPECT_EQ(capped.at("verdict"), "cap");
  EXPECT_TRUE(rechecks(capped));
}

TEST(Certificate, SearchTampering) {
  auto none = certify_search("N:2:4", "nu", 3);
  ASSERT_EQ(none.at("verdict"), "none");
  ASSERT_TRUE(rechecks(none));
  auto moved                       = none;
  moved["parameters"]["fixture"]   = "N:2:3";
  EXPECT_FALSE(rechecks(moved));

  auto found = certify_search("N:2:3", "nu", 3);
  ASSERT_EQ(found.at("verdict"), "found");
  ASSERT_TRUE(rechecks(found));
  auto projection                  = found;
  projection["evidence"]["witness"] = "x0";
  EXPECT_FALSE(rechecks(projection));
}

TEST(Certificate, IdentityTampering) {
  auto c = certify_identity({identity_family::n_alvin, 5, 2, 2, 6, {}}, true);
  ASSERT_EQ(c.at("verdict"), "fails");
  ASSERT_TRUE(rechecks(c));
  auto flipped       = c;
  flipped["verdict"] = "holds";
  EXPECT_FALSE(rechecks(flipped));
}

TEST(Certificate, ToolkitTampering) {
  auto c = certify_toolkit("dissent", "arithmetical", 0, 1, 1);
  ASSERT_EQ(c.at("verdict"), "verified");
  ASSERT_TRUE(rechecks(c));
  auto other                     = c;
  other["parameters"]["fixture"] = "N:2:3";
  EXPECT_FALSE(rechecks(other));
}

TEST(Certificate, MalformedInputIsRejected) {
  EXPECT_FALSE(rechecks(json::object()));
  EXPECT_FALSE(rechecks({{"claim", "nonsense"}, {"parameters", json::object()}, {"verdict", "x"},
                         {"evidence", json::object()}, {"stats", json::object()}, {"tool_version", "0"}}));
}
