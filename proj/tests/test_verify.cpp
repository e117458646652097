#include <gtest/gtest.h>

#include "seqpred/verify.hpp"

namespace {

using namespace seqpred;

void expect_clean(const SuiteReport& r) {
  for (const auto& p : r.properties) {
    EXPECT_GT(p.checked, 0u) << r.suite << ": " << p.property;
    EXPECT_EQ(p.failed, 0u) << r.suite << ": " << p.property << " first failure " << p.first_failure;
  }
  EXPECT_TRUE(r.ok());
}

TEST(VerifySuites, Registry) {
  const auto& s = verify_suites();
  for (auto name : {"greedy-minimality", "ipc-bruteforce", "slp-bounds", "counting", "automaticity-small"})
    EXPECT_EQ(s.count(name), 1u) << name;
}

TEST(VerifySuites, GreedyMinimality) {
  const auto r = verify_greedy_minimality(10);
  expect_clean(r);
  EXPECT_EQ(r.properties.front().checked, 2046u);
}

TEST(VerifySuites, IpcBruteforce) {
  std::vector<ProbeObservation> probes;
  expect_clean(verify_ipc_bruteforce(100, 64, 7, &probes));
  EXPECT_EQ(probes.size(), 100u);
}

TEST(VerifySuites, SlpBounds) { expect_clean(verify_slp_bounds()); }

TEST(VerifySuites, Counting) { expect_clean(verify_counting(10)); }

TEST(VerifySuites, AutomaticitySmall) { expect_clean(verify_automaticity_small()); }

TEST(PropertyTally, KeepsFirstFailure) {
  SuiteReport r{"demo", {}};
  auto& p = r.property("p");
  p.record(true, "a");
  p.record(false, "b");
  p.record(false, "c");
  EXPECT_EQ(p.checked, 3u);
  EXPECT_EQ(p.failed, 2u);
  EXPECT_EQ(p.first_failure, "b");
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(&r.property("p"), &p);
}

}  // namespace
