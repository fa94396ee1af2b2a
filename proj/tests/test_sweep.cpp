#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

#include "micromacro/sweep.hpp"

namespace mm {
namespace {

// Bitwise equality, treating NaN payloads alike.
bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

void expect_identical(const SweepRow& a, const SweepRow& b) {
  EXPECT_TRUE(same_bits(a.r_db, b.r_db));
  EXPECT_TRUE(same_bits(a.r, b.r));
  EXPECT_EQ(a.m, b.m);
  EXPECT_EQ(a.policy, b.policy);
  EXPECT_TRUE(same_bits(a.T, b.T));
  EXPECT_TRUE(same_bits(a.D, b.D));
  EXPECT_TRUE(same_bits(a.P, b.P));
  EXPECT_TRUE(same_bits(a.entropy, b.entropy));
  EXPECT_TRUE(same_bits(a.T_bal, b.T_bal));
  EXPECT_TRUE(same_bits(a.herald_weight, b.herald_weight));
  EXPECT_EQ(a.status, b.status);
}

std::vector<SweepPoint> mixed_points() {
  std::vector<SweepPoint> pts;
  for (double db : {0.0, 2.5, 6.0})
    for (int m : {0, 1, 3})
      for (const auto& policy : {TransmissionPolicy::balanced(), TransmissionPolicy::half(), TransmissionPolicy::fixed(0.2)})
        pts.push_back({db, m, policy});
  // Repeated squeezing value out of order.
  pts.push_back({2.5, 2, TransmissionPolicy::balanced()});
  return pts;
}

TEST(TransmissionPolicy, Parsing) {
  EXPECT_EQ(TransmissionPolicy::parse("bal").kind, TransmissionKind::Balanced);
  EXPECT_EQ(TransmissionPolicy::parse("balanced").kind, TransmissionKind::Balanced);
  EXPECT_EQ(TransmissionPolicy::parse("half").resolve(0.9), 0.5);
  const TransmissionPolicy p = TransmissionPolicy::parse("0.25");
  EXPECT_EQ(p.kind, TransmissionKind::Explicit);
  EXPECT_EQ(p.resolve(0.9), 0.25);
  EXPECT_EQ(p.label(), "0.25");
  EXPECT_EQ(TransmissionPolicy::balanced().resolve(0.7), 0.7);
  EXPECT_EQ(TransmissionPolicy::balanced().label(), "bal");
  for (const char* bad : {"", "x", "0.3x", "1.5", "-0.1"}) EXPECT_THROW(TransmissionPolicy::parse(bad), Error) << bad;
}

TEST(Sweep, PointMatchesLibraryCalls) {
  const SweepRow row = evaluate_point({5.0, 1, TransmissionPolicy::balanced()}, 128);
  ASSERT_TRUE(row.ok());
  const double r = db_to_r(5.0);
  const ModeState input = photon_subtracted_squeezed(1, r).state;
  const double t = t_balanced(input);
  const PsiPair pair = psi_pm_from(input, t);
  EXPECT_EQ(row.T, t);
  EXPECT_EQ(row.D, distance_D(pair.plus, pair.minus));
  EXPECT_EQ(row.P, discrimination_P(pair.plus, pair.minus));
  EXPECT_NEAR(row.entropy, 1.0, 1e-9);
}

TEST(Sweep, ZeroStateIsFlaggedNotThrown) {
  const SweepRow row = evaluate_point({0.0, 1, TransmissionPolicy::balanced()}, 128);
  EXPECT_EQ(row.status, "zero-state");
  EXPECT_TRUE(std::isnan(row.D));
  EXPECT_TRUE(std::isnan(row.T));
}

TEST(Sweep, ParallelIsBitIdenticalToSerial) {
  const auto pts = mixed_points();
  const auto serial = sweep_serial(pts, 128);
  bool flagged = false;
  for (int workers : {1, 2, 4}) {
    const auto parallel = sweep_parallel(pts, 128, workers);
    ASSERT_EQ(parallel.size(), serial.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
      expect_identical(serial[i], parallel[i]);
      flagged = flagged || !serial[i].ok();
    }
  }
  EXPECT_TRUE(flagged);
}

TEST(Sweep, EmptyInput) {
  EXPECT_TRUE(sweep_serial({}, 128).empty());
  EXPECT_TRUE(sweep_parallel({}, 128, 2).empty());
}

TEST(RemoteSweep, ParallelIsBitIdenticalToSerial) {
  const std::vector<RemotePoint> pts{{0.05, 0.2}, {0.0, 0.5}, {0.05, 1.0}};
  const auto serial = remote_sweep_serial(pts);
  const auto parallel = remote_sweep_parallel(pts, 2);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_TRUE(same_bits(serial[i].herald_prob, parallel[i].herald_prob));
    EXPECT_TRUE(same_bits(serial[i].fidelity, parallel[i].fidelity));
    EXPECT_TRUE(same_bits(serial[i].log_negativity, parallel[i].log_negativity));
    EXPECT_EQ(serial[i].status, parallel[i].status);
  }
  EXPECT_EQ(serial[1].status, "impossible-outcome");
  EXPECT_EQ(serial[1].herald_prob, 0.0);
  EXPECT_GE(serial[2].fidelity, 0.99);
}

}  // namespace
}  // namespace mm
