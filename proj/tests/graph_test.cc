// Copyright 2026 The dpdda Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>

#include "dpdda/delays.h"
#include "dpdda/errors.h"
#include "dpdda/graph.h"
#include "gtest/gtest.h"
#include "test_support.h"

namespace dpdda::graph {
namespace {

using testing::ReferenceSchedule;
using testing::RingSchedule;
using testing::WithSelfLoops;

// Transitive closure by repeated squaring of the boolean adjacency.
bool BruteStronglyConnected(int n, const std::vector<Edge>& edges) {
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) r[i][i] = true;
  for (const Edge& e : edges) r[e.from][e.to] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!r[i][j]) return false;
  return true;
}

TEST(WeightsTest, TwoInNeighboursSplitEvenly) {
  const GraphSchedule s(3, StaticRule{WithSelfLoops({{1, 0}}, 3)});
  const Matrix w = s.WeightsAt(0);
  EXPECT_DOUBLE_EQ(w(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(w(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(w(0, 2), 0.0);
  EXPECT_DOUBLE_EQ(w(1, 1), 1.0);
  EXPECT_DOUBLE_EQ(w(2, 2), 1.0);
}

TEST(WeightsTest, IntermittentLinkDropsAtOddSteps) {
  const GraphSchedule s = ReferenceSchedule();
  for (int t = 0; t < 10; ++t) {
    const Matrix w = s.WeightsAt(t);
    if (t % 2 == 0) {
      EXPECT_DOUBLE_EQ(w(3, 1), 0.5) << t;
    } else {
      EXPECT_DOUBLE_EQ(w(3, 1), 0.0) << t;
      EXPECT_DOUBLE_EQ(w(3, 3), 1.0) << t;
    }
  }
}

TEST(WeightsTest, MissingSelfLoopIsRejected) {
  const GraphSchedule s(2, StaticRule{{{0, 1}, {1, 0}, {0, 0}}});
  EXPECT_THROW(s.WeightsAt(0), InvalidScheduleError);
}

TEST(WeightsTest, EmptyInNeighbourhoodIsRejected) {
  const GraphSchedule s(2, StaticRule{{{0, 0}}}, false);
  EXPECT_THROW(s.WeightsAt(0), InvalidScheduleError);
}

TEST(WeightsTest, OutOfRangeEdgeIsRejected) {
  EXPECT_THROW(GraphSchedule(2, StaticRule{{{0, 2}}}), InvalidScheduleError);
}

TEST(WeightsTest, PeriodicRuleCycles) {
  const GraphSchedule s(
      2, PeriodicRule{{WithSelfLoops({{0, 1}}, 2), WithSelfLoops({{1, 0}}, 2)}});
  EXPECT_DOUBLE_EQ(s.WeightsAt(0)(1, 0), 0.5);
  EXPECT_DOUBLE_EQ(s.WeightsAt(1)(1, 0), 0.0);
  EXPECT_DOUBLE_EQ(s.WeightsAt(1)(0, 1), 0.5);
  EXPECT_EQ(s.WeightsAt(2), s.WeightsAt(0));
}

TEST(WeightsTest, RowsAreStochasticWithSelfWeightAtLeastOneOverV) {
  const GraphSchedule s = ReferenceSchedule();
  for (int t = 0; t < 200; ++t) {
    const Matrix w = s.WeightsAt(t);
    EXPECT_LE(w.MaxRowStochasticError(), 1e-12);
    const auto in = s.InNeighbors(t);
    for (int i = 0; i < 5; ++i) {
      EXPECT_GE(w(i, i), 1.0 / 5.0);
      for (int j = 0; j < 5; ++j) {
        const bool neighbour = std::find(in[i].begin(), in[i].end(), j) != in[i].end();
        EXPECT_EQ(w(i, j) > 0.0, neighbour);
        EXPECT_GE(w(i, j), 0.0);
        EXPECT_LE(w(i, j), 1.0);
      }
    }
  }
}

TEST(ConnectivityTest, RingIsOneConnected) {
  EXPECT_TRUE(ValidateBConnectivity(RingSchedule(5), 1, 50).connected);
}

TEST(ConnectivityTest, AlternatingPairNeedsTwoSteps) {
  const GraphSchedule s(
      2, PeriodicRule{{WithSelfLoops({{0, 1}}, 2), WithSelfLoops({{1, 0}}, 2)}});
  const auto one = ValidateBConnectivity(s, 1, 10);
  EXPECT_FALSE(one.connected);
  EXPECT_EQ(one.first_violating_window, 0);
  EXPECT_TRUE(ValidateBConnectivity(s, 2, 10).connected);
}

TEST(ConnectivityTest, DisconnectedPairFailsForEveryB) {
  const GraphSchedule s(2, StaticRule{WithSelfLoops({}, 2)});
  for (int b = 1; b <= 8; ++b) {
    EXPECT_FALSE(ValidateBConnectivity(s, b, 8).connected) << b;
  }
}

TEST(ConnectivityTest, ReferenceScheduleNeedsWindowTwo) {
  const GraphSchedule s = ReferenceSchedule();
  const auto one = ValidateBConnectivity(s, 1, 100);
  EXPECT_FALSE(one.connected);
  EXPECT_EQ(one.first_violating_window, 1);
  EXPECT_EQ(one.window_begin, 1);
  EXPECT_EQ(one.window_end, 1);
  EXPECT_TRUE(ValidateBConnectivity(s, 2, 100).connected);
  // Agree with a closure oracle window by window.
  for (int t = 0; t < 6; ++t) {
    EXPECT_EQ(IsStronglyConnected(5, s.EdgesAt(t)),
              BruteStronglyConnected(5, s.EdgesAt(t)));
  }
}

TEST(ConnectivityTest, HorizonShorterThanWindowIsRejected) {
  EXPECT_THROW(ValidateBConnectivity(RingSchedule(3), 5, 2), DomainError);
}

// Index-formula construction of the augmented matrix.
Matrix AugmentOracle(const Matrix& w, const DelaySlice& d, int tau) {
  const int v = static_cast<int>(w.rows());
  Matrix out(v * (tau + 1), v * (tau + 1));
  for (int i = 0; i < v; ++i)
    for (int j = 0; j < v; ++j)
      if (w(i, j) != 0.0) out(i, d(i, j) * v + j) = w(i, j);
  for (int r = 1; r <= tau; ++r)
    for (int j = 0; j < v; ++j) out(r * v + j, (r - 1) * v + j) = 1.0;
  return out;
}

TEST(AugmentTest, NoDelayBoundReturnsWeights) {
  const Matrix w = ReferenceSchedule().WeightsAt(0);
  EXPECT_EQ(Augment(w, DelaySlice(5), 0), w);
}

TEST(AugmentTest, ShapeIsVTimesOnePlusTau) {
  const Matrix w = ReferenceSchedule().WeightsAt(0);
  const Matrix a = Augment(w, DelaySlice(5), 2);
  EXPECT_EQ(a.rows(), 15u);
  EXPECT_EQ(a.cols(), 15u);
}

TEST(AugmentTest, DelayedEdgeMovesToItsBlock) {
  const Matrix w = ReferenceSchedule().WeightsAt(0);
  ASSERT_DOUBLE_EQ(w(3, 1), 0.5);
  DelaySlice d(5);
  d(3, 1) = 1;
  const Matrix a = Augment(w, d, 2);
  EXPECT_DOUBLE_EQ(a(3, 5 + 1), 0.5);
  EXPECT_DOUBLE_EQ(a(3, 1), 0.0);
  EXPECT_EQ(a, AugmentOracle(w, d, 2));
}

TEST(AugmentTest, DelayBeyondBoundIsRejected) {
  const Matrix w = ReferenceSchedule().WeightsAt(0);
  DelaySlice d(5);
  d(3, 1) = 3;
  EXPECT_THROW(Augment(w, d, 2), OutOfRangeError);
}

TEST(AugmentTest, RandomDelaysMatchOracleAndPartitionWeights) {
  const GraphSchedule s = ReferenceSchedule();
  for (int tau : {1, 2, 3}) {
    const DelaySchedule delays = testing::UniformDelays(tau, 0, tau, 5 + tau);
    for (int t = 0; t < 200; ++t) {
      const Matrix w = s.WeightsAt(t);
      const DelaySlice slice = delays.CommSlice(5, t);
      const Matrix a = Augment(w, slice, tau);
      ASSERT_EQ(a, AugmentOracle(w, slice, tau));
      ASSERT_LE(a.MaxRowStochasticError(), 1e-12);
      const auto blocks = SplitByDelay(w, slice, tau);
      Matrix sum(5, 5);
      for (const auto& b : blocks)
        for (int i = 0; i < 5; ++i)
          for (int j = 0; j < 5; ++j) sum(i, j) += b(i, j);
      ASSERT_EQ(sum, w);
    }
  }
}

TEST(ProductTest, SelfWeightsStayPositive) {
  const GraphSchedule s = ReferenceSchedule();
  Matrix y = Matrix::Identity(5);
  double floor = 1.0;
  for (int t = 0; t < 300; ++t) {
    y = s.WeightsAt(t) * y;
    for (int i = 0; i < 5; ++i) {
      ASSERT_GT(y(i, i), 0.0);
      floor = std::min(floor, y(i, i));
    }
  }
  EXPECT_NEAR(SelfWeightFloor(s, 300), floor, 1e-15);
}

double RowSpread(const Matrix& m) {
  double worst = 0.0;
  for (std::size_t a = 0; a < m.rows(); ++a)
    for (std::size_t b = a + 1; b < m.rows(); ++b)
      for (std::size_t j = 0; j < m.cols(); ++j)
        worst = std::max(worst, std::abs(m(a, j) - m(b, j)));
  return worst;
}

TEST(ProductTest, BackwardRowSpreadIsNonincreasing) {
  const GraphSchedule s = ReferenceSchedule();
  for (int tau : {0, 1, 3}) {
    const DelaySchedule delays = testing::UniformDelays(tau, 0, tau, 17);
    Matrix p = Matrix::Identity(5 * (tau + 1));
    double prev = RowSpread(p);
    for (int t = 0; t < 200; ++t) {
      p = Augment(s.WeightsAt(t), delays.CommSlice(5, t), tau) * p;
      const double spread = RowSpread(p);
      ASSERT_LE(spread, prev + 1e-12) << "tau=" << tau << " t=" << t;
      prev = spread;
    }
    EXPECT_LT(prev, 1e-3) << tau;
  }
}

TEST(MixingTest, CompleteGraphHasUniformPi) {
  const auto diag =
      ComputeMixingDiagnostics(testing::CompleteSchedule(5), DelaySchedule(), 40);
  for (const Vec& pi : diag.pi_trace) {
    for (double p : pi) EXPECT_NEAR(p, 0.2, 1e-12);
  }
  // One step mixes completely.
  EXPECT_LT(diag.deviations.front(), 1e-15);
}

TEST(MixingTest, RingFitsGeometricDecay) {
  const auto diag = ComputeMixingDiagnostics(RingSchedule(3), DelaySchedule(), 120);
  EXPECT_GT(diag.lambda_hat, 0.0);
  EXPECT_LT(diag.lambda_hat, 1.0);
  EXPECT_GT(diag.r_squared, 0.95);
  // Ring with self-loops: W = (I + P) / 2 has second eigenvalue modulus
  // |1 + e^{2 pi i/3}| / 2 = 1/2.
  EXPECT_NEAR(diag.lambda_hat, 0.5, 0.05);
}

TEST(MixingTest, ReferenceScheduleWithFixedDelaysKeepsPiPositive) {
  CommDelaySpec comm;
  comm.base = 2;
  const DelaySchedule delays(2, comm, FeedbackDelaySpec{}, 1);
  const auto diag = ComputeMixingDiagnostics(ReferenceSchedule(), delays, 400);
  EXPECT_GT(diag.min_pi, 0.0);
  for (const Vec& pi : diag.pi_trace) {
    double sum = 0.0;
    for (double p : pi) sum += p;
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

TEST(MixingTest, DisconnectedScheduleIsDiagnosed) {
  const GraphSchedule s(2, StaticRule{WithSelfLoops({}, 2)});
  EXPECT_THROW(ComputeMixingDiagnostics(s, DelaySchedule(), 40), DiagnosticError);
}

TEST(DelayScheduleTest, DefaultHasNoDelays) {
  const DelaySchedule d;
  EXPECT_EQ(d.tau_max(), 0);
  EXPECT_EQ(d.Comm(1, 0, 5), 0);
  EXPECT_EQ(d.Feedback(2, 5), 0);
}

TEST(DelayScheduleTest, UniformDrawsStayInBoundsAndSelfIsZero) {
  const DelaySchedule d = testing::UniformDelays(10, 0, 10, 3);
  std::vector<int> seen(11, 0);
  for (int t = 0; t < 500; ++t) {
    for (int i = 0; i < 5; ++i) {
      EXPECT_EQ(d.Comm(i, i, t), 0);
      const int f = d.Feedback(i, t);
      ASSERT_GE(f, 0);
      ASSERT_LE(f, 10);
      for (int j = 0; j < 5; ++j) {
        const int c = d.Comm(i, j, t);
        ASSERT_GE(c, 0);
        ASSERT_LE(c, 10);
        if (i != j) ++seen[c];
      }
    }
  }
  for (int c : seen) EXPECT_GT(c, 0);
}

TEST(DelayScheduleTest, DrawsArePureFunctionsOfSeedAndTime) {
  const DelaySchedule a = testing::UniformDelays(4, 0, 4, 9);
  const DelaySchedule b = testing::UniformDelays(4, 0, 4, 9);
  const DelaySchedule c = testing::UniformDelays(4, 0, 4, 10);
  int differ = 0;
  for (int t = 200; t >= 0; --t) {
    EXPECT_EQ(a.Comm(3, 1, t), b.Comm(3, 1, t));
    EXPECT_EQ(a.Feedback(2, t), b.Feedback(2, t));
    differ += a.Comm(3, 1, t) != c.Comm(3, 1, t);
  }
  EXPECT_GT(differ, 0);
}

TEST(DelayScheduleTest, FixedOverridesUniformOverridesBase) {
  CommDelaySpec comm;
  comm.base = 1;
  comm.fixed = {{{1, 3}, 2}};
  comm.uniform = UniformDelay{3, 3};
  comm.uniform_edges = {{0, 1}};
  const DelaySchedule d(3, comm, FeedbackDelaySpec{}, 0);
  EXPECT_EQ(d.Comm(3, 1, 0), 2);
  EXPECT_EQ(d.Comm(1, 0, 0), 3);
  EXPECT_EQ(d.Comm(2, 0, 0), 1);
}

TEST(DelayScheduleTest, OutOfBoundDelaysAreRejected) {
  CommDelaySpec comm;
  comm.fixed = {{{1, 3}, 11}};
  EXPECT_THROW(DelaySchedule(10, comm, FeedbackDelaySpec{}, 0), OutOfRangeError);
  FeedbackDelaySpec fb;
  fb.uniform = UniformDelay{0, 4};
  EXPECT_THROW(DelaySchedule(3, CommDelaySpec{}, fb, 0), OutOfRangeError);
  CommDelaySpec self;
  self.fixed = {{{2, 2}, 1}};
  EXPECT_THROW(DelaySchedule(3, self, FeedbackDelaySpec{}, 0), OutOfRangeError);
}

}  // namespace
}  // namespace dpdda::graph
