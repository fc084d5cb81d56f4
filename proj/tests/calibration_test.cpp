// Copyright 2026 The GeoDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <string>

#include "geodp/calibration.hpp"

namespace geodp {
namespace {

// Reference values below come from 50-digit evaluations of the closed forms.

TEST(BmEpsilonTest, Examples) {
  EXPECT_DOUBLE_EQ(BmEpsilon(0.0, 2.0, 1.0, 1.0), 0.5);
  EXPECT_NEAR(BmEpsilon(-1.0, 2.0, 0.2, 1.0), 0.0062607057099866261, 1e-17);
  // Large t approaches the floor K alpha Delta^2 / 2.
  EXPECT_NEAR(BmEpsilon(1.0, 2.0, 1.0, 40.0), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(BmPrivacyFloor(1.0, 2.0, 1.0), 1.0);
  EXPECT_EQ(BmPrivacyFloor(-1.0, 2.0, 1.0), 0.0);
}

TEST(BmEpsilonTest, StrictlyDecreasingInTime) {
  for (double K : {-1.0, 0.0, 1.0}) {
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 100; ++i) {
      const double t = 0.05 * i;
      const double eps = BmEpsilon(K, 2.0, 0.5, t);
      EXPECT_LT(eps, prev) << "K=" << K << " t=" << t;
      prev = eps;
    }
  }
}

TEST(BmEpsilonTest, ContinuousAtZeroCurvature) {
  for (double t : {0.01, 0.1, 1.0, 5.0}) {
    const double flat = 2.0 * 0.3 * 0.3 / (4.0 * t);
    for (double K : {-1e-8, 1e-8}) {
      EXPECT_LE(std::abs(BmEpsilon(K, 2.0, 0.3, t) - flat), 1e-6) << t;
    }
  }
}

TEST(BmEpsilonTest, DomainErrors) {
  EXPECT_THROW(BmEpsilon(0.0, 1.0, 1.0, 1.0), Error);
  EXPECT_THROW(BmEpsilon(0.0, 2.0, -1.0, 1.0), Error);
  EXPECT_THROW(BmEpsilon(0.0, 2.0, 1.0, 0.0), Error);
}

TEST(BmTimeForBudgetTest, Examples) {
  EXPECT_DOUBLE_EQ(BmTimeForBudget(0.0, RdpBudget::Make(2.0, 0.5), 1.0), 1.0);
  EXPECT_NEAR(BmTimeForBudget(1.0, RdpBudget::Make(2.0, 1.0), 0.5), 0.14384103622589046, 1e-16);
  EXPECT_NEAR(BmTimeForBudget(-1.0, RdpBudget::Make(2.0, 0.5), 0.49), 0.19608860689061448,
              1e-16);
}

TEST(BmTimeForBudgetTest, RoundTrip) {
  double worst = 0.0;
  for (double K : {-2.0, -1.0, -0.1, 0.0, 0.1, 1.0}) {
    for (double alpha : {1.5, 2.0, 10.0}) {
      for (double delta : {0.01, 0.1, 1.0}) {
        for (double eps : {0.01, 0.1, 1.0, 10.0}) {
          const RdpBudget b = RdpBudget::Make(alpha, eps);
          if (K > 0.0 && 2.0 * eps <= K * alpha * delta * delta) continue;
          const double t = BmTimeForBudget(K, b, delta);
          worst = std::max(worst, std::abs(BmEpsilon(K, alpha, delta, t) - eps) / eps);
        }
      }
    }
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(BmTimeForBudgetTest, BelowFloorIsInfeasible) {
  try {
    BmTimeForBudget(1.0, RdpBudget::Make(2.0, 0.5), 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasibleBudget);
    const std::string msg = e.what();
    EXPECT_NE(msg.find("= 1"), std::string::npos) << msg;
    EXPECT_NE(msg.find("Langevin"), std::string::npos) << msg;
  }
  // Exactly at the floor is infeasible too.
  EXPECT_THROW(BmTimeForBudget(1.0, RdpBudget::Make(2.0, 1.0), 1.0), Error);
  EXPECT_NO_THROW(BmTimeForBudget(1.0, RdpBudget::Make(2.0, 1.0001), 1.0));
}

TEST(LangevinTimeTest, Examples) {
  EXPECT_NEAR(LangevinTimeForBudget(1.0, 1.1, RdpBudget::Make(2.0, 0.1), 0.1),
              0.049751654265840414, 1e-16);
  EXPECT_NEAR(LangevinTimeForBudget(1.0, 1.1, RdpBudget::Make(2.0, 1.0), 0.12),
              0.0071948209712714131, 1e-17);
  EXPECT_NEAR(LangevinTimeForBudget(1.0, 1.0 + 1e-10, RdpBudget::Make(2.0, 0.5), 1.0), 1.0, 1e-9);
}

TEST(LangevinTimeTest, RoundTripAndWeakDrift) {
  for (double K : {0.0, 0.5, 1.0, 3.0}) {
    for (double gap : {1e-3, 0.1, 2.0}) {
      for (double eps : {0.01, 0.5, 4.0}) {
        const double t = LangevinTimeForBudget(K, K + gap, RdpBudget::Make(3.0, eps), 0.4);
        EXPECT_NEAR(LangevinEpsilon(K, K + gap, 3.0, 0.4, t) / eps, 1.0, 1e-12);
      }
    }
  }
  for (double lambda : {1.0, 0.5}) {
    try {
      LangevinTimeForBudget(1.0, lambda, RdpBudget::Make(2.0, 1.0), 0.1);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kDriftTooWeak);
    }
  }
}

TEST(DpToRdpTest, Examples) {
  EXPECT_EQ(DpToRdp(0.0, 3.0), 0.0);
  EXPECT_NEAR(DpToRdp(1.0, 2.0), 0.73532566405551922, 1e-15);
  EXPECT_NEAR(DpToRdp(1.0, 1e4), 1.0, 1e-3);
  EXPECT_NEAR(DpToRdp(1.0, 1e4), 0.99996867, 1e-7);
}

TEST(DpToRdpTest, BoundsAndMonotonicity) {
  for (double eps : {1e-4, 0.01, 0.3, 1.0, 5.0, 50.0}) {
    double prev = 0.0;
    for (double alpha : {1.01, 1.5, 2.0, 5.0, 20.0, 1000.0}) {
      const double v = DpToRdp(eps, alpha);
      EXPECT_GT(v, 0.0);
      // Strict in exact arithmetic; at eps = 50 the gap is below one ulp.
      EXPECT_LE(v, eps);
      if (eps <= 5.0) {
        EXPECT_LT(v, eps);
      }
      EXPECT_GE(v, prev);
      prev = v;
    }
  }
  for (double alpha : {1.5, 10.0}) {
    double prev = 0.0;
    for (double eps : {0.01, 0.1, 1.0, 10.0}) {
      EXPECT_GE(DpToRdp(eps, alpha), prev);
      prev = DpToRdp(eps, alpha);
    }
  }
}

TEST(DpToRdpTest, NoOverflowForLargeProducts) {
  const double v = DpToRdp(10.0, 100.0);
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_NEAR(v, 10.0 - std::log1p(std::exp(-10.0)) / 99.0, 1e-12);
  EXPECT_TRUE(std::isfinite(DpToRdp(800.0, 2.0)));
}

TEST(RdpToDpTest, InverseExamples) {
  EXPECT_NEAR(RdpToDpBudget(RdpBudget::Make(2.0, 0.73532566405551922)), 1.0, 1e-10);
  // Small eps*: the RDP curve is alpha eps*^2 / 2 to leading order.
  EXPECT_NEAR(RdpToDpBudget(RdpBudget::Make(2.0, 1e-9)), std::sqrt(1e-9), 1e-9);
  for (double eps : {0.01, 0.5, 2.0, 30.0}) {
    for (double alpha : {1.5, 2.0, 10.0, 100.0}) {
      const RdpBudget b = RdpBudget::Make(alpha, eps);
      const double star = RdpToDpBudget(b);
      EXPECT_GE(star, eps);
      EXPECT_NEAR(DpToRdp(star, alpha), eps, 1e-10);
    }
  }
}

TEST(UtilityBoundTest, Bm) {
  EXPECT_DOUBLE_EQ(BmUtilityBound(2, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(BmUtilityBound(2, 0.5), std::sqrt(2.0));
}

TEST(UtilityBoundTest, Langevin) {
  EXPECT_NEAR(LangevinUtilityBound(2, 1.0, 1.1, 0.0, 1e9), 2.1125363706585910, 1e-15);
  EXPECT_EQ(LangevinUtilityBound(2, 1.0, 1.1, 0.0, 0.0), 0.0);
  double prev = 0.0;
  for (double t : {1e-6, 0.1, 1.0, 5.0}) {
    const double v = LangevinUtilityBound(3, 2.0, 2.5, 0.7, t);
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(RateTest, RiemannianLaplace) {
  EXPECT_DOUBLE_EQ(RlRate(1.0, 2.0), 0.5);
  EXPECT_DOUBLE_EQ(RlRate(1.0, 2.0, false), 1.0);
  EXPECT_EQ(RlRate(0.0, 2.0), 0.0);
  EXPECT_THROW(RlRate(1.0, 0.0), Error);
}

TEST(RateTest, ExponentialWrappedGaussian) {
  EXPECT_DOUBLE_EQ(EwgRate(1.0, RdpBudget::Make(2.0, 1.0)), 1.0);
  EXPECT_NEAR(EwgRate(1.0, RdpBudget::Make(2.0, 2.0)), 0.70710678118654752, 1e-16);
  EXPECT_EQ(EwgRate(0.0, RdpBudget::Make(2.0, 2.0)), 0.0);
}

TEST(RdpBudgetTest, Validation) {
  EXPECT_THROW(RdpBudget::Make(1.0, 1.0), Error);
  EXPECT_THROW(RdpBudget::Make(2.0, 0.0), Error);
  EXPECT_NO_THROW(RdpBudget::Make(1.0001, 1e-6));
}

}  // namespace
}  // namespace geodp
