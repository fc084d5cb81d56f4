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


// Releases the Frechet mean of a small synthetic dataset on S^2 with the BM
// mechanism, then the same request on H^2 with the Langevin mechanism.

#include <iostream>
#include <numbers>

#include "geodp/frechet.hpp"
#include "geodp/manifold.hpp"
#include "geodp/release.hpp"
#include "geodp/rng.hpp"

namespace {

void Print(const char* label, const geodp::ReleaseRecord& rec) {
  std::cout << label << ": mechanism " << geodp::MechanismName(rec.mechanism) << ", Delta "
            << rec.delta_used << ", t " << rec.t_used << ", steps " << rec.n_step
            << "\n  released point " << rec.private_point.coords().transpose() << '\n';
  if (rec.utility_bound) std::cout << "  E[distance] <= " << *rec.utility_bound << '\n';
}

}  // namespace

int main() {
  try {
    geodp::Rng data_rng({42, 0});

    const auto sphere = geodp::ManifoldSpec::Sphere(2);
    const auto north = geodp::ManifoldPoint::Origin(sphere);
    const double r = std::numbers::pi / 5.0;
    const auto data = geodp::SampleUniformDataset(north, r, 10, data_rng);
    geodp::ReleaseRequest req{data, 2.0, geodp::RdpBudget::Make(2.0, 0.5)};
    Print("S^2", geodp::PrivatePMean(req, {7, 0}));

    const auto hyp = geodp::ManifoldSpec::Hyperboloid(2);
    const auto o = geodp::ManifoldPoint::Origin(hyp);
    const auto hdata = geodp::SampleUniformDataset(o, 1.0, 50, data_rng);
    geodp::ReleaseRequest hreq{hdata, 2.0, geodp::RdpBudget::Make(2.0, 1.0)};
    hreq.mechanism = geodp::ReleaseMechanism::kLangevin;
    hreq.langevin = geodp::LangevinOptions{1.1, o, "origin"};
    Print("H^2", geodp::PrivatePMean(hreq, {7, 1}));
  } catch (const geodp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
