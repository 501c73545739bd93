/*
 Copyright 2026 The behavioral-ibc Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#pragma once

#include <random>

#include "ibc/experiment.hpp"
#include "ibc/lti.hpp"
#include "oracles.hpp"

namespace fixture {

inline const oracle::Poly kPlantNum{10.0, 10.0};
inline const oracle::Poly kPlantDen{1.0, 6.0, 8.0};
inline constexpr double kTs = 0.01;

inline ibc::TransferFunction plant_tf()
{
    return {kPlantNum, kPlantDen};
}

inline ibc::DiscreteStateSpace plant()
{
    return ibc::zoh_discretize(ibc::realize(plant_tf()), kTs);
}

/// The same plant from the partial-fraction ZOH formula; shares no code with the library.
inline oracle::DiscreteTf plant_oracle()
{
    return oracle::zoh_partial_fractions(kPlantNum, kPlantDen, {-2.0, -4.0}, kTs);
}

/// Equal-length record from rest with a seeded uniform input.
inline ibc::Trajectory record(const ibc::DiscreteStateSpace& sys, int length, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const Eigen::VectorXd u = oracle::uniform(rng, length);
    return {u, ibc::simulate(sys, u), sys.ts(), "fixture"};
}

/// Discrete transfer function (z^-1 form) as a library state-space model.
inline ibc::DiscreteStateSpace to_state_space(const oracle::DiscreteTf& g, double ts = 1.0)
{
    // b(z^-1)/a(z^-1) = (b0 z^n + ... + bn) / (a0 z^n + ... + an) after padding to equal length
    std::vector<double> b = g.b;
    std::vector<double> a = g.a;
    const std::size_t n = std::max(a.size(), b.size());
    b.resize(n, 0.0);
    a.resize(n, 0.0);
    return ibc::realize_discrete(ibc::TransferFunction(b, a), ts);
}

} // namespace fixture
