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

#include <string>
#include <string_view>
#include <vector>

#include "ibc/hankel.hpp"
#include "ibc/lti.hpp"
#include "ibc/predictors.hpp"

namespace ibc {

/**
 * @brief Offline data of one system, certified for zero-IC regeneration.
 *
 * regenerate(u*) pads u* with depth zeros, then rolls the forward predictor
 * forward using its own outputs as history. The result is the system's
 * response to u* from rest, obtained from data alone.
 */
class RegenerationContext {
public:
    /// Builds and certifies the forward matrix at rank depth + 1 + order; throws CertificationError.
    RegenerationContext(const Trajectory& data, int depth, int order, double tol = kDefaultRankTolerance);
    explicit RegenerationContext(ForwardPredictor predictor);

    VectorXd regenerate(const VectorXd& u_star) const;

    const ForwardPredictor& predictor() const { return predictor_; }
    int depth() const { return predictor_.depth(); }

private:
    ForwardPredictor predictor_;
};

inline VectorXd regenerate(const RegenerationContext& ctx, const VectorXd& u_star)
{
    return ctx.regenerate(u_star);
}

/// Same inputs, outputs re-rolled from rest. Equals traj when traj was recorded from rest.
Trajectory zero_ic_trajectory(const Trajectory& traj, int depth, int order, double tol = kDefaultRankTolerance);

enum class InterconnectionKind { series, positive_feedback, negative_feedback, parallel, controller };

std::string_view to_string(InterconnectionKind kind);

/**
 * @brief Input/output data of an interconnected system.
 *
 * Not certified: a caller that wants to predict with it must build and
 * certify its data matrix against the interconnection's own order.
 */
struct InterconnectionTrajectory {
    VectorXd u;
    VectorXd y;
    InterconnectionKind kind;
    std::vector<std::string> provenance;

    Trajectory trajectory(double ts) const;
};

/// col(u1, Z(y1; w2)): G1 replays w1, G2 starts from rest. Only w2 must be certified.
InterconnectionTrajectory series(const Trajectory& w1, const Trajectory& w2, int depth, int order2,
                                 double tol = kDefaultRankTolerance);

/// col(u1 - Z(y1; w2), y1): positive feedback of G2 around G1.
InterconnectionTrajectory feedback(const Trajectory& w1, const Trajectory& w2, int depth, int order2,
                                   double tol = kDefaultRankTolerance);

/// col(u1 + Z(y1; w2), y1): negative feedback of G2 around G1.
InterconnectionTrajectory negative_feedback(const Trajectory& w1, const Trajectory& w2, int depth, int order2,
                                            double tol = kDefaultRankTolerance);

/// col(u1, y1 + Z(u1; w2)): G1 and G2 driven by the same input, outputs summed.
InterconnectionTrajectory parallel(const Trajectory& w1, const Trajectory& w2, int depth, int order2,
                                   double tol = kDefaultRankTolerance);

/**
 * @brief Trajectory of the single-block IMC controller C = G^-1 F / (1 - F).
 *
 * With ybar = F y_d and ubar = F u_d (zero-IC filtering), returns
 * col(y_d - ybar, ubar). Plant data must start from rest.
 */
InterconnectionTrajectory unified_controller_trajectory(const VectorXd& u_d, const VectorXd& y_d,
                                                        const ImcFilter& filter);

} // namespace ibc
