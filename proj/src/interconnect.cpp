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
#include "ibc/interconnect.hpp"

#include <cmath>
#include <sstream>

#include "ibc/errors.hpp"

namespace ibc {

namespace {

ForwardPredictor certified_predictor(const Trajectory& data, int depth, int order, double tol)
{
    if (order < 0) {
        throw ConfigError("system order must be non-negative");
    }
    if (depth < order) {
        throw ConfigError("past depth T_p = " + std::to_string(depth) + " is below the system order " +
                          std::to_string(order));
    }
    ForwardDataMatrix h = build_forward(data.forward_slice(), depth);
    h.certify(order, tol);
    h.require_certified(data.label.empty() ? "regeneration" : data.label);
    return ForwardPredictor(h);
}

std::string name_of(const Trajectory& w, const char* fallback)
{
    return w.label.empty() ? fallback : w.label;
}

Trajectory equal_length(const Trajectory& w)
{
    return w.forward_slice();
}

} // namespace

RegenerationContext::RegenerationContext(const Trajectory& data, int depth, int order, double tol)
    : predictor_(certified_predictor(data, depth, order, tol))
{
}

RegenerationContext::RegenerationContext(ForwardPredictor predictor) : predictor_(std::move(predictor)) {}

VectorXd RegenerationContext::regenerate(const VectorXd& u_star) const
{
    const Eigen::Index tp = depth();
    const Eigen::Index n = u_star.size();
    VectorXd u_mod = VectorXd::Zero(tp + n);
    VectorXd y_mod = VectorXd::Zero(tp + n);
    u_mod.tail(n) = u_star;
    for (Eigen::Index t = tp; t < tp + n; ++t) {
        y_mod(t) = predictor_.predict(u_mod.segment(t - tp, tp), u_mod(t), y_mod.segment(t - tp, tp));
        if (!std::isfinite(y_mod(t))) {
            throw NumericalError("regenerated output is not finite", static_cast<std::size_t>(t - tp));
        }
    }
    return y_mod.tail(n);
}

Trajectory zero_ic_trajectory(const Trajectory& traj, int depth, int order, double tol)
{
    const Trajectory fwd = traj.forward_slice();
    RegenerationContext ctx(fwd, depth, order, tol);
    return {fwd.u, ctx.regenerate(fwd.u), fwd.ts, traj.label.empty() ? "zero-ic" : traj.label + " (zero-ic)"};
}

std::string_view to_string(InterconnectionKind kind)
{
    switch (kind) {
    case InterconnectionKind::series: return "series";
    case InterconnectionKind::positive_feedback: return "positive_feedback";
    case InterconnectionKind::negative_feedback: return "negative_feedback";
    case InterconnectionKind::parallel: return "parallel";
    case InterconnectionKind::controller: return "controller";
    }
    return "unknown";
}

Trajectory InterconnectionTrajectory::trajectory(double ts) const
{
    return {u, y, ts, std::string(to_string(kind))};
}

InterconnectionTrajectory series(const Trajectory& w1, const Trajectory& w2, int depth, int order2, double tol)
{
    const Trajectory a = equal_length(w1);
    const RegenerationContext ctx(w2, depth, order2, tol);
    return {a.u, ctx.regenerate(a.y), InterconnectionKind::series, {name_of(w1, "w1"), name_of(w2, "w2")}};
}

InterconnectionTrajectory feedback(const Trajectory& w1, const Trajectory& w2, int depth, int order2, double tol)
{
    const Trajectory a = equal_length(w1);
    const RegenerationContext ctx(w2, depth, order2, tol);
    const VectorXd y2 = ctx.regenerate(a.y);
    return {a.u - y2, a.y, InterconnectionKind::positive_feedback, {name_of(w1, "w1"), name_of(w2, "w2")}};
}

InterconnectionTrajectory negative_feedback(const Trajectory& w1, const Trajectory& w2, int depth, int order2,
                                            double tol)
{
    const Trajectory a = equal_length(w1);
    const RegenerationContext ctx(w2, depth, order2, tol);
    const VectorXd y2 = ctx.regenerate(a.y);
    return {a.u + y2, a.y, InterconnectionKind::negative_feedback, {name_of(w1, "w1"), name_of(w2, "w2")}};
}

InterconnectionTrajectory parallel(const Trajectory& w1, const Trajectory& w2, int depth, int order2, double tol)
{
    const Trajectory a = equal_length(w1);
    const RegenerationContext ctx(w2, depth, order2, tol);
    return {a.u, a.y + ctx.regenerate(a.u), InterconnectionKind::parallel, {name_of(w1, "w1"), name_of(w2, "w2")}};
}

InterconnectionTrajectory unified_controller_trajectory(const VectorXd& u_d, const VectorXd& y_d,
                                                        const ImcFilter& filter)
{
    if (u_d.size() != y_d.size()) {
        throw ConfigError("controller trajectory needs equal-length plant input and output");
    }
    const VectorXd ybar = filter_signal(filter.realization, y_d);
    const VectorXd ubar = filter_signal(filter.realization, u_d);
    std::ostringstream f;
    f << "F(tau=" << filter.tau << ", L=" << filter.order << ")";
    return {y_d - ybar, ubar, InterconnectionKind::controller, {"plant data", f.str()}};
}

} // namespace ibc
