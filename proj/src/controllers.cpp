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
#include "ibc/controllers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ibc/errors.hpp"
#include "ibc/interconnect.hpp"

namespace ibc {

std::string_view to_string(ControllerKind kind)
{
    switch (kind) {
    case ControllerKind::cbc: return "cbc";
    case ControllerKind::unified: return "unified";
    case ControllerKind::imc: return "imc";
    }
    return "unknown";
}

ControllerKind parse_controller_kind(std::string_view name)
{
    if (name == "cbc") return ControllerKind::cbc;
    if (name == "unified") return ControllerKind::unified;
    if (name == "imc") return ControllerKind::imc;
    throw ConfigError("unknown controller '" + std::string(name) + "' (expected cbc, unified or imc)");
}

// ---------------------------------------------------------------------------
// CBC

CbcController::CbcController(std::shared_ptr<const ForwardPredictor> forward,
                             std::shared_ptr<const InversePredictor> inverse, DiscreteStateSpace advanced_filter,
                             CbcErrorAlignment alignment)
    : forward_(std::move(forward)),
      inverse_(std::move(inverse)),
      filter_sys_(std::move(advanced_filter)),
      filter_(filter_sys_),
      alignment_(alignment),
      u_(forward_->depth()),
      yhat_(forward_->depth()),
      s1_(inverse_->depth() + inverse_->delay()),
      s2_(inverse_->depth())
{
}

double CbcController::step(double r, double y)
{
    const int tp = inverse_->depth();
    const int l = inverse_->delay();

    const double e = y - pending_yhat_;
    const double s1 = r - e;

    VectorXd s1_future(l + 1);
    s1_future << s1_.values().tail(l), s1;
    const double s2 = inverse_->predict(s2_.values(), s1_.values().head(tp), s1_future);
    const double u = filter_.step(s2);

    last_yhat_ = pending_yhat_;
    last_e_ = e;
    s1_.push(s1);
    s2_.push(s2);

    if (alignment_ == CbcErrorAlignment::literal) {
        // yhat aligned with u(t); consumed by the next loop as yhat(t-1).
        const double yhat_t = forward_->predict(u_.values(), u, yhat_.values());
        u_.push(u);
        yhat_.push(yhat_t);
        pending_yhat_ = yhat_t;
    } else {
        // Model output for sample t+1. u(t+1) is not known yet; with L >= 1
        // the prediction does not depend on it, so the held u(t) fills the slot.
        u_.push(u);
        yhat_.push(pending_yhat_);
        pending_yhat_ = forward_->predict(u_.values(), u, yhat_.values());
    }
    return u;
}

void CbcController::reset()
{
    filter_.reset();
    u_.clear();
    yhat_.clear();
    s1_.clear();
    s2_.clear();
    pending_yhat_ = 0.0;
    last_yhat_ = 0.0;
    last_e_ = 0.0;
}

MemoryFootprint CbcController::memory() const
{
    const auto windows = static_cast<int>(u_.size() + yhat_.size() + s1_.size() + s2_.size());
    return {forward_->depth() + static_cast<int>(s1_.size()), windows + filter_sys_.order() + 1,
            static_cast<int>(forward_->data().columns()) + forward_->depth()};
}

std::unique_ptr<Controller> CbcController::clone() const
{
    return std::make_unique<CbcController>(forward_, inverse_, filter_sys_, alignment_);
}

// ---------------------------------------------------------------------------
// Unified

UnifiedController::UnifiedController(std::shared_ptr<const ForwardPredictor> controller_predictor)
    : predictor_(std::move(controller_predictor)), u_(predictor_->depth()), s3_(predictor_->depth())
{
}

double UnifiedController::step(double r, double y)
{
    const double s3 = r - y;
    const double u = predictor_->predict(s3_.values(), s3, u_.values());
    s3_.push(s3);
    u_.push(u);
    return u;
}

void UnifiedController::reset()
{
    u_.clear();
    s3_.clear();
}

MemoryFootprint UnifiedController::memory() const
{
    return {predictor_->depth(), static_cast<int>(u_.size() + s3_.size()),
            static_cast<int>(predictor_->data().columns()) + predictor_->depth()};
}

std::unique_ptr<Controller> UnifiedController::clone() const
{
    return std::make_unique<UnifiedController>(predictor_);
}

// ---------------------------------------------------------------------------
// IMC

ImcController::ImcController(DiscreteStateSpace model, DiscreteStateSpace inverse_filter)
    : model_sys_(std::move(model)), inverse_sys_(std::move(inverse_filter)), model_(model_sys_), inverse_(inverse_sys_)
{
    if (model_sys_.feedthrough() != 0.0) {
        throw ConfigError("IMC model must be strictly proper");
    }
}

double ImcController::step(double r, double y)
{
    const double yhat = model_.output(0.0);
    const double e = y - yhat;
    const double u = inverse_.step(r - e);
    model_.advance(u);
    last_yhat_ = yhat;
    last_e_ = e;
    return u;
}

void ImcController::reset()
{
    model_.reset();
    inverse_.reset();
    last_yhat_ = 0.0;
    last_e_ = 0.0;
}

MemoryFootprint ImcController::memory() const
{
    return {0, model_sys_.order() + inverse_sys_.order(), 0};
}

std::unique_ptr<Controller> ImcController::clone() const
{
    return std::make_unique<ImcController>(model_sys_, inverse_sys_);
}

// ---------------------------------------------------------------------------
// Builders

namespace {

void check_common(int depth, int order, int delay)
{
    if (order < 1) {
        throw ConfigError("plant order n must be at least 1");
    }
    if (depth < order) {
        throw ConfigError("past depth T_p = " + std::to_string(depth) + " must be at least the plant order n = " +
                          std::to_string(order));
    }
    if (delay < 1) {
        throw ConfigError("L-delay must be at least 1 (strictly proper plant)");
    }
}

} // namespace

CbcController build_cbc(const Trajectory& offline, int depth, int order, int delay, double tau, double tol,
                        CbcErrorAlignment alignment)
{
    check_common(depth, order, delay);
    if (offline.y.size() != offline.u.size() + delay) {
        throw ConfigError("CBC offline data needs y exactly L = " + std::to_string(delay) +
                          " samples longer than u, got " + std::to_string(offline.u.size()) + " and " +
                          std::to_string(offline.y.size()));
    }
    ForwardDataMatrix fwd = build_forward(offline.forward_slice(), depth);
    fwd.certify(order, tol);
    fwd.require_certified("forward");
    InverseDataMatrix inv = build_inverse(offline, depth, delay);
    inv.certify(order, tol);
    inv.require_certified("inverse");
    return CbcController(std::make_shared<const ForwardPredictor>(fwd), std::make_shared<const InversePredictor>(inv),
                         make_advanced_filter(tau, offline.ts, delay), alignment);
}

UnifiedController build_unified(const Trajectory& offline, int depth, int order, int delay, double tau, double tol)
{
    check_common(depth, order, delay);
    const Trajectory data = offline.forward_slice();
    const ImcFilter filter = make_imc_filter(tau, data.ts, delay);
    const InterconnectionTrajectory wc = unified_controller_trajectory(data.u, data.y, filter);
    ControllerDataMatrix hc = build_controller_matrix(wc.u, wc.y, depth);
    hc.certify(order, tol);
    hc.blocks.require_certified("controller");
    return UnifiedController(std::make_shared<const ForwardPredictor>(hc.blocks));
}

ImcController build_imc(const DiscreteStateSpace& model, int delay, double tau)
{
    if (model.feedthrough() != 0.0) {
        throw ConfigError("IMC model must be strictly proper");
    }
    if (!model.is_stable()) {
        throw ConfigError("IMC model must be open-loop stable");
    }
    const int n = model.order();
    const int rd = model.relative_degree();
    if (rd != delay) {
        throw ConfigError("model relative degree " + std::to_string(rd) + " differs from L-delay " +
                          std::to_string(delay) + "; the filtered inverse would be improper");
    }
    const TransferFunction g = transfer_function(model);
    // Numerator of exact degree n - L.
    std::vector<double> num(static_cast<std::size_t>(n) + 1, 0.0);
    std::copy(g.num().begin(), g.num().end(), num.end() - static_cast<std::ptrdiff_t>(g.num().size()));
    num.erase(num.begin(), num.begin() + delay);
    for (const auto& zero : poly_roots(num)) {
        if (std::abs(zero) >= 1.0) {
            throw ConfigError("model is not minimum-phase (zero at |z| = " + std::to_string(std::abs(zero)) + ")");
        }
    }
    const ImcFilter filter = make_imc_filter(tau, model.ts(), delay);
    const TransferFunction q(g.den(), poly_multiply(num, filter.tf.den()));
    return ImcController(model, realize_discrete(q, model.ts()));
}

} // namespace ibc
