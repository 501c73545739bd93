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

#include <memory>
#include <optional>
#include <string_view>

#include "ibc/hankel.hpp"
#include "ibc/lti.hpp"
#include "ibc/predictors.hpp"
#include "ibc/signal_window.hpp"

namespace ibc {

enum class ControllerKind { cbc, unified, imc };

std::string_view to_string(ControllerKind kind);
/// Accepts "cbc", "unified", "imc".
ControllerKind parse_controller_kind(std::string_view name);

/// Storage a controller needs, in the units used to compare the two data-driven forms.
struct MemoryFootprint {
    /// Past samples that enter the data-enabled predictions (forward T_p, inverse T_p + L, unified T_p).
    int online_window_samples = 0;
    /// Every scalar of online state: windows, filter and model states.
    int online_scalars = 0;
    /// Offline input samples the predictors were built from.
    int offline_samples = 0;
};

/**
 * @brief Discrete-time feedback controller u(t) = step(r(t), y(t)).
 *
 * Instances own mutable state; step() calls on one instance must be
 * serialized. Predictors and realizations behind an instance are shared
 * read-only, so clone() is cheap.
 */
class Controller {
public:
    virtual ~Controller() = default;

    virtual double step(double r, double y) = 0;
    /// Back to the zero state (plant at rest).
    virtual void reset() = 0;
    virtual ControllerKind kind() const = 0;
    virtual MemoryFootprint memory() const = 0;
    virtual std::unique_ptr<Controller> clone() const = 0;

    /// Internal-model output used by the last step, when the structure has one.
    virtual std::optional<double> model_output() const { return std::nullopt; }
    /// Plant/model mismatch e(t) of the last step, when the structure has one.
    virtual std::optional<double> mismatch() const { return std::nullopt; }
};

/**
 * @brief Which model output the CBC loop subtracts from y(t).
 *
 * next_sample: e(t) = y(t) - yhat(t), yhat(t) being the forward prediction of
 * sample t formed at the end of the previous loop. This reproduces classical
 * IMC exactly.
 *
 * literal: e(t) = y(t) - yhat(t-1), the prediction aligned with u(t-1). For a
 * strictly proper plant this lags the measurement by one sample; it still
 * gives zero steady-state error but is not identical to IMC.
 */
enum class CbcErrorAlignment { next_sample, literal };

/**
 * @brief Component-by-component data-driven IMC.
 *
 * One loop: e = y - yhat; s1 = r - e; s2 = inverse prediction (the input L
 * samples back that explains s1); u = (z^L F) s2; then the forward predictor
 * updates yhat for the next loop.
 */
class CbcController final : public Controller {
public:
    struct Buffers {
        const VectorXd& u;    ///< u over [t-T_p, t-1]
        const VectorXd& yhat; ///< model output over [t-T_p, t-1]
        const VectorXd& s1;   ///< s1 over [t-T_p-L, t-1]
        const VectorXd& s2;   ///< last T_p inverse predictions (inputs over [t-T_p-L, t-L-1])
    };

    CbcController(std::shared_ptr<const ForwardPredictor> forward, std::shared_ptr<const InversePredictor> inverse,
                  DiscreteStateSpace advanced_filter, CbcErrorAlignment alignment = CbcErrorAlignment::next_sample);

    double step(double r, double y) override;
    void reset() override;
    ControllerKind kind() const override { return ControllerKind::cbc; }
    MemoryFootprint memory() const override;
    std::unique_ptr<Controller> clone() const override;
    std::optional<double> model_output() const override { return last_yhat_; }
    std::optional<double> mismatch() const override { return last_e_; }

    Buffers buffers() const { return {u_.values(), yhat_.values(), s1_.values(), s2_.values()}; }
    const ForwardPredictor& forward() const { return *forward_; }
    const InversePredictor& inverse() const { return *inverse_; }
    CbcErrorAlignment alignment() const { return alignment_; }

private:
    std::shared_ptr<const ForwardPredictor> forward_;
    std::shared_ptr<const InversePredictor> inverse_;
    DiscreteStateSpace filter_sys_;
    StateSpaceRunner filter_;
    CbcErrorAlignment alignment_;
    SignalWindow u_;
    SignalWindow yhat_;
    SignalWindow s1_;
    SignalWindow s2_;
    double pending_yhat_ = 0.0;
    double last_yhat_ = 0.0;
    double last_e_ = 0.0;
};

/**
 * @brief Unified data-driven IMC: one predictor for C = G^-1 F / (1 - F).
 *
 * s3 = r - y; u = F_f [E_p; F_p; E_f]^+ col(s3 past, u past, s3(t)).
 */
class UnifiedController final : public Controller {
public:
    struct Buffers {
        const VectorXd& u;  ///< u over [t-T_p, t-1]
        const VectorXd& s3; ///< s3 over [t-T_p, t-1]
    };

    explicit UnifiedController(std::shared_ptr<const ForwardPredictor> controller_predictor);

    double step(double r, double y) override;
    void reset() override;
    ControllerKind kind() const override { return ControllerKind::unified; }
    MemoryFootprint memory() const override;
    std::unique_ptr<Controller> clone() const override;

    Buffers buffers() const { return {u_.values(), s3_.values()}; }
    const ForwardPredictor& predictor() const { return *predictor_; }

private:
    std::shared_ptr<const ForwardPredictor> predictor_;
    SignalWindow u_;
    SignalWindow s3_;
};

/**
 * @brief Classical model-based IMC, used as the reference implementation.
 *
 * yhat from the internal model driven by u; e = y - yhat; u = (G^-1 F)(r - e)
 * with G^-1 F realized as one biproper system.
 */
class ImcController final : public Controller {
public:
    ImcController(DiscreteStateSpace model, DiscreteStateSpace inverse_filter);

    double step(double r, double y) override;
    void reset() override;
    ControllerKind kind() const override { return ControllerKind::imc; }
    MemoryFootprint memory() const override;
    std::unique_ptr<Controller> clone() const override;
    std::optional<double> model_output() const override { return last_yhat_; }
    std::optional<double> mismatch() const override { return last_e_; }

    const DiscreteStateSpace& model() const { return model_sys_; }
    const DiscreteStateSpace& inverse_filter() const { return inverse_sys_; }

private:
    DiscreteStateSpace model_sys_;
    DiscreteStateSpace inverse_sys_;
    StateSpaceRunner model_;
    StateSpaceRunner inverse_;
    double last_yhat_ = 0.0;
    double last_e_ = 0.0;
};

/**
 * @brief Certify forward and inverse matrices from one offline record and build a CBC controller.
 *
 * offline.y must be exactly `delay` samples longer than offline.u; the
 * forward matrix uses the first T_d output samples. Throws ConfigError for
 * depth < order and CertificationError naming the failing matrix.
 */
CbcController build_cbc(const Trajectory& offline, int depth, int order, int delay, double tau,
                        double tol = kDefaultRankTolerance,
                        CbcErrorAlignment alignment = CbcErrorAlignment::next_sample);

/// Filters the offline data, certifies the controller matrix and builds a unified controller.
UnifiedController build_unified(const Trajectory& offline, int depth, int order, int delay, double tau,
                                double tol = kDefaultRankTolerance);

/// Requires a strictly proper, minimum-phase model whose relative degree equals `delay`.
ImcController build_imc(const DiscreteStateSpace& model, int delay, double tau);

} // namespace ibc
