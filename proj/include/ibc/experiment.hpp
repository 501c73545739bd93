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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ibc/controllers.hpp"
#include "ibc/hankel.hpp"
#include "ibc/lti.hpp"

namespace ibc {

/// Piecewise-constant signal: level of the latest step whose time has been reached, 0 before the first.
struct StepSchedule {
    std::vector<std::pair<double, double>> steps; // (time in s, level)

    /// "time:level; time:level". Empty text gives the zero signal.
    static StepSchedule parse(std::string_view text);

    /// Level at sample k on the grid t = k ts. A step at time T is active from sample ceil(T / ts).
    double level_at(std::size_t k, double ts) const;

    std::string to_text() const;
};

/**
 * @brief Everything needed to reproduce one closed-loop experiment.
 *
 * Text form is `key = value` lines; keys are plant.num, plant.den, ts, n,
 * l_delay, tp, td, tau, duration, ref.steps, dist.steps, seed, rank_tol and
 * controllers. `td` is either one integer or per-controller `cbc:8; unified:7`.
 */
struct ExperimentConfig {
    TransferFunction plant{{10.0, 10.0}, {1.0, 6.0, 8.0}};
    /// Plant that produces the offline data and the IMC model; the closed-loop plant when unset.
    std::optional<TransferFunction> data_plant;
    double ts = 0.01;
    int order = 2;
    int delay = 1;
    int depth = 2;
    int data_length = 8;
    std::map<ControllerKind, int> data_length_by_controller;
    double tau = 0.5;
    double duration = 25.0;
    StepSchedule reference;
    StepSchedule disturbance;
    std::uint64_t seed = 1;
    double rank_tol = kDefaultRankTolerance;
    std::vector<ControllerKind> controllers{ControllerKind::cbc, ControllerKind::unified, ControllerKind::imc};

    int data_length_for(ControllerKind kind) const;
    std::size_t samples() const;
    /// Throws ConfigError on an inconsistent configuration.
    void validate() const;
};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);
/// Canonical text form; parse_config(to_text(c)) reproduces c.
std::string to_text(const ExperimentConfig& cfg);

DiscreteStateSpace discretize(const TransferFunction& plant, double ts);

/// Uniform [-1, 1) draw from a 64-bit Mersenne twister, identical on every platform.
VectorXd uniform_input(std::size_t length, std::uint64_t seed);

/**
 * @brief Offline experiment from rest with a seeded random input.
 *
 * Returns u of length td and y of length td + delay (inverse-ready); the
 * extra outputs do not depend on inputs past td because of the L-delay.
 */
Trajectory collect_offline(const DiscreteStateSpace& plant, int td, int delay, std::uint64_t seed);

/// Builds the controller named by kind from the config (collecting its own offline data).
std::unique_ptr<Controller> make_controller(const ExperimentConfig& cfg, ControllerKind kind);

struct SimRecord {
    double t;
    double r;
    double d;
    double u;
    double y;
    std::optional<double> yhat;
    std::optional<double> e;
};

struct SimLog {
    ControllerKind controller;
    double ts;
    std::vector<SimRecord> records;

    bool has_model_signals() const { return !records.empty() && records.front().yhat.has_value(); }
};

/// Header `t,r,d,u,y`, plus `yhat,e` when the controller has an internal model.
void write_simlog_csv(std::ostream& os, const SimLog& log);
void write_simlog_csv(const std::filesystem::path& path, const SimLog& log);

/**
 * @brief Closed loop from rest: y(t) = plant output, u(t) = controller(r(t), y(t)),
 * then the plant state advances with u(t) + d(t).
 *
 * Throws NumericalError with the step index if a signal becomes non-finite.
 */
SimLog run_closed_loop(const ExperimentConfig& cfg, Controller& controller);
SimLog run_closed_loop(const ExperimentConfig& cfg, ControllerKind kind);

struct ControllerRun {
    ControllerKind kind;
    SimLog log;
    double steady_state_error;
    double seconds_per_step;
    MemoryFootprint memory;
};

struct PairwiseDeviation {
    std::size_t a;
    std::size_t b;
    double max_du;
    double rms_du;
    double max_dy;
    double rms_dy;
};

struct ComparisonReport {
    std::vector<ControllerRun> runs;
    std::vector<PairwiseDeviation> deviations;

    double max_deviation() const;
    void print(std::ostream& os) const;
};

/// Runs every configured controller on the same schedules and compares them pairwise.
ComparisonReport compare_controllers(const ExperimentConfig& cfg);

} // namespace ibc
