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
#include "ibc/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "ibc/errors.hpp"

namespace ibc {

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, std::string_view separators)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto end = s.find_first_of(separators, start);
        const std::string item = trim(s.substr(start, end == std::string_view::npos ? s.npos : end - start));
        if (!item.empty()) out.push_back(item);
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return out;
}

double to_double(const std::string& s, std::string_view key)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size() || !std::isfinite(v)) {
        throw ConfigError("config key '" + std::string(key) + "': '" + s + "' is not a number");
    }
    return v;
}

long long to_integer(const std::string& s, std::string_view key)
{
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) {
        throw ConfigError("config key '" + std::string(key) + "': '" + s + "' is not an integer");
    }
    return v;
}

int to_int(const std::string& s, std::string_view key)
{
    return static_cast<int>(to_integer(s, key));
}

std::vector<double> to_coefficients(const std::string& s, std::string_view key)
{
    std::vector<double> out;
    for (const auto& item : split(s, ", \t")) {
        out.push_back(to_double(item, key));
    }
    if (out.empty()) {
        throw ConfigError("config key '" + std::string(key) + "' needs at least one coefficient");
    }
    return out;
}

std::string join_coefficients(const std::vector<double>& c)
{
    std::string out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out += ", ";
        out += format_double(c[i]);
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// StepSchedule

StepSchedule StepSchedule::parse(std::string_view text)
{
    StepSchedule s;
    for (const auto& item : split(text, ";")) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            throw ConfigError("schedule entry '" + item + "' must be time:level");
        }
        s.steps.emplace_back(to_double(trim(item.substr(0, colon)), "schedule"),
                             to_double(trim(item.substr(colon + 1)), "schedule"));
    }
    return s;
}

double StepSchedule::level_at(std::size_t k, double ts) const
{
    double level = 0.0;
    for (const auto& [time, value] : steps) {
        const auto start = static_cast<std::size_t>(std::max(0.0, std::ceil(time / ts - 1e-9)));
        if (k >= start) level = value;
    }
    return level;
}

std::string StepSchedule::to_text() const
{
    std::string out;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (i) out += "; ";
        out += format_double(steps[i].first) + ":" + format_double(steps[i].second);
    }
    return out;
}

// ---------------------------------------------------------------------------
// ExperimentConfig

int ExperimentConfig::data_length_for(ControllerKind kind) const
{
    const auto it = data_length_by_controller.find(kind);
    return it == data_length_by_controller.end() ? data_length : it->second;
}

std::size_t ExperimentConfig::samples() const
{
    return static_cast<std::size_t>(std::llround(duration / ts));
}

void ExperimentConfig::validate() const
{
    if (!(ts > 0.0)) throw ConfigError("ts must be positive");
    if (order < 1) throw ConfigError("n must be at least 1");
    if (delay < 1) throw ConfigError("l_delay must be at least 1");
    if (depth < order) throw ConfigError("tp must be at least n");
    if (!(tau > ts / 2.0)) throw ConfigError("tau must exceed ts/2 for a stable filter");
    if (!(duration > 0.0) || samples() == 0) throw ConfigError("duration must cover at least one sample");
    if (!(rank_tol > 0.0 && rank_tol < 1.0)) throw ConfigError("rank_tol must lie in (0, 1)");
    if (controllers.empty()) throw ConfigError("controllers must name at least one controller");
    for (const auto* sched : {&reference, &disturbance}) {
        if (!std::is_sorted(sched->steps.begin(), sched->steps.end(),
                            [](const auto& a, const auto& b) { return a.first < b.first; })) {
            throw ConfigError("schedule steps must be sorted by time");
        }
    }
    for (ControllerKind kind : controllers) {
        if (kind != ControllerKind::imc && data_length_for(kind) < depth + 1) {
            throw ConfigError("td for " + std::string(to_string(kind)) + " is shorter than tp + 1");
        }
    }
}

ExperimentConfig parse_config(std::string_view text)
{
    ExperimentConfig cfg;
    std::vector<double> num = cfg.plant.num();
    std::vector<double> den = cfg.plant.den();
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string content = trim(line);
        if (content.empty()) continue;
        const auto eq = content.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(content.substr(0, eq));
        const std::string value = trim(content.substr(eq + 1));
        if (key == "plant.num") {
            num = to_coefficients(value, key);
        } else if (key == "plant.den") {
            den = to_coefficients(value, key);
        } else if (key == "ts") {
            cfg.ts = to_double(value, key);
        } else if (key == "n") {
            cfg.order = to_int(value, key);
        } else if (key == "l_delay") {
            cfg.delay = to_int(value, key);
        } else if (key == "tp") {
            cfg.depth = to_int(value, key);
        } else if (key == "td") {
            cfg.data_length_by_controller.clear();
            if (value.find(':') == std::string::npos) {
                cfg.data_length = to_int(value, key);
            } else {
                for (const auto& item : split(value, ";")) {
                    const auto colon = item.find(':');
                    if (colon == std::string::npos) {
                        throw ConfigError("config key 'td': entry '" + item + "' must be controller:length");
                    }
                    const int len = to_int(trim(item.substr(colon + 1)), key);
                    cfg.data_length_by_controller[parse_controller_kind(trim(item.substr(0, colon)))] = len;
                    cfg.data_length = std::max(cfg.data_length, len);
                }
            }
        } else if (key == "tau") {
            cfg.tau = to_double(value, key);
        } else if (key == "duration") {
            cfg.duration = to_double(value, key);
        } else if (key == "ref.steps") {
            cfg.reference = StepSchedule::parse(value);
        } else if (key == "dist.steps") {
            cfg.disturbance = StepSchedule::parse(value);
        } else if (key == "seed") {
            const long long s = to_integer(value, key);
            if (s < 0) throw ConfigError("seed must be non-negative");
            cfg.seed = static_cast<std::uint64_t>(s);
        } else if (key == "rank_tol") {
            cfg.rank_tol = to_double(value, key);
        } else if (key == "controllers") {
            cfg.controllers.clear();
            for (const auto& name : split(value, ",; \t")) {
                cfg.controllers.push_back(parse_controller_kind(name));
            }
        } else {
            throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    cfg.plant = TransferFunction(num, den);
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open config " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string to_text(const ExperimentConfig& cfg)
{
    std::ostringstream os;
    os << "plant.num = " << join_coefficients(cfg.plant.num()) << '\n';
    os << "plant.den = " << join_coefficients(cfg.plant.den()) << '\n';
    os << "ts = " << format_double(cfg.ts) << '\n';
    os << "n = " << cfg.order << '\n';
    os << "l_delay = " << cfg.delay << '\n';
    os << "tp = " << cfg.depth << '\n';
    os << "td = ";
    if (cfg.data_length_by_controller.empty()) {
        os << cfg.data_length;
    } else {
        bool first = true;
        for (const auto& [kind, len] : cfg.data_length_by_controller) {
            os << (first ? "" : "; ") << to_string(kind) << ':' << len;
            first = false;
        }
    }
    os << '\n';
    os << "tau = " << format_double(cfg.tau) << '\n';
    os << "duration = " << format_double(cfg.duration) << '\n';
    os << "ref.steps = " << cfg.reference.to_text() << '\n';
    os << "dist.steps = " << cfg.disturbance.to_text() << '\n';
    os << "seed = " << cfg.seed << '\n';
    os << "rank_tol = " << format_double(cfg.rank_tol) << '\n';
    os << "controllers = ";
    for (std::size_t i = 0; i < cfg.controllers.size(); ++i) {
        os << (i ? ", " : "") << to_string(cfg.controllers[i]);
    }
    os << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// Data collection and closed loop

DiscreteStateSpace discretize(const TransferFunction& plant, double ts)
{
    return zoh_discretize(realize(plant), ts);
}

VectorXd uniform_input(std::size_t length, std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    VectorXd u(static_cast<Eigen::Index>(length));
    for (Eigen::Index k = 0; k < u.size(); ++k) {
        // 53 random mantissa bits; std::uniform_real_distribution is implementation-defined.
        const double unit = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        u(k) = 2.0 * unit - 1.0;
    }
    return u;
}

Trajectory collect_offline(const DiscreteStateSpace& plant, int td, int delay, std::uint64_t seed)
{
    if (td < 1) throw ConfigError("td must be at least 1");
    if (delay < 0) throw ConfigError("L-delay must be non-negative");
    const VectorXd u = uniform_input(static_cast<std::size_t>(td), seed);
    VectorXd padded = VectorXd::Zero(td + delay);
    padded.head(td) = u;
    return {u, simulate(plant, padded), plant.ts(), "offline(seed=" + std::to_string(seed) + ")"};
}

std::unique_ptr<Controller> make_controller(const ExperimentConfig& cfg, ControllerKind kind)
{
    cfg.validate();
    const DiscreteStateSpace data_plant = discretize(cfg.data_plant.value_or(cfg.plant), cfg.ts);
    switch (kind) {
    case ControllerKind::cbc: {
        const Trajectory offline = collect_offline(data_plant, cfg.data_length_for(kind), cfg.delay, cfg.seed);
        return std::make_unique<CbcController>(
            build_cbc(offline, cfg.depth, cfg.order, cfg.delay, cfg.tau, cfg.rank_tol));
    }
    case ControllerKind::unified: {
        const Trajectory offline = collect_offline(data_plant, cfg.data_length_for(kind), 0, cfg.seed);
        return std::make_unique<UnifiedController>(
            build_unified(offline, cfg.depth, cfg.order, cfg.delay, cfg.tau, cfg.rank_tol));
    }
    case ControllerKind::imc:
        return std::make_unique<ImcController>(build_imc(data_plant, cfg.delay, cfg.tau));
    }
    throw ConfigError("unknown controller kind");
}

void write_simlog_csv(std::ostream& os, const SimLog& log)
{
    const bool model = log.has_model_signals();
    os << (model ? "t,r,d,u,y,yhat,e\n" : "t,r,d,u,y\n");
    for (const auto& rec : log.records) {
        os << format_double(rec.t) << ',' << format_double(rec.r) << ',' << format_double(rec.d) << ','
           << format_double(rec.u) << ',' << format_double(rec.y);
        if (model) {
            os << ',' << format_double(rec.yhat.value_or(0.0)) << ',' << format_double(rec.e.value_or(0.0));
        }
        os << '\n';
    }
}

void write_simlog_csv(const std::filesystem::path& path, const SimLog& log)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw ConfigError("cannot open " + path.string() + " for writing");
    }
    write_simlog_csv(os, log);
}

SimLog run_closed_loop(const ExperimentConfig& cfg, Controller& controller)
{
    cfg.validate();
    const DiscreteStateSpace plant_sys = discretize(cfg.plant, cfg.ts);
    if (plant_sys.feedthrough() != 0.0) {
        throw ConfigError("closed-loop plant must be strictly proper");
    }
    StateSpaceRunner plant(plant_sys);
    controller.reset();

    const std::size_t n = cfg.samples();
    SimLog log{controller.kind(), cfg.ts, {}};
    log.records.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double r = cfg.reference.level_at(k, cfg.ts);
        const double d = cfg.disturbance.level_at(k, cfg.ts);
        const double y = plant.output(0.0);
        const double u = controller.step(r, y);
        if (!std::isfinite(u) || !std::isfinite(y)) {
            throw NumericalError("closed-loop signal is not finite", k);
        }
        log.records.push_back({static_cast<double>(k) * cfg.ts, r, d, u, y, controller.model_output(),
                               controller.mismatch()});
        plant.advance(u + d);
    }
    return log;
}

SimLog run_closed_loop(const ExperimentConfig& cfg, ControllerKind kind)
{
    auto controller = make_controller(cfg, kind);
    return run_closed_loop(cfg, *controller);
}

// ---------------------------------------------------------------------------
// Comparison

double ComparisonReport::max_deviation() const
{
    double m = 0.0;
    for (const auto& d : deviations) {
        m = std::max({m, d.max_du, d.max_dy});
    }
    return m;
}

void ComparisonReport::print(std::ostream& os) const
{
    char buf[256];
    os << "controller  ss_error    us/step   window_samples  online_scalars  offline_samples\n";
    for (const auto& run : runs) {
        std::snprintf(buf, sizeof(buf), "%-10s  %.3e  %8.3f  %14d  %14d  %15d\n",
                      std::string(to_string(run.kind)).c_str(), run.steady_state_error, run.seconds_per_step * 1e6,
                      run.memory.online_window_samples, run.memory.online_scalars, run.memory.offline_samples);
        os << buf;
    }
    os << "pair                max|du|    rms|du|    max|dy|    rms|dy|\n";
    for (const auto& d : deviations) {
        const std::string name =
            std::string(to_string(runs[d.a].kind)) + "-" + std::string(to_string(runs[d.b].kind));
        std::snprintf(buf, sizeof(buf), "%-18s  %.3e  %.3e  %.3e  %.3e\n", name.c_str(), d.max_du, d.rms_du,
                      d.max_dy, d.rms_dy);
        os << buf;
    }
}

ComparisonReport compare_controllers(const ExperimentConfig& cfg)
{
    if (cfg.controllers.size() < 2) {
        throw ConfigError("compare needs at least two controllers");
    }
    ComparisonReport report;
    for (ControllerKind kind : cfg.controllers) {
        auto controller = make_controller(cfg, kind);
        const auto start = std::chrono::steady_clock::now();
        SimLog log = run_closed_loop(cfg, *controller);
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        const auto& last = log.records.back();
        report.runs.push_back({kind, std::move(log), std::abs(last.y - last.r),
                               elapsed.count() / static_cast<double>(cfg.samples()), controller->memory()});
    }
    for (std::size_t a = 0; a < report.runs.size(); ++a) {
        for (std::size_t b = a + 1; b < report.runs.size(); ++b) {
            const auto& ra = report.runs[a].log.records;
            const auto& rb = report.runs[b].log.records;
            PairwiseDeviation dev{a, b, 0.0, 0.0, 0.0, 0.0};
            for (std::size_t k = 0; k < ra.size(); ++k) {
                const double du = std::abs(ra[k].u - rb[k].u);
                const double dy = std::abs(ra[k].y - rb[k].y);
                dev.max_du = std::max(dev.max_du, du);
                dev.max_dy = std::max(dev.max_dy, dy);
                dev.rms_du += du * du;
                dev.rms_dy += dy * dy;
            }
            dev.rms_du = std::sqrt(dev.rms_du / static_cast<double>(ra.size()));
            dev.rms_dy = std::sqrt(dev.rms_dy / static_cast<double>(ra.size()));
            report.deviations.push_back(dev);
        }
    }
    return report;
}

} // namespace ibc
