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
// Acceptance suite: one PASS/FAIL line per criterion on the example
// configuration (ZOH plant 10(s+1)/((s+2)(s+4)), Ts = 0.01, T_p = 2).

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "ibc/controllers.hpp"
#include "ibc/errors.hpp"
#include "ibc/experiment.hpp"
#include "ibc/hankel.hpp"
#include "ibc/interconnect.hpp"
#include "ibc/predictors.hpp"
#include "oracles.hpp"

using namespace ibc;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, v);
    return buf;
}

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

ExperimentConfig example_config()
{
    return load_config(std::filesystem::path(IBC_CONFIG_DIR) / "example.cfg");
}

DiscreteStateSpace example_plant()
{
    return discretize(TransferFunction({10.0, 10.0}, {1.0, 6.0, 8.0}), 0.01);
}

Outcome forward_exactness()
{
    const auto start = Clock::now();
    const DiscreteStateSpace g = example_plant();
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        ForwardDataMatrix h = build_forward(collect_offline(g, 8, 0, seed), 2);
        h.certify(2);
        const ForwardPredictor p(h);
        const VectorXd u = uniform_input(502, 1000 + seed);
        const VectorXd y = simulate(g, u);
        VectorXd err(500);
        for (Eigen::Index t = 2; t < 502; ++t) {
            err(t - 2) = p.predict(u.segment(t - 2, 2), u(t), y.segment(t - 2, 2)) - y(t);
        }
        worst = std::max(worst, oracle::max_abs(err) / oracle::max_abs(y.tail(500)));
    }
    const double elapsed = seconds_since(start);
    return {worst < 1e-7 && elapsed < 1.0,
            "max rel err " + fmt("%.2e", worst) + ", " + fmt("%.3f", elapsed) + " s"};
}

Outcome inverse_exactness()
{
    const DiscreteStateSpace g = example_plant();
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        InverseDataMatrix h = build_inverse(collect_offline(g, 8, 1, seed), 2, 1);
        h.certify(2);
        const InversePredictor p(h);
        const VectorXd u = uniform_input(503, 1000 + seed);
        const VectorXd y = simulate(g, u);
        for (Eigen::Index t = 3; t < 503; ++t) {
            const double got = p.predict(u.segment(t - 3, 2), y.segment(t - 3, 2), y.segment(t - 1, 2));
            worst = std::max(worst, std::abs(got - u(t - 1)));
        }
    }
    return {worst < 1e-7, "max abs err " + fmt("%.2e", worst)};
}

Outcome rank_conditions()
{
    const ExperimentConfig cfg = example_config();
    const DiscreteStateSpace g = example_plant();
    const ImcFilter filter = make_imc_filter(cfg.tau, cfg.ts, 1);
    std::ostringstream detail;
    bool pass = true;

    auto cbc_ranks = [&](int td, RankReport& fwd_rep, RankReport& inv_rep, std::string& shapes) {
        const Trajectory d = collect_offline(g, td, 1, cfg.seed);
        ForwardDataMatrix fwd = build_forward(d.forward_slice(), 2);
        InverseDataMatrix inv = build_inverse(d, 2, 1);
        fwd_rep = fwd.certify(2);
        inv_rep = inv.certify(2);
        shapes = std::to_string(fwd.stacked().rows()) + "x" + std::to_string(fwd.columns()) + ", " +
                 std::to_string(inv.stacked().rows()) + "x" + std::to_string(inv.columns());
    };
    auto controller_rank = [&](int td, std::string& shape) {
        const Trajectory d = collect_offline(g, td, 0, cfg.seed);
        const auto wc = unified_controller_trajectory(d.u, d.y, filter);
        ControllerDataMatrix hc = build_controller_matrix(wc.u, wc.y, 2);
        shape = std::to_string(hc.blocks.stacked().rows()) + "x" + std::to_string(hc.blocks.columns());
        return hc.blocks.certify(2);
    };

    RankReport f8, i8, f7, i7;
    std::string s8, s7, c7s, c6s;
    cbc_ranks(8, f8, i8, s8);
    cbc_ranks(7, f7, i7, s7);
    const RankReport c7 = controller_rank(7, c7s);
    const RankReport c6 = controller_rank(6, c6s);

    const bool full = f8.pass && i8.pass && c7.pass && s8 == "6x6, 7x6" && c7s == "6x5";
    const bool unified_min = !c6.pass;
    const bool cbc_min = !(f7.pass && i7.pass);
    pass = full && unified_min && cbc_min;
    detail << "td=8 [" << s8 << "] ranks " << f8.rank << "," << i8.rank << "; td=7 controller [" << c7s << "] rank "
           << c7.rank << "; unified td=6 rank " << c6.rank << (unified_min ? " fails" : " passes")
           << "; cbc td=7 [" << s7 << "] ranks " << f7.rank << "," << i7.rank
           << (cbc_min ? " fails" : " still certifies");
    return {pass, detail.str()};
}

Outcome regeneration()
{
    const DiscreteStateSpace g = example_plant();
    double worst = 0.0;
    double round_trip = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Trajectory d = collect_offline(g, 8, 0, seed);
        const RegenerationContext ctx(d, 2, 2);
        const VectorXd u = uniform_input(1000, 500 + seed);
        worst = std::max(worst, oracle::max_rel_error(ctx.regenerate(u), simulate(g, u)));
        const Trajectory z = zero_ic_trajectory(d, 2, 2);
        round_trip = std::max(round_trip, oracle::max_abs(z.y - d.y) + oracle::max_abs(z.u - d.u));
    }
    return {worst < 1e-7 && round_trip < 1e-9,
            "max rel err " + fmt("%.2e", worst) + ", rest-data round trip " + fmt("%.2e", round_trip)};
}

Outcome admissibility()
{
    std::mt19937_64 rng(4242);
    double worst_series = 0.0;
    double worst_feedback = 0.0;
    int pairs = 0;
    const int depth = 10;
    auto record = [](const oracle::DiscreteTf& tf, int n, std::uint64_t seed) {
        const VectorXd u = uniform_input(static_cast<std::size_t>(n), seed);
        return Trajectory{u, oracle::filter(tf, u), 1.0, {}};
    };
    auto windows = [&](const VectorXd& u, const VectorXd& y) {
        MatrixXd w(2 * depth, u.size() - depth + 1);
        w << oracle::hankel(u, depth), oracle::hankel(y, depth);
        return w;
    };
    std::uniform_int_distribution<int> order_dist(1, 3);
    while (pairs < 5) {
        const int n1 = order_dist(rng);
        const int n2 = order_dist(rng);
        const oracle::DiscreteTf g1 = oracle::random_stable(rng, n1);
        const oracle::DiscreteTf g2 = oracle::random_stable(rng, n2);
        const oracle::DiscreteTf gs = oracle::series(g1, g2);
        const oracle::DiscreteTf gf = oracle::positive_feedback(g1, g2);
        if (!oracle::is_stable(gf.a)) continue; // loop must be stable for a bounded rich simulation
        const auto seed = static_cast<std::uint64_t>(10 * pairs);
        const Trajectory w1 = record(g1, 120, seed + 1);
        const Trajectory w2 = record(g2, 3 * n2 + 6, seed + 2);
        const auto ws = series(w1, w2, n2, n2);
        const auto wf = feedback(w1, w2, n2, n2);
        const Trajectory rich_s = record(gs, 400, seed + 3);
        const Trajectory rich_f = record(gf, 400, seed + 4);
        worst_series = std::max(worst_series, oracle::column_space_residual(windows(rich_s.u, rich_s.y), windows(ws.u, ws.y)));
        worst_feedback =
            std::max(worst_feedback, oracle::column_space_residual(windows(rich_f.u, rich_f.y), windows(wf.u, wf.y)));
        ++pairs;
    }
    return {worst_series < 1e-7 && worst_feedback < 1e-7,
            "relative residual series " + fmt("%.2e", worst_series) + ", feedback " + fmt("%.2e", worst_feedback)};
}

struct ExampleRuns {
    SimLog cbc;
    SimLog unified;
    SimLog imc;
    double seconds;
};

const ExampleRuns& example_runs()
{
    static const ExampleRuns runs = [] {
        const auto start = Clock::now();
        const ExperimentConfig cfg = example_config();
        ExampleRuns r{run_closed_loop(cfg, ControllerKind::cbc), run_closed_loop(cfg, ControllerKind::unified),
                      run_closed_loop(cfg, ControllerKind::imc), 0.0};
        r.seconds = seconds_since(start);
        return r;
    }();
    return runs;
}

Outcome equivalence()
{
    const ExampleRuns& r = example_runs();
    double du_cbc = 0.0, du_uni = 0.0, dy_cbc = 0.0, dy_uni = 0.0;
    for (std::size_t k = 0; k < r.imc.records.size(); ++k) {
        du_cbc = std::max(du_cbc, std::abs(r.cbc.records[k].u - r.imc.records[k].u));
        du_uni = std::max(du_uni, std::abs(r.unified.records[k].u - r.imc.records[k].u));
        dy_cbc = std::max(dy_cbc, std::abs(r.cbc.records[k].y - r.imc.records[k].y));
        dy_uni = std::max(dy_uni, std::abs(r.unified.records[k].y - r.imc.records[k].y));
    }
    const bool pass = r.imc.records.size() == 2500 && std::max({du_cbc, du_uni, dy_cbc, dy_uni}) < 1e-6 &&
                      r.seconds < 5.0;
    return {pass, "max|du| cbc " + fmt("%.2e", du_cbc) + " unified " + fmt("%.2e", du_uni) + ", max|dy| cbc " +
                      fmt("%.2e", dy_cbc) + " unified " + fmt("%.2e", dy_uni) + ", " + fmt("%.3f", r.seconds) + " s"};
}

Outcome tracking()
{
    const ExperimentConfig cfg = example_config();
    const double t_ref = cfg.reference.steps.front().first;
    const double t_dist = cfg.disturbance.steps.front().first;
    const ExampleRuns& r = example_runs();
    std::ostringstream detail;
    bool pass = true;
    for (const SimLog* log : {&r.cbc, &r.unified}) {
        double after_ref = 0.0, after_dist = 0.0;
        for (const auto& rec : log->records) {
            const double err = std::abs(rec.y - rec.r);
            if (rec.t >= t_ref + 4.0 - 1e-9 && rec.t < t_dist) after_ref = std::max(after_ref, err);
            if (rec.t >= t_dist + 4.0 - 1e-9) after_dist = std::max(after_dist, err);
        }
        const double final_err = std::abs(log->records.back().y - log->records.back().r);
        pass = pass && after_ref < 1e-3 && after_dist < 1e-3 && final_err < 1e-6;
        detail << to_string(log->controller) << ": " << fmt("%.1e", after_ref) << "/" << fmt("%.1e", after_dist)
               << "/" << fmt("%.1e", final_err) << "  ";
    }
    return {pass, detail.str() + "(after reference / after disturbance / final)"};
}

Outcome arx()
{
    const DiscreteStateSpace g = example_plant();
    ForwardDataMatrix h = build_forward(collect_offline(g, 8, 0, 2026), 2);
    h.certify(2);
    const ForwardPredictor p(h);
    const VectorXd u = uniform_input(300, 77);
    const auto [a, b] = oracle::fit_arx(u, simulate(g, u), 2, 2);
    VectorXd want(5);
    want << b(2), b(1), b(0), -a(1), -a(0);
    const double worst = oracle::max_abs(p.gain().transpose() - want);
    return {worst < 1e-6, "max coefficient diff " + fmt("%.2e", worst)};
}

Outcome reproducibility(const std::string& cli)
{
    const auto dir = std::filesystem::temp_directory_path() / "ibc_acceptance";
    std::filesystem::create_directories(dir);
    const std::string cfg = (std::filesystem::path(IBC_CONFIG_DIR) / "example.cfg").string();
    auto run = [&](const std::string& name) {
        const auto out = dir / name;
        const std::string cmd = cli + " simulate --config " + cfg + " --controller cbc --out " + out.string();
        if (std::system(cmd.c_str()) != 0) return std::string();
        std::ifstream in(out, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string a = run("a.csv");
    const std::string b = run("b.csv");
    std::filesystem::remove_all(dir);
    return {!a.empty() && a == b, std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different")};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Acceptance checks"};
    std::set<int> expected_failures;
    std::string cli = IBC_CLI_PATH;
    app.add_option("--expect-fail", expected_failures, "Criteria known to fail; the exit code ignores exactly these");
    app.add_option("--cli", cli, "Path of the ibc executable");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"forward predictor exactness", forward_exactness},
        {"inverse predictor exactness", inverse_exactness},
        {"rank conditions and minimum data", rank_conditions},
        {"zero-state regeneration", regeneration},
        {"interconnection admissibility", admissibility},
        {"CBC / unified / IMC equivalence", equivalence},
        {"tracking and disturbance rejection", tracking},
        {"ARX equivalence", arx},
        {"simulate reproducibility", [&] { return reproducibility(cli); }},
    };

    std::set<int> failed;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) failed.insert(id);
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << id << ". " << criteria[i].first << " -- " << o.detail
                  << std::endl;
    }
    std::cout << (criteria.size() - failed.size()) << "/" << criteria.size() << " criteria pass" << std::endl;
    if (failed != expected_failures) {
        if (!expected_failures.empty()) std::cout << "failures differ from the expected set" << std::endl;
        return 1;
    }
    return 0;
}
