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
#include "ibc/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "ibc/errors.hpp"
#include "ibc/experiment.hpp"
#include "ibc/hankel.hpp"
#include "ibc/interconnect.hpp"

namespace ibc {

namespace {

struct Options {
    std::string config;
    std::string controller;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::string data;
    std::string first;
    std::string second;
    std::string kind = "series";
    std::optional<int> order;
};

ExperimentConfig config_from(const Options& opt)
{
    ExperimentConfig cfg = opt.config.empty() ? ExperimentConfig{} : load_config(opt.config);
    if (opt.seed) cfg.seed = *opt.seed;
    cfg.validate();
    return cfg;
}

void print_report(std::ostream& out, const std::string& name, const RankReport& rep)
{
    out << name << ": rank " << rep.rank << " expected " << rep.expected << ' ' << (rep.pass ? "pass" : "FAIL")
        << "\n  singular values:";
    char buf[32];
    for (double s : rep.singular_values) {
        std::snprintf(buf, sizeof(buf), " %.6e", s);
        out << buf;
    }
    out << '\n';
}

bool certify_trajectory(std::ostream& out, const Trajectory& traj, const ExperimentConfig& cfg, bool inverse)
{
    bool ok = true;
    const Trajectory fwd_traj = traj.forward_slice();
    ForwardDataMatrix fwd = build_forward(fwd_traj, cfg.depth);
    print_report(out, "forward " + std::to_string(fwd.stacked().rows()) + "x" + std::to_string(fwd.columns()),
                 fwd.certify(cfg.order, cfg.rank_tol));
    ok = ok && fwd.certified();
    if (inverse) {
        const int delay = static_cast<int>(traj.y.size() - traj.u.size());
        InverseDataMatrix inv = build_inverse(traj, cfg.depth, delay);
        print_report(out, "inverse " + std::to_string(inv.stacked().rows()) + "x" + std::to_string(inv.columns()),
                     inv.certify(cfg.order, cfg.rank_tol));
        ok = ok && inv.certified();
    }
    return ok;
}

int run_collect(const Options& opt, std::ostream& out)
{
    const ExperimentConfig cfg = config_from(opt);
    const int td = opt.controller.empty() ? cfg.data_length : cfg.data_length_for(parse_controller_kind(opt.controller));
    const Trajectory traj = collect_offline(discretize(cfg.plant, cfg.ts), td, cfg.delay, cfg.seed);
    if (opt.out.empty()) {
        write_trajectory_csv(out, traj);
    } else {
        write_trajectory_csv(opt.out, traj);
    }
    return kExitOk;
}

int run_rank(const Options& opt, std::ostream& out)
{
    const ExperimentConfig cfg = config_from(opt);
    bool ok = true;
    if (!opt.data.empty()) {
        const Trajectory traj = read_trajectory_csv(opt.data);
        ok = certify_trajectory(out, traj, cfg, traj.y.size() > traj.u.size());
    } else {
        const DiscreteStateSpace plant = discretize(cfg.plant, cfg.ts);
        for (ControllerKind kind : cfg.controllers) {
            if (!opt.controller.empty() && kind != parse_controller_kind(opt.controller)) continue;
            if (kind == ControllerKind::imc) continue;
            const int td = cfg.data_length_for(kind);
            out << "[" << to_string(kind) << ", td = " << td << "]\n";
            if (kind == ControllerKind::cbc) {
                ok = certify_trajectory(out, collect_offline(plant, td, cfg.delay, cfg.seed), cfg, true) && ok;
            } else {
                const Trajectory data = collect_offline(plant, td, 0, cfg.seed);
                const auto wc = unified_controller_trajectory(data.u, data.y, make_imc_filter(cfg.tau, cfg.ts, cfg.delay));
                ControllerDataMatrix hc = build_controller_matrix(wc.u, wc.y, cfg.depth);
                print_report(out,
                             "controller " + std::to_string(hc.blocks.stacked().rows()) + "x" +
                                 std::to_string(hc.blocks.columns()),
                             hc.blocks.certify(cfg.order, cfg.rank_tol));
                ok = ok && hc.blocks.certified();
            }
        }
    }
    out << (ok ? "certified\n" : "certification failed\n");
    return ok ? kExitOk : kExitConfig;
}

int run_simulate(const Options& opt, std::ostream& out)
{
    const ExperimentConfig cfg = config_from(opt);
    const ControllerKind kind = opt.controller.empty() ? cfg.controllers.front() : parse_controller_kind(opt.controller);
    const SimLog log = run_closed_loop(cfg, kind);
    if (opt.out.empty()) {
        write_simlog_csv(out, log);
    } else {
        write_simlog_csv(opt.out, log);
    }
    return kExitOk;
}

int run_compare(const Options& opt, std::ostream& out)
{
    const ExperimentConfig cfg = config_from(opt);
    const ComparisonReport report = compare_controllers(cfg);
    report.print(out);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "max deviation %.3e\n", report.max_deviation());
    out << buf;
    return kExitOk;
}

int run_interconnect(const Options& opt, std::ostream& out)
{
    const ExperimentConfig cfg = config_from(opt);
    const Trajectory w1 = read_trajectory_csv(opt.first);
    const Trajectory w2 = read_trajectory_csv(opt.second);
    const int order2 = opt.order.value_or(cfg.order);
    InterconnectionTrajectory result = [&] {
        if (opt.kind == "series") return series(w1, w2, cfg.depth, order2, cfg.rank_tol);
        if (opt.kind == "feedback") return feedback(w1, w2, cfg.depth, order2, cfg.rank_tol);
        if (opt.kind == "negative_feedback") return negative_feedback(w1, w2, cfg.depth, order2, cfg.rank_tol);
        if (opt.kind == "parallel") return parallel(w1, w2, cfg.depth, order2, cfg.rank_tol);
        throw ConfigError("unknown interconnection kind '" + opt.kind + "'");
    }();
    Trajectory traj = result.trajectory(w1.ts);
    if (opt.out.empty()) {
        write_trajectory_csv(out, traj);
    } else {
        write_trajectory_csv(opt.out, traj);
    }
    return kExitOk;
}

} // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Data-driven internal model control experiments", "ibc"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config, "Experiment config file")->check(CLI::ExistingFile);
        sub->add_option("--seed", opt.seed, "Override the offline data seed");
    };

    auto* collect = app.add_subcommand("collect", "Write an offline trajectory CSV");
    add_common(collect);
    collect->add_option("--controller", opt.controller, "Use this controller's td");
    collect->add_option("--out", opt.out, "Output CSV (stdout when omitted)");

    auto* rank = app.add_subcommand("rank", "Certify data matrices and print singular values");
    add_common(rank);
    rank->add_option("--controller", opt.controller, "Only this controller's matrices");
    rank->add_option("--data", opt.data, "Trajectory CSV instead of collecting")->check(CLI::ExistingFile);

    auto* simulate = app.add_subcommand("simulate", "Run one controller and write a SimLog CSV");
    add_common(simulate);
    simulate->add_option("--controller", opt.controller, "cbc, unified or imc");
    simulate->add_option("--out", opt.out, "Output CSV (stdout when omitted)");

    auto* compare = app.add_subcommand("compare", "Run the configured controllers and report deviations");
    add_common(compare);

    auto* inter = app.add_subcommand("interconnect", "Build an interconnection trajectory from two CSV files");
    add_common(inter);
    inter->add_option("--first", opt.first, "Trajectory of G1")->required()->check(CLI::ExistingFile);
    inter->add_option("--second", opt.second, "Trajectory of G2")->required()->check(CLI::ExistingFile);
    inter->add_option("--kind", opt.kind, "series, feedback, negative_feedback or parallel");
    inter->add_option("--order", opt.order, "Order of G2 (defaults to n)");
    inter->add_option("--out", opt.out, "Output CSV (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitConfig;
    }

    try {
        if (collect->parsed()) return run_collect(opt, out);
        if (rank->parsed()) return run_rank(opt, out);
        if (simulate->parsed()) return run_simulate(opt, out);
        if (compare->parsed()) return run_compare(opt, out);
        if (inter->parsed()) return run_interconnect(opt, out);
    } catch (const NumericalError& e) {
        err << "numerical failure at step " << e.step() << ": " << e.what() << '\n';
        return kExitNumerical;
    } catch (const CertificationError& e) {
        err << "certification failed: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    err << app.help();
    return kExitConfig;
}

int cli_main(int argc, const char* const* argv)
{
    return cli_main(argc, argv, std::cout, std::cerr);
}

} // namespace ibc
