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
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "ibc/cli.hpp"
#include "ibc/controllers.hpp"
#include "ibc/errors.hpp"
#include "ibc/experiment.hpp"
#include "ibc/hankel.hpp"
#include "ibc/interconnect.hpp"
#include "ibc/predictors.hpp"

namespace py = pybind11;
using namespace ibc;

namespace {

py::dict simlog_to_dict(const SimLog& log)
{
    const auto n = static_cast<Eigen::Index>(log.records.size());
    VectorXd t(n), r(n), d(n), u(n), y(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto& rec = log.records[static_cast<std::size_t>(k)];
        t(k) = rec.t;
        r(k) = rec.r;
        d(k) = rec.d;
        u(k) = rec.u;
        y(k) = rec.y;
    }
    py::dict out;
    out["controller"] = std::string(to_string(log.controller));
    out["t"] = t;
    out["r"] = r;
    out["d"] = d;
    out["u"] = u;
    out["y"] = y;
    return out;
}

} // namespace

PYBIND11_MODULE(_ibc, m)
{
    m.doc() = "Data-driven internal model control";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<CertificationError>(m, "CertificationError", PyExc_RuntimeError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::class_<TransferFunction>(m, "TransferFunction")
        .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("num"), py::arg("den"))
        .def_property_readonly("num", &TransferFunction::num)
        .def_property_readonly("den", &TransferFunction::den)
        .def("order", &TransferFunction::order);

    py::class_<DiscreteStateSpace>(m, "DiscreteStateSpace")
        .def_property_readonly("A", &DiscreteStateSpace::A)
        .def_property_readonly("B", &DiscreteStateSpace::B)
        .def_property_readonly("C", &DiscreteStateSpace::C)
        .def_property_readonly("D", &DiscreteStateSpace::feedthrough)
        .def_property_readonly("ts", &DiscreteStateSpace::ts)
        .def("order", &DiscreteStateSpace::order)
        .def("dc_gain", &DiscreteStateSpace::dc_gain)
        .def("is_stable", &DiscreteStateSpace::is_stable);

    m.def("discretize", &discretize, py::arg("plant"), py::arg("ts"));
    m.def("simulate", py::overload_cast<const DiscreteStateSpace&, const VectorXd&>(&simulate), py::arg("sys"),
          py::arg("u"));

    py::class_<Trajectory>(m, "Trajectory")
        .def(py::init([](VectorXd u, VectorXd y, double ts) { return Trajectory{std::move(u), std::move(y), ts, {}}; }),
             py::arg("u"), py::arg("y"), py::arg("ts") = 1.0)
        .def_readwrite("u", &Trajectory::u)
        .def_readwrite("y", &Trajectory::y)
        .def_readwrite("ts", &Trajectory::ts)
        .def("forward_slice", &Trajectory::forward_slice);

    m.def("collect_offline", &collect_offline, py::arg("plant"), py::arg("td"), py::arg("delay"), py::arg("seed"));
    m.def("hankel", &hankel, py::arg("v"), py::arg("depth"));

    py::class_<RankReport>(m, "RankReport")
        .def_readonly("rank", &RankReport::rank)
        .def_readonly("expected", &RankReport::expected)
        .def_readonly("passed", &RankReport::pass)
        .def_readonly("singular_values", &RankReport::singular_values);
    m.def("check_rank", &check_rank, py::arg("m"), py::arg("expected"), py::arg("tol") = kDefaultRankTolerance);

    py::class_<ForwardPredictor>(m, "ForwardPredictor")
        .def(py::init([](const Trajectory& traj, int depth, int order, double tol) {
                 ForwardDataMatrix data = build_forward(traj, depth);
                 data.certify(order, tol);
                 return ForwardPredictor(data);
             }),
             py::arg("trajectory"), py::arg("depth"), py::arg("order"), py::arg("tol") = kDefaultRankTolerance)
        .def("predict", &ForwardPredictor::predict, py::arg("u_ini"), py::arg("u_pred"), py::arg("y_ini"))
        .def_property_readonly("gain", &ForwardPredictor::gain)
        .def_property_readonly("depth", &ForwardPredictor::depth);

    py::class_<InversePredictor>(m, "InversePredictor")
        .def(py::init([](const Trajectory& traj, int depth, int order, int delay, double tol) {
                 InverseDataMatrix data = build_inverse(traj, depth, delay);
                 data.certify(order, tol);
                 return InversePredictor(data);
             }),
             py::arg("trajectory"), py::arg("depth"), py::arg("order"), py::arg("delay"),
             py::arg("tol") = kDefaultRankTolerance)
        .def("predict", &InversePredictor::predict, py::arg("u_ini"), py::arg("y_ini"), py::arg("y_pred"))
        .def_property_readonly("delay", &InversePredictor::delay);

    m.def(
        "regenerate",
        [](const Trajectory& data, int depth, int order, const VectorXd& u, double tol) {
            return RegenerationContext(data, depth, order, tol).regenerate(u);
        },
        py::arg("data"), py::arg("depth"), py::arg("order"), py::arg("u"), py::arg("tol") = kDefaultRankTolerance);

    m.def(
        "interconnect",
        [](const std::string& kind, const Trajectory& w1, const Trajectory& w2, int depth, int order2, double tol) {
            InterconnectionTrajectory r = [&] {
                if (kind == "series") return series(w1, w2, depth, order2, tol);
                if (kind == "feedback") return feedback(w1, w2, depth, order2, tol);
                if (kind == "negative_feedback") return negative_feedback(w1, w2, depth, order2, tol);
                if (kind == "parallel") return parallel(w1, w2, depth, order2, tol);
                throw ConfigError("unknown interconnection kind '" + kind + "'");
            }();
            return r.trajectory(w1.ts);
        },
        py::arg("kind"), py::arg("w1"), py::arg("w2"), py::arg("depth"), py::arg("order2"),
        py::arg("tol") = kDefaultRankTolerance);

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("ts", &ExperimentConfig::ts)
        .def_readwrite("order", &ExperimentConfig::order)
        .def_readwrite("delay", &ExperimentConfig::delay)
        .def_readwrite("depth", &ExperimentConfig::depth)
        .def_readwrite("tau", &ExperimentConfig::tau)
        .def_readwrite("duration", &ExperimentConfig::duration)
        .def_readwrite("seed", &ExperimentConfig::seed)
        .def_readwrite("rank_tol", &ExperimentConfig::rank_tol)
        .def("samples", &ExperimentConfig::samples)
        .def("__str__", [](const ExperimentConfig& c) { return to_text(c); });
    m.def("parse_config", &parse_config, py::arg("text"));
    m.def("load_config", &load_config, py::arg("path"));

    m.def(
        "run_closed_loop",
        [](const ExperimentConfig& cfg, const std::string& controller) {
            return simlog_to_dict(run_closed_loop(cfg, parse_controller_kind(controller)));
        },
        py::arg("config"), py::arg("controller"));

    m.def(
        "compare_controllers",
        [](const ExperimentConfig& cfg) {
            const ComparisonReport report = compare_controllers(cfg);
            std::ostringstream os;
            report.print(os);
            py::dict out;
            out["max_deviation"] = report.max_deviation();
            out["report"] = os.str();
            py::dict runs;
            for (const auto& run : report.runs) {
                runs[py::str(std::string(to_string(run.kind)))] = simlog_to_dict(run.log);
            }
            out["runs"] = runs;
            return out;
        },
        py::arg("config"));

    m.def(
        "cli",
        [](const std::vector<std::string>& args) {
            std::vector<const char*> argv{"ibc"};
            for (const auto& a : args) argv.push_back(a.c_str());
            std::ostringstream out, err;
            const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command-line tool in process; returns (exit code, stdout, stderr).");
}
