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
#include "ibc/hankel.hpp"

#include <algorithm>
#include <vector>

#include "ibc/errors.hpp"

namespace ibc {

MatrixXd hankel(const VectorXd& v, int depth)
{
    const Eigen::Index n = v.size();
    if (depth < 1 || depth > n) {
        throw ConfigError("Hankel depth " + std::to_string(depth) + " is outside [1, " + std::to_string(n) + "]");
    }
    const Eigen::Index cols = n - depth + 1;
    MatrixXd h(depth, cols);
    for (Eigen::Index i = 0; i < depth; ++i) {
        h.row(i) = v.segment(i, cols).transpose();
    }
    return h;
}

int numerical_rank(const VectorXd& singular_values, double tol)
{
    if (singular_values.size() == 0) {
        return 0;
    }
    const double smax = singular_values.maxCoeff();
    if (!(smax > 0.0)) {
        return 0;
    }
    return static_cast<int>((singular_values.array() > tol * smax).count());
}

RankReport check_rank(const MatrixXd& m, int expected, double tol)
{
    if (!(tol > 0.0 && tol < 1.0)) {
        throw ConfigError("rank tolerance must lie in (0, 1)");
    }
    RankReport report;
    report.expected = expected;
    report.tolerance = tol;
    if (m.size() > 0) {
        report.singular_values = Eigen::JacobiSVD<MatrixXd>(m).singularValues();
    }
    report.rank = numerical_rank(report.singular_values, tol);
    report.pass = report.rank == expected;
    return report;
}

namespace {

std::vector<double> to_std(const VectorXd& v)
{
    return {v.data(), v.data() + v.size()};
}

void require(const std::optional<RankReport>& cert, const std::string& what)
{
    if (!cert) {
        throw CertificationError(what + " (never certified)", 0, 0, {});
    }
    if (!cert->pass) {
        throw CertificationError(what, cert->rank, cert->expected, to_std(cert->singular_values));
    }
}

void check_depth(int depth)
{
    if (depth < 1) {
        throw ConfigError("past depth T_p must be at least 1");
    }
}

} // namespace

ForwardDataMatrix::ForwardDataMatrix(MatrixXd up, MatrixXd uf, MatrixXd yp, MatrixXd yf)
    : up_(std::move(up)), uf_(std::move(uf)), yp_(std::move(yp)), yf_(std::move(yf))
{
    const Eigen::Index m = up_.cols();
    if (uf_.rows() != 1 || yf_.rows() != 1 || yp_.rows() != up_.rows() || uf_.cols() != m || yp_.cols() != m ||
        yf_.cols() != m) {
        throw ConfigError("forward data blocks have inconsistent shapes");
    }
}

MatrixXd ForwardDataMatrix::stacked() const
{
    MatrixXd h(2 * depth() + 2, columns());
    h << up_, uf_, yp_, yf_;
    return h;
}

const RankReport& ForwardDataMatrix::certify(int order, double tol)
{
    certification_ = check_rank(stacked(), depth() + 1 + order, tol);
    return *certification_;
}

void ForwardDataMatrix::require_certified(const std::string& what) const
{
    require(certification_, what);
}

InverseDataMatrix::InverseDataMatrix(MatrixXd up, MatrixXd uf, MatrixXd yp, MatrixXd yfl)
    : up_(std::move(up)), uf_(std::move(uf)), yp_(std::move(yp)), yfl_(std::move(yfl))
{
    const Eigen::Index m = up_.cols();
    if (uf_.rows() != 1 || yfl_.rows() < 1 || yp_.rows() != up_.rows() || uf_.cols() != m || yp_.cols() != m ||
        yfl_.cols() != m) {
        throw ConfigError("inverse data blocks have inconsistent shapes");
    }
}

MatrixXd InverseDataMatrix::stacked() const
{
    MatrixXd h(2 * depth() + 2 + delay(), columns());
    h << up_, uf_, yp_, yfl_;
    return h;
}

const RankReport& InverseDataMatrix::certify(int order, double tol)
{
    certification_ = check_rank(stacked(), depth() + 1 + order, tol);
    return *certification_;
}

void InverseDataMatrix::require_certified(const std::string& what) const
{
    require(certification_, what);
}

ForwardDataMatrix build_forward(const Trajectory& traj, int depth)
{
    check_depth(depth);
    const Eigen::Index td = traj.u.size();
    if (traj.y.size() != td) {
        throw ConfigError("forward data needs equal input and output lengths, got " + std::to_string(td) + " and " +
                          std::to_string(traj.y.size()));
    }
    if (depth + 1 > td) {
        throw ConfigError("trajectory of length " + std::to_string(td) + " is too short for depth " +
                          std::to_string(depth));
    }
    const MatrixXd hu = hankel(traj.u, depth + 1);
    const MatrixXd hy = hankel(traj.y, depth + 1);
    return {hu.topRows(depth), hu.bottomRows(1), hy.topRows(depth), hy.bottomRows(1)};
}

InverseDataMatrix build_inverse(const Trajectory& traj, int depth, int delay)
{
    check_depth(depth);
    if (delay < 0) {
        throw ConfigError("L-delay must be non-negative");
    }
    const Eigen::Index td = traj.u.size();
    if (traj.y.size() != td + delay) {
        throw ConfigError("inverse data needs the output exactly " + std::to_string(delay) +
                          " samples longer than the input, got " + std::to_string(td) + " and " +
                          std::to_string(traj.y.size()));
    }
    if (depth + 1 > td) {
        throw ConfigError("trajectory of length " + std::to_string(td) + " is too short for depth " +
                          std::to_string(depth));
    }
    const MatrixXd hu = hankel(traj.u, depth + 1);
    const MatrixXd hy = hankel(traj.y, depth + 1 + delay);
    return {hu.topRows(depth), hu.bottomRows(1), hy.topRows(depth), hy.bottomRows(1 + delay)};
}

ControllerDataMatrix build_controller_matrix(const VectorXd& e, const VectorXd& ubar, int depth)
{
    if (e.size() != ubar.size()) {
        throw ConfigError("controller input and output sequences differ in length");
    }
    Trajectory w{e, ubar, 1.0, "controller"};
    return {build_forward(w, depth)};
}

std::vector<RankProfileEntry> rank_profile(const Trajectory& traj, int max_depth, double tol)
{
    const Trajectory fwd = traj.forward_slice();
    std::vector<RankProfileEntry> out;
    for (int depth = 1; depth <= max_depth && depth + 1 <= fwd.u.size(); ++depth) {
        const MatrixXd h = build_forward(fwd, depth).stacked();
        const int r = check_rank(h, 0, tol).rank;
        out.push_back({depth, r, h.rows(), h.cols(), r - depth - 1});
    }
    return out;
}

} // namespace ibc
