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

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ibc/trajectory.hpp"

namespace ibc {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Relative singular-value cutoff shared by rank certification and pseudoinverses.
inline constexpr double kDefaultRankTolerance = 1e-8;

/// depth x (N - depth + 1) matrix with entry (i, j) = v(i + j).
MatrixXd hankel(const VectorXd& v, int depth);

struct RankReport {
    int rank = 0;
    int expected = 0;
    bool pass = false;
    double tolerance = kDefaultRankTolerance;
    VectorXd singular_values;
};

/// Counts singular values above tol * sigma_max.
int numerical_rank(const VectorXd& singular_values, double tol);

/// Numerical rank of m against an expected value. tol must lie in (0, 1).
RankReport check_rank(const MatrixXd& m, int expected, double tol = kDefaultRankTolerance);

/**
 * @brief Partitioned Hankel blocks of equal-length data for one-step output prediction.
 *
 * Rows: U_p (depth), U_f (1), Y_p (depth), Y_f (1); columns M = T_d - depth.
 * The matrix is usable by a predictor only after certify() has passed, which
 * checks rank = depth + 1 + n.
 */
class ForwardDataMatrix {
public:
    ForwardDataMatrix(MatrixXd up, MatrixXd uf, MatrixXd yp, MatrixXd yf);

    const MatrixXd& up() const { return up_; }
    const MatrixXd& uf() const { return uf_; }
    const MatrixXd& yp() const { return yp_; }
    const MatrixXd& yf() const { return yf_; }
    int depth() const { return static_cast<int>(up_.rows()); }
    Eigen::Index columns() const { return up_.cols(); }

    /// [U_p; U_f; Y_p; Y_f]
    MatrixXd stacked() const;

    const RankReport& certify(int order, double tol = kDefaultRankTolerance);
    const std::optional<RankReport>& certification() const { return certification_; }
    bool certified() const { return certification_ && certification_->pass; }
    /// Throws CertificationError naming `what` unless certify() passed.
    void require_certified(const std::string& what) const;

private:
    MatrixXd up_;
    MatrixXd uf_;
    MatrixXd yp_;
    MatrixXd yf_;
    std::optional<RankReport> certification_;
};

/**
 * @brief Blocks for delayed input reconstruction.
 *
 * Input depth is depth + 1 over u (T_d samples); output depth is
 * depth + 1 + L over y (T_d + L samples), split as Y_p (depth) and Y_fL (1 + L).
 * The expected rank is the same depth + 1 + n as the forward case.
 */
class InverseDataMatrix {
public:
    InverseDataMatrix(MatrixXd up, MatrixXd uf, MatrixXd yp, MatrixXd yfl);

    const MatrixXd& up() const { return up_; }
    const MatrixXd& uf() const { return uf_; }
    const MatrixXd& yp() const { return yp_; }
    const MatrixXd& yfl() const { return yfl_; }
    int depth() const { return static_cast<int>(up_.rows()); }
    int delay() const { return static_cast<int>(yfl_.rows()) - 1; }
    Eigen::Index columns() const { return up_.cols(); }

    /// [U_p; U_f; Y_p; Y_fL]
    MatrixXd stacked() const;

    const RankReport& certify(int order, double tol = kDefaultRankTolerance);
    const std::optional<RankReport>& certification() const { return certification_; }
    bool certified() const { return certification_ && certification_->pass; }
    void require_certified(const std::string& what) const;

private:
    MatrixXd up_;
    MatrixXd uf_;
    MatrixXd yp_;
    MatrixXd yfl_;
    std::optional<RankReport> certification_;
};

/**
 * @brief Forward-shaped blocks of a controller trajectory.
 *
 * The controller's input is e = y - F y and its output is F u, so
 * E_p/E_f partition Hankel(e) and F_p/F_f partition Hankel(F u).
 */
struct ControllerDataMatrix {
    ForwardDataMatrix blocks;

    const MatrixXd& ep() const { return blocks.up(); }
    const MatrixXd& ef() const { return blocks.uf(); }
    const MatrixXd& fp() const { return blocks.yp(); }
    const MatrixXd& ff() const { return blocks.yf(); }
    int depth() const { return blocks.depth(); }

    const RankReport& certify(int order, double tol = kDefaultRankTolerance) { return blocks.certify(order, tol); }
    bool certified() const { return blocks.certified(); }
};

ForwardDataMatrix build_forward(const Trajectory& traj, int depth);
InverseDataMatrix build_inverse(const Trajectory& traj, int depth, int delay);
ControllerDataMatrix build_controller_matrix(const VectorXd& e, const VectorXd& ubar, int depth);

/// Rank of the forward matrix at one depth, with the order it implies.
struct RankProfileEntry {
    int depth;
    int rank;
    Eigen::Index rows;
    Eigen::Index columns;
    int implied_order; // rank - depth - 1
};

/// Forward-matrix rank for depth = 1..max_depth; a sanity check on the assumed order n.
std::vector<RankProfileEntry> rank_profile(const Trajectory& traj, int max_depth, double tol = kDefaultRankTolerance);

} // namespace ibc
