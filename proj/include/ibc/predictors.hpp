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

#include <Eigen/Dense>

#include "ibc/hankel.hpp"

namespace ibc {

using Eigen::RowVectorXd;

/// Moore-Penrose pseudoinverse through the SVD, dropping singular values <= tol * sigma_max.
MatrixXd pseudo_inverse(const MatrixXd& a, double tol = kDefaultRankTolerance);

/// Minimum-norm least-squares solution of a x = b.
VectorXd min_norm_solve(const MatrixXd& a, const VectorXd& b, double tol = kDefaultRankTolerance);

/**
 * @brief One-step output predictor from a certified forward data matrix.
 *
 * y_pred = Y_f [U_p; U_f; Y_p]^+ col(u_ini, u_pred, y_ini). The row vector
 * Y_f [U_p; U_f; Y_p]^+ is formed once, so each prediction is a dot product.
 * The pseudoinverse uses the cutoff the matrix was certified with.
 */
class ForwardPredictor {
public:
    explicit ForwardPredictor(const ForwardDataMatrix& data);

    double predict(const Eigen::Ref<const VectorXd>& u_ini, double u_pred, const Eigen::Ref<const VectorXd>& y_ini) const;

    /// Minimum-norm g with [U_p; U_f; Y_p] g = col(u_ini, u_pred, y_ini) in the least-squares sense.
    VectorXd solution(const Eigen::Ref<const VectorXd>& u_ini, double u_pred, const Eigen::Ref<const VectorXd>& y_ini) const;

    /// Linear map on col(u_ini, u_pred, y_ini).
    const RowVectorXd& gain() const { return gain_; }
    const MatrixXd& pseudo_inverse() const { return pinv_; }
    const ForwardDataMatrix& data() const { return data_; }
    int depth() const { return data_.depth(); }

private:
    VectorXd window(const Eigen::Ref<const VectorXd>& u_ini, double u_pred, const Eigen::Ref<const VectorXd>& y_ini) const;

    ForwardDataMatrix data_;
    MatrixXd pinv_;
    RowVectorXd gain_;
};

/**
 * @brief Delayed input reconstruction from a certified inverse data matrix.
 *
 * Given u and y over [t-T_p-L, t-L-1] and y over [t-L, t], returns u(t-L):
 * U_f [U_p; Y_p; Y_fL]^+ col(u_ini, y_ini, y_pred).
 */
class InversePredictor {
public:
    explicit InversePredictor(const InverseDataMatrix& data);

    double predict(const Eigen::Ref<const VectorXd>& u_ini, const Eigen::Ref<const VectorXd>& y_ini,
                   const Eigen::Ref<const VectorXd>& y_pred) const;

    /// Linear map on col(u_ini, y_ini, y_pred).
    const RowVectorXd& gain() const { return gain_; }
    const InverseDataMatrix& data() const { return data_; }
    int depth() const { return data_.depth(); }
    int delay() const { return data_.delay(); }

private:
    InverseDataMatrix data_;
    RowVectorXd gain_;
};

} // namespace ibc
