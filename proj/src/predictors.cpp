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
#include "ibc/predictors.hpp"

#include "ibc/errors.hpp"

namespace ibc {

MatrixXd pseudo_inverse(const MatrixXd& a, double tol)
{
    if (a.size() == 0) {
        return MatrixXd::Zero(a.cols(), a.rows());
    }
    Eigen::JacobiSVD<MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const VectorXd& s = svd.singularValues();
    const int r = numerical_rank(s, tol);
    if (r == 0) {
        return MatrixXd::Zero(a.cols(), a.rows());
    }
    const VectorXd inv = s.head(r).cwiseInverse();
    return svd.matrixV().leftCols(r) * inv.asDiagonal() * svd.matrixU().leftCols(r).transpose();
}

VectorXd min_norm_solve(const MatrixXd& a, const VectorXd& b, double tol)
{
    if (b.size() != a.rows()) {
        throw ConfigError("right-hand side has " + std::to_string(b.size()) + " entries, matrix has " +
                          std::to_string(a.rows()) + " rows");
    }
    return pseudo_inverse(a, tol) * b;
}

ForwardPredictor::ForwardPredictor(const ForwardDataMatrix& data) : data_(data)
{
    data_.require_certified("forward");
    MatrixXd a(2 * data_.depth() + 1, data_.columns());
    a << data_.up(), data_.uf(), data_.yp();
    pinv_ = ibc::pseudo_inverse(a, data_.certification()->tolerance);
    gain_ = data_.yf() * pinv_;
}

VectorXd ForwardPredictor::window(const Eigen::Ref<const VectorXd>& u_ini, double u_pred,
                                  const Eigen::Ref<const VectorXd>& y_ini) const
{
    const int tp = depth();
    if (u_ini.size() != tp || y_ini.size() != tp) {
        throw ConfigError("forward prediction needs windows of length " + std::to_string(tp));
    }
    VectorXd w(2 * tp + 1);
    w << u_ini, u_pred, y_ini;
    return w;
}

double ForwardPredictor::predict(const Eigen::Ref<const VectorXd>& u_ini, double u_pred,
                                 const Eigen::Ref<const VectorXd>& y_ini) const
{
    const int tp = depth();
    if (u_ini.size() != tp || y_ini.size() != tp) {
        throw ConfigError("forward prediction needs windows of length " + std::to_string(tp));
    }
    return gain_.head(tp).dot(u_ini) + gain_(tp) * u_pred + gain_.tail(tp).dot(y_ini);
}

VectorXd ForwardPredictor::solution(const Eigen::Ref<const VectorXd>& u_ini, double u_pred,
                                    const Eigen::Ref<const VectorXd>& y_ini) const
{
    return pinv_ * window(u_ini, u_pred, y_ini);
}

InversePredictor::InversePredictor(const InverseDataMatrix& data) : data_(data)
{
    data_.require_certified("inverse");
    MatrixXd a(2 * data_.depth() + 1 + data_.delay(), data_.columns());
    a << data_.up(), data_.yp(), data_.yfl();
    gain_ = data_.uf() * ibc::pseudo_inverse(a, data_.certification()->tolerance);
}

double InversePredictor::predict(const Eigen::Ref<const VectorXd>& u_ini, const Eigen::Ref<const VectorXd>& y_ini,
                                 const Eigen::Ref<const VectorXd>& y_pred) const
{
    const int tp = depth();
    const int l = delay();
    if (u_ini.size() != tp || y_ini.size() != tp || y_pred.size() != l + 1) {
        throw ConfigError("inverse prediction needs windows of length " + std::to_string(tp) + ", " +
                          std::to_string(tp) + " and " + std::to_string(l + 1));
    }
    return gain_.head(tp).dot(u_ini) + gain_.segment(tp, tp).dot(y_ini) + gain_.tail(l + 1).dot(y_pred);
}

} // namespace ibc
