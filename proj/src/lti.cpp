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
#include "ibc/lti.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "ibc/errors.hpp"

namespace ibc {

namespace {

std::vector<double> strip_leading_zeros(std::vector<double> p)
{
    auto first = std::find_if(p.begin(), p.end(), [](double c) { return c != 0.0; });
    if (first == p.end()) {
        return {0.0};
    }
    p.erase(p.begin(), first);
    return p;
}

// Faddeev-LeVerrier; returns det(zI - A) in descending powers.
std::vector<double> characteristic_polynomial(const MatrixXd& A)
{
    const Eigen::Index n = A.rows();
    std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
    c[0] = 1.0;
    MatrixXd M = MatrixXd::Zero(n, n);
    const MatrixXd I = MatrixXd::Identity(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        M = A * M + c[static_cast<std::size_t>(k - 1)] * I;
        c[static_cast<std::size_t>(k)] = -(A * M).trace() / static_cast<double>(k);
    }
    return c;
}

void check_siso(const MatrixXd& A, const MatrixXd& B, const MatrixXd& C, const MatrixXd& D)
{
    const Eigen::Index n = A.rows();
    if (A.cols() != n || B.rows() != n || B.cols() != 1 || C.rows() != 1 || C.cols() != n || D.rows() != 1 ||
        D.cols() != 1) {
        throw ConfigError("state-space matrices have inconsistent SISO dimensions");
    }
}

} // namespace

TransferFunction::TransferFunction(std::vector<double> num, std::vector<double> den)
    : num_(strip_leading_zeros(std::move(num))), den_(std::move(den))
{
    if (den_.empty() || den_.front() == 0.0) {
        throw ConfigError("transfer function denominator must have a nonzero leading coefficient");
    }
    if (num_.size() > den_.size()) {
        throw ConfigError("transfer function is improper: numerator degree " + std::to_string(num_.size() - 1) +
                          " exceeds denominator degree " + std::to_string(den_.size() - 1));
    }
    for (double c : num_) {
        if (!std::isfinite(c)) throw ConfigError("transfer function numerator has a non-finite coefficient");
    }
    for (double c : den_) {
        if (!std::isfinite(c)) throw ConfigError("transfer function denominator has a non-finite coefficient");
    }
}

std::complex<double> TransferFunction::evaluate(std::complex<double> x) const
{
    return poly_evaluate(num_, x) / poly_evaluate(den_, x);
}

std::complex<double> ContinuousStateSpace::evaluate(std::complex<double> s) const
{
    const Eigen::Index n = A.rows();
    if (n == 0) {
        return D(0, 0);
    }
    using CMat = Eigen::MatrixXcd;
    CMat M = s * CMat::Identity(n, n) - A.cast<std::complex<double>>();
    CMat x = M.partialPivLu().solve(B.cast<std::complex<double>>());
    return (C.cast<std::complex<double>>() * x)(0, 0) + D(0, 0);
}

DiscreteStateSpace::DiscreteStateSpace(MatrixXd A, MatrixXd B, MatrixXd C, MatrixXd D, double ts)
    : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)), D_(std::move(D)), ts_(ts)
{
    check_siso(A_, B_, C_, D_);
    if (!(ts_ > 0.0)) {
        throw ConfigError("sampling period must be positive");
    }
}

double DiscreteStateSpace::spectral_radius() const
{
    if (A_.rows() == 0) {
        return 0.0;
    }
    return A_.eigenvalues().cwiseAbs().maxCoeff();
}

std::complex<double> DiscreteStateSpace::evaluate(std::complex<double> z) const
{
    return ContinuousStateSpace{A_, B_, C_, D_}.evaluate(z);
}

int DiscreteStateSpace::relative_degree(double rel_tol) const
{
    const int n = order();
    std::vector<double> markov;
    markov.push_back(D_(0, 0));
    VectorXd v = B_;
    for (int k = 1; k <= n; ++k) {
        markov.push_back((C_ * v)(0, 0));
        v = A_ * v;
    }
    double scale = 0.0;
    for (double m : markov) scale = std::max(scale, std::abs(m));
    if (scale == 0.0) {
        return -1;
    }
    for (std::size_t k = 0; k < markov.size(); ++k) {
        if (std::abs(markov[k]) > rel_tol * scale) {
            return static_cast<int>(k);
        }
    }
    return -1;
}

StateSpaceRunner::StateSpaceRunner(const DiscreteStateSpace& sys)
    : StateSpaceRunner(sys, VectorXd::Zero(sys.order()))
{
}

StateSpaceRunner::StateSpaceRunner(const DiscreteStateSpace& sys, VectorXd x0)
    : A_(sys.A()), B_(sys.B().col(0)), C_(sys.C().row(0)), D_(sys.feedthrough()), x_(std::move(x0))
{
    if (x_.size() != sys.order()) {
        throw ConfigError("initial state has dimension " + std::to_string(x_.size()) + ", system order is " +
                          std::to_string(sys.order()));
    }
}

double StateSpaceRunner::output(double u) const
{
    return C_.dot(x_) + D_ * u;
}

void StateSpaceRunner::advance(double u)
{
    x_ = A_ * x_ + B_ * u;
}

double StateSpaceRunner::step(double u)
{
    const double y = output(u);
    advance(u);
    return y;
}

std::vector<double> poly_multiply(const std::vector<double>& a, const std::vector<double>& b)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

std::vector<double> poly_power(const std::vector<double>& p, int k)
{
    std::vector<double> out{1.0};
    for (int i = 0; i < k; ++i) {
        out = poly_multiply(out, p);
    }
    return out;
}

std::complex<double> poly_evaluate(const std::vector<double>& p, std::complex<double> x)
{
    std::complex<double> acc{0.0, 0.0};
    for (double c : p) {
        acc = acc * x + c;
    }
    return acc;
}

std::vector<std::complex<double>> poly_roots(const std::vector<double>& p)
{
    const std::vector<double> q = strip_leading_zeros(p);
    const auto n = static_cast<Eigen::Index>(q.size()) - 1;
    if (n <= 0) {
        return {};
    }
    MatrixXd companion = MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        companion(0, j) = -q[static_cast<std::size_t>(j) + 1] / q[0];
    }
    for (Eigen::Index i = 1; i < n; ++i) {
        companion(i, i - 1) = 1.0;
    }
    const Eigen::VectorXcd ev = companion.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

ContinuousStateSpace realize(const TransferFunction& tf)
{
    const int n = tf.order();
    const double lead = tf.den().front();
    std::vector<double> a(tf.den());
    for (double& c : a) c /= lead;
    std::vector<double> b(static_cast<std::size_t>(n) + 1, 0.0);
    std::copy(tf.num().begin(), tf.num().end(), b.end() - static_cast<std::ptrdiff_t>(tf.num().size()));
    for (double& c : b) c /= lead;

    ContinuousStateSpace ss{MatrixXd::Zero(n, n), MatrixXd::Zero(n, 1), MatrixXd::Zero(1, n), MatrixXd::Constant(1, 1, b[0])};
    for (int i = 0; i + 1 < n; ++i) {
        ss.A(i, i + 1) = 1.0;
    }
    for (int j = 0; j < n; ++j) {
        const auto k = static_cast<std::size_t>(n - j);
        ss.A(n - 1, j) = -a[k];
        ss.C(0, j) = b[k] - a[k] * b[0];
    }
    if (n > 0) {
        ss.B(n - 1, 0) = 1.0;
    }
    return ss;
}

DiscreteStateSpace realize_discrete(const TransferFunction& tf, double ts)
{
    ContinuousStateSpace ss = realize(tf);
    return {std::move(ss.A), std::move(ss.B), std::move(ss.C), std::move(ss.D), ts};
}

DiscreteStateSpace zoh_discretize(const ContinuousStateSpace& sys, double ts)
{
    check_siso(sys.A, sys.B, sys.C, sys.D);
    if (!(ts > 0.0)) {
        throw ConfigError("sampling period must be positive");
    }
    const Eigen::Index n = sys.A.rows();
    if (n == 0) {
        return {sys.A, sys.B, sys.C, sys.D, ts};
    }
    // exp([[A, B], [0, 0]] ts) = [[Ad, Bd], [0, 1]]
    MatrixXd aug = MatrixXd::Zero(n + 1, n + 1);
    aug.topLeftCorner(n, n) = sys.A;
    aug.topRightCorner(n, 1) = sys.B;
    const MatrixXd e = (aug * ts).exp();
    return {e.topLeftCorner(n, n), e.topRightCorner(n, 1), sys.C, sys.D, ts};
}

TransferFunction transfer_function(const DiscreteStateSpace& sys)
{
    // det(zI - A + BC) = det(zI - A) (1 + C (zI - A)^{-1} B)
    const std::vector<double> den = characteristic_polynomial(sys.A());
    const std::vector<double> closed = characteristic_polynomial(sys.A() - sys.B() * sys.C());
    std::vector<double> num(den.size());
    double scale = 0.0;
    for (std::size_t i = 0; i < den.size(); ++i) {
        num[i] = sys.feedthrough() * den[i] + closed[i] - den[i];
        scale = std::max(scale, std::abs(num[i]));
    }
    for (double& c : num) {
        if (std::abs(c) <= 1e-12 * scale) c = 0.0;
    }
    return {num, den};
}

VectorXd simulate(const DiscreteStateSpace& sys, const VectorXd& u, const VectorXd& x0)
{
    StateSpaceRunner runner(sys, x0);
    VectorXd y(u.size());
    for (Eigen::Index k = 0; k < u.size(); ++k) {
        y(k) = runner.step(u(k));
    }
    return y;
}

VectorXd simulate(const DiscreteStateSpace& sys, const VectorXd& u)
{
    return simulate(sys, u, VectorXd::Zero(sys.order()));
}

VectorXd impulse_response(const DiscreteStateSpace& sys, std::size_t length)
{
    VectorXd impulse = VectorXd::Zero(static_cast<Eigen::Index>(length));
    if (length > 0) {
        impulse(0) = 1.0;
    }
    return simulate(sys, impulse);
}

VectorXd filter_signal(const DiscreteStateSpace& filter, const VectorXd& v)
{
    return simulate(filter, v);
}

namespace {

std::vector<double> filter_denominator(double tau, double ts, int order)
{
    if (!(ts > 0.0)) {
        throw ConfigError("sampling period must be positive");
    }
    if (order < 1) {
        throw ConfigError("filter order must be at least 1");
    }
    if (!(tau > ts / 2.0)) {
        throw ConfigError("filter time constant " + std::to_string(tau) + " s gives a pole outside the unit circle; need tau > Ts/2 = " +
                          std::to_string(ts / 2.0) + " s");
    }
    const double ratio = tau / ts;
    return poly_power({ratio, 1.0 - ratio}, order);
}

// Cascade of identical first-order sections. The canonical form of (a z + b)^L
// loses digits of the DC gain once the pole sits close to 1.
DiscreteStateSpace filter_cascade(double tau, double ts, int order, bool advanced)
{
    const double ratio = tau / ts;
    const double pole = 1.0 - 1.0 / ratio;
    MatrixXd A = MatrixXd::Zero(order, order);
    MatrixXd B = MatrixXd::Zero(order, 1);
    MatrixXd C = MatrixXd::Zero(1, order);
    // section k: x_k+ = pole x_k + in_k, out_k = c x_k + d in_k
    const double c = advanced ? pole / ratio : 1.0 / ratio;
    const double d = advanced ? 1.0 / ratio : 0.0;
    for (int k = 0; k < order; ++k) {
        A(k, k) = pole;
        // in_k = out_{k-1} = c x_{k-1} + d in_{k-1}, expanded back to the first input
        double gain = 1.0;
        for (int j = k - 1; j >= 0; --j) {
            A(k, j) = gain * c;
            gain *= d;
        }
        B(k, 0) = gain;
    }
    double gain = 1.0;
    for (int j = order - 1; j >= 0; --j) {
        C(0, j) = gain * c;
        gain *= d;
    }
    return {std::move(A), std::move(B), std::move(C), MatrixXd::Constant(1, 1, gain), ts};
}

} // namespace

ImcFilter make_imc_filter(double tau, double ts, int order)
{
    TransferFunction tf({1.0}, filter_denominator(tau, ts, order));
    DiscreteStateSpace ss = filter_cascade(tau, ts, order, false);
    return {tau, ts, order, std::move(tf), std::move(ss)};
}

DiscreteStateSpace make_advanced_filter(double tau, double ts, int order)
{
    filter_denominator(tau, ts, order); // validation
    return filter_cascade(tau, ts, order, true);
}

} // namespace ibc
