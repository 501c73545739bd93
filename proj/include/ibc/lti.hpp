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

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace ibc {

using Eigen::MatrixXd;
using Eigen::RowVectorXd;
using Eigen::VectorXd;

/**
 * @brief SISO rational transfer function, coefficients in descending powers.
 *
 * The same type serves continuous (variable s) and discrete (variable z)
 * systems; only the realization routines care which one is meant.
 * Leading zeros of the numerator are stripped on construction.
 */
class TransferFunction {
public:
    TransferFunction(std::vector<double> num, std::vector<double> den);

    const std::vector<double>& num() const { return num_; }
    const std::vector<double>& den() const { return den_; }

    /// Denominator degree, n(G).
    int order() const { return static_cast<int>(den_.size()) - 1; }

    /// Denominator degree minus numerator degree, L(G).
    int relative_degree() const { return static_cast<int>(den_.size() - num_.size()); }

    std::complex<double> evaluate(std::complex<double> x) const;

private:
    std::vector<double> num_;
    std::vector<double> den_;
};

/// Continuous-time SISO state space, dx/dt = A x + B u, y = C x + D u.
struct ContinuousStateSpace {
    MatrixXd A;
    MatrixXd B;
    MatrixXd C;
    MatrixXd D;

    int order() const { return static_cast<int>(A.rows()); }
    std::complex<double> evaluate(std::complex<double> s) const;
};

/**
 * @brief Discrete-time SISO state space with sampling period.
 *
 * x(t+1) = A x(t) + B u(t),  y(t) = C x(t) + D u(t).
 * A zero-order system (static gain) has empty A, B and C.
 */
class DiscreteStateSpace {
public:
    DiscreteStateSpace(MatrixXd A, MatrixXd B, MatrixXd C, MatrixXd D, double ts);

    const MatrixXd& A() const { return A_; }
    const MatrixXd& B() const { return B_; }
    const MatrixXd& C() const { return C_; }
    const MatrixXd& D() const { return D_; }
    double ts() const { return ts_; }
    double feedthrough() const { return D_(0, 0); }
    int order() const { return static_cast<int>(A_.rows()); }

    double spectral_radius() const;
    bool is_stable() const { return spectral_radius() < 1.0; }

    /// C (zI - A)^{-1} B + D
    std::complex<double> evaluate(std::complex<double> z) const;
    double dc_gain() const { return evaluate({1.0, 0.0}).real(); }

    /// Index of the first nonzero Markov parameter (D, CB, CAB, ...), or -1 for the zero system.
    int relative_degree(double rel_tol = 1e-10) const;

private:
    MatrixXd A_;
    MatrixXd B_;
    MatrixXd C_;
    MatrixXd D_;
    double ts_;
};

/// Stepwise evaluation of a DiscreteStateSpace; owns the state vector.
class StateSpaceRunner {
public:
    explicit StateSpaceRunner(const DiscreteStateSpace& sys);
    StateSpaceRunner(const DiscreteStateSpace& sys, VectorXd x0);

    /// y(t) for input u(t) without advancing.
    double output(double u) const;
    void advance(double u);
    /// output(u) followed by advance(u).
    double step(double u);

    const VectorXd& state() const { return x_; }
    void reset() { x_.setZero(); }

private:
    MatrixXd A_;
    VectorXd B_;
    RowVectorXd C_;
    double D_;
    VectorXd x_;
};

// Polynomial helpers, descending powers.
std::vector<double> poly_multiply(const std::vector<double>& a, const std::vector<double>& b);
std::vector<double> poly_power(const std::vector<double>& p, int k);
std::complex<double> poly_evaluate(const std::vector<double>& p, std::complex<double> x);
/// Roots via companion-matrix eigenvalues.
std::vector<std::complex<double>> poly_roots(const std::vector<double>& p);

/// Controllable canonical realization. Throws ConfigError for improper tf.
ContinuousStateSpace realize(const TransferFunction& tf);

/// Same canonical form, interpreted in z with sampling period ts.
DiscreteStateSpace realize_discrete(const TransferFunction& tf, double ts);

/// Zero-order-hold discretization through the augmented matrix exponential.
DiscreteStateSpace zoh_discretize(const ContinuousStateSpace& sys, double ts);

/// Characteristic-polynomial route back to a rational function in z.
TransferFunction transfer_function(const DiscreteStateSpace& sys);

/// Output for input u starting from state x0.
VectorXd simulate(const DiscreteStateSpace& sys, const VectorXd& u, const VectorXd& x0);
VectorXd simulate(const DiscreteStateSpace& sys, const VectorXd& u);

/// f(0) = D, f(k) = C A^{k-1} B.
VectorXd impulse_response(const DiscreteStateSpace& sys, std::size_t length);

/// Zero-initial-condition filtering; equal to the truncated convolution with the impulse response.
VectorXd filter_signal(const DiscreteStateSpace& filter, const VectorXd& v);

/**
 * @brief Low-pass filter F(z) = 1 / ((tau/Ts) z + (1 - tau/Ts))^L with unity DC gain.
 *
 * tau is a time constant in seconds; the pole 1 - Ts/tau is inside the unit
 * circle iff tau > Ts/2.
 */
struct ImcFilter {
    double tau;
    double ts;
    int order;
    TransferFunction tf;
    DiscreteStateSpace realization;
};

ImcFilter make_imc_filter(double tau, double ts, int order);

/// z^L F(z), biproper and therefore causal.
DiscreteStateSpace make_advanced_filter(double tau, double ts, int order);

} // namespace ibc
