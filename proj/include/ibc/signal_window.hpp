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

namespace ibc {

/// Fixed-length window of the most recent samples, oldest first, zero-initialized.
class SignalWindow {
public:
    explicit SignalWindow(Eigen::Index length) : values_(Eigen::VectorXd::Zero(length)) {}

    void push(double v)
    {
        const Eigen::Index n = values_.size();
        if (n == 0) return;
        for (Eigen::Index i = 0; i + 1 < n; ++i) {
            values_(i) = values_(i + 1);
        }
        values_(n - 1) = v;
    }

    void clear() { values_.setZero(); }

    const Eigen::VectorXd& values() const { return values_; }
    Eigen::Index size() const { return values_.size(); }

private:
    Eigen::VectorXd values_;
};

} // namespace ibc
