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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ibc {

/// Invalid argument, configuration value or data shape.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/**
 * @brief A data matrix did not reach its expected rank.
 *
 * Carries the full singular spectrum so callers can print a diagnostic.
 */
class CertificationError : public std::runtime_error {
public:
    CertificationError(std::string matrix, int rank, int expected, std::vector<double> singular_values);

    const std::string& matrix() const { return matrix_; }
    int rank() const { return rank_; }
    int expected() const { return expected_; }
    const std::vector<double>& singular_values() const { return singular_values_; }

private:
    std::string matrix_;
    int rank_;
    int expected_;
    std::vector<double> singular_values_;
};

/// A signal became non-finite during a closed-loop run.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, std::size_t step);

    std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

} // namespace ibc
