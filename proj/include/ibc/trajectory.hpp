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

#include <filesystem>
#include <iosfwd>
#include <string>

#include <Eigen/Dense>

namespace ibc {

/**
 * @brief Aligned input/output samples of one recorded experiment.
 *
 * For forward use u and y have equal length. Inverse-ready data carries
 * L extra output samples at the end (y is L samples longer than u).
 */
struct Trajectory {
    Eigen::VectorXd u;
    Eigen::VectorXd y;
    double ts = 1.0;
    std::string label;

    Eigen::Index input_length() const { return u.size(); }
    Eigen::Index output_length() const { return y.size(); }

    /// Equal-length view: y truncated to the input length.
    Trajectory forward_slice() const;
};

/// Shortest-safe text form used by every CSV writer: 17 significant digits.
std::string format_double(double v);

/// CSV with header `t,u,y`; a row past the end of the shorter signal leaves that field empty.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);

Trajectory read_trajectory_csv(std::istream& is);
Trajectory read_trajectory_csv(const std::filesystem::path& path);

} // namespace ibc
