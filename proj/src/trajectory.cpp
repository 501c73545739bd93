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
#include "ibc/trajectory.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "ibc/errors.hpp"

namespace ibc {

Trajectory Trajectory::forward_slice() const
{
    if (y.size() < u.size()) {
        throw ConfigError("trajectory output is shorter than its input");
    }
    return {u, y.head(u.size()), ts, label};
}

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj)
{
    os << "t,u,y\n";
    const Eigen::Index rows = std::max(traj.u.size(), traj.y.size());
    for (Eigen::Index k = 0; k < rows; ++k) {
        os << format_double(static_cast<double>(k) * traj.ts) << ',';
        if (k < traj.u.size()) os << format_double(traj.u(k));
        os << ',';
        if (k < traj.y.size()) os << format_double(traj.y(k));
        os << '\n';
    }
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw ConfigError("cannot open " + path.string() + " for writing");
    }
    write_trajectory_csv(os, traj);
}

namespace {

double parse_field(const std::string& s, std::size_t line)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) {
        throw ConfigError("trajectory CSV line " + std::to_string(line) + ": bad number '" + s + "'");
    }
    return v;
}

} // namespace

Trajectory read_trajectory_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line)) {
        throw ConfigError("trajectory CSV is empty");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "t,u,y") {
        throw ConfigError("trajectory CSV header must be 't,u,y', got '" + line + "'");
    }
    std::vector<double> t;
    std::vector<double> u;
    std::vector<double> y;
    bool u_ended = false;
    bool y_ended = false;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        if (line.back() == ',') fields.emplace_back();
        if (fields.size() != 3) {
            throw ConfigError("trajectory CSV line " + std::to_string(lineno) + ": expected 3 fields");
        }
        t.push_back(parse_field(fields[0], lineno));
        if (fields[1].empty()) {
            u_ended = true;
        } else if (u_ended) {
            throw ConfigError("trajectory CSV line " + std::to_string(lineno) + ": gap in u column");
        } else {
            u.push_back(parse_field(fields[1], lineno));
        }
        if (fields[2].empty()) {
            y_ended = true;
        } else if (y_ended) {
            throw ConfigError("trajectory CSV line " + std::to_string(lineno) + ": gap in y column");
        } else {
            y.push_back(parse_field(fields[2], lineno));
        }
    }
    if (u.empty() || y.empty()) {
        throw ConfigError("trajectory CSV needs at least one u and one y sample");
    }
    Trajectory traj;
    traj.u = Eigen::Map<const Eigen::VectorXd>(u.data(), static_cast<Eigen::Index>(u.size()));
    traj.y = Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
    traj.ts = t.size() >= 2 ? t[1] - t[0] : 1.0;
    if (!(traj.ts > 0.0)) {
        throw ConfigError("trajectory CSV time column must be increasing");
    }
    return traj;
}

Trajectory read_trajectory_csv(const std::filesystem::path& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        throw ConfigError("cannot open " + path.string());
    }
    Trajectory traj = read_trajectory_csv(is);
    traj.label = path.filename().string();
    return traj;
}

} // namespace ibc
