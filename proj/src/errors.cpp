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
#include "ibc/errors.hpp"

#include <sstream>

namespace ibc {

namespace {

std::string describe(const std::string& matrix, int rank, int expected, const std::vector<double>& sv)
{
    std::ostringstream os;
    os << matrix << " data matrix has rank " << rank << ", expected " << expected << "; singular values:";
    os.precision(6);
    for (double s : sv) {
        os << ' ' << s;
    }
    return os.str();
}

} // namespace

CertificationError::CertificationError(std::string matrix, int rank, int expected, std::vector<double> singular_values)
    : std::runtime_error(describe(matrix, rank, expected, singular_values)),
      matrix_(std::move(matrix)),
      rank_(rank),
      expected_(expected),
      singular_values_(std::move(singular_values))
{
}

NumericalError::NumericalError(const std::string& what, std::size_t step)
    : std::runtime_error(what + " at step " + std::to_string(step)), step_(step)
{
}

} // namespace ibc
