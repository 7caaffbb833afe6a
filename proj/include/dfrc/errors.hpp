// SPDX-License-Identifier: Apache-2.0
//
// dfrc-latency: min-max latency power allocation for DFRC roadside units
// Copyright (C) 2026 dfrc-latency contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef DFRC_ERRORS_HPP
#define DFRC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dfrc
{

// Input outside the mathematical domain of an operation (negative power, angle outside (0, pi), ...)
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// No power allocation can satisfy the constraints. `deficit_w` is the amount of
// power missing (0 when the failure is not a power-budget shortfall).
class InfeasibleError : public std::runtime_error
{
public:
    explicit InfeasibleError(const std::string &what, double deficit_w = 0.0)
        : std::runtime_error(what), deficit_w_(deficit_w) {}
    double deficit_w() const noexcept { return deficit_w_; }

private:
    double deficit_w_;
};

// Caller used an allocator outside its contract (e.g. closed form with unequal payloads)
class ContractError : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

class ConvergenceError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Scenario / sweep file problems. line and column are 1-based, 0 when unknown.
class ConfigError : public std::runtime_error
{
public:
    ConfigError(const std::string &what, int line = 0, int column = 0)
        : std::runtime_error(what), line_(line), column_(column) {}
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

} // namespace dfrc

#endif
