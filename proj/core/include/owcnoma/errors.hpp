// SPDX-License-Identifier: Apache-2.0
//
// owcnoma - laser-based optical wireless NOMA network simulator
// Copyright (C) 2026 The owcnoma Authors
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
#ifndef OWCNOMA_ERRORS_HPP
#define OWCNOMA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace owcnoma
{

// Invalid or inconsistent configuration values (zero AP rows, negative areas, ...).
class ConfigError : public std::invalid_argument
{
public:
    explicit ConfigError(const std::string &what) : std::invalid_argument(what) {}
};

// Geometry that makes an angle or distance undefined, e.g. a user sitting on an AP.
class GeometryError : public std::domain_error
{
public:
    explicit GeometryError(const std::string &what) : std::domain_error(what) {}
};

// Numerical failure inside a rate or solver evaluation.
class NumericError : public std::runtime_error
{
public:
    explicit NumericError(const std::string &what) : std::runtime_error(what) {}
};

// Raised by select_solution when every table cell has been masked.
class InfeasibleError : public std::runtime_error
{
public:
    explicit InfeasibleError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace owcnoma

#endif
