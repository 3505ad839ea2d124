// SPDX-License-Identifier: Apache-2.0
//
// relaymimo: hybrid-detection massive MIMO relay uplink toolkit
// Copyright (C) 2026 The relaymimo authors
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

#ifndef RELAYMIMO_ERRORS_HPP
#define RELAYMIMO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace relaymimo
{

// Invalid scenario parameters or a malformed config file.
class ConfigError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Base for failures of the numerical pipeline (CLI exit code 3).
class NumericalError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// The K x K equivalent channel W_a*G*H is not safely invertible.
class SingularEquivalentChannel : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

// Monte-Carlo run discarded too many degenerate draws.
class ExcessiveSingularDraws : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

// Power-allocation search ran out of iterations.
class NonConvergence : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

} // namespace relaymimo

#endif
