// Copyright 2026 The pforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PFORGE_ERRORS_HPP
#define PFORGE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pforge {

/// Input outside the mathematical domain of an operation (modulus < 2, square D', ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A configured work cap was hit (continued-fraction period, retry loops).
/// Callers may retry with a larger cap.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation was violated by the caller.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

} // namespace pforge

#endif
