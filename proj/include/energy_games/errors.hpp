/*
 * Copyright 2026 The energy-games Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eg {

/// Malformed or semantically invalid input (game files, CLI arguments that
/// name a game, generator parameters).
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Syntax error in a game file; carries the 1-based line number.
class ParseError : public InputError {
  public:
    ParseError(std::size_t line, const std::string& what)
        : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

/// An operation was called outside its precondition, or an internal
/// guarantee (e.g. preprocessing finiteness) did not hold.
class ContractViolation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// A modified weight was requested on an endpoint whose potential is top.
class InfinitePotential : public ContractViolation {
  public:
    InfinitePotential() : ContractViolation("infinite potential") {}
};

/// Delta returned +inf: no finite lift exists, so the game was not
/// preprocessed (a Min-forced negative cycle is still present).
class UnboundedLift : public ContractViolation {
  public:
    UnboundedLift() : ContractViolation("unbounded lift - preprocessing contract violated") {}
};

/// The step budget of a DKZ run ran out.
class BudgetExhausted : public std::runtime_error {
  public:
    explicit BudgetExhausted(std::size_t budget)
        : std::runtime_error("step budget of " + std::to_string(budget) + " exhausted") {}
};

/// Requested operation does not scale to the given game size.
class SizeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace eg
