// Copyright 2026 The Authors.
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

#pragma once

#include <stdexcept>
#include <string>

#include "stoplab/rational.hpp"

namespace stoplab {

// Raised when an exhaustive enumeration would visit more orders than the
// caller's budget allows. Carries the exact order count that was required.
class BudgetExceededError : public std::runtime_error {
 public:
  BudgetExceededError(BigInt required, std::int64_t budget)
      : std::runtime_error("enumeration requires " + required.str() + " orders, budget is " +
                           std::to_string(budget)),
        required_orders_(std::move(required)) {}

  const BigInt& required_orders() const { return required_orders_; }

 private:
  BigInt required_orders_;
};

}  // namespace stoplab
