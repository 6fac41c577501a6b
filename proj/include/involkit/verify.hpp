/*
   Copyright 2026 The involkit Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

// The acceptance suite: one exact, exhaustive or seeded check per claim.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "involkit/census.hpp"
#include "involkit/report.hpp"

namespace involkit {

struct ClaimInfo {
  std::string id;
  std::string summary;
  /// False for the claim recorded as out of reach; it always reports n/a.
  bool checkable = true;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  Exec exec = Exec::parallel;
};

/// In suite order.
const std::vector<ClaimInfo>& claims();

/// Throws ContractError for an unknown id. Never throws for a failing claim:
/// unexpected exceptions become a failed CheckResult.
CheckResult run_claim(std::string_view id, const VerifyOptions& options = {});

/// `all` or a single claim id.
Report run_suite(std::string_view which, const VerifyOptions& options = {});

}  // namespace involkit
