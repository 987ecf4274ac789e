// Copyright 2025-2026 The bbenc developers
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

#include <iosfwd>
#include <string>

namespace bbenc {

/// Run the named invariant suite; prints one line per check and a summary
/// table. Returns the number of failing checks. `inject_fault` perturbs
/// the named quantity inside the corresponding check (test plumbing for
/// the failure path).
int run_verify(std::ostream& out, const std::string& inject_fault = "");

}  // namespace bbenc
