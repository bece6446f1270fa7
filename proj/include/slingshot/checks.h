// Copyright 2026 The Slingshot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SLINGSHOT_CHECKS_H_
#define SLINGSHOT_CHECKS_H_

#include <string>
#include <vector>

namespace slingshot {

// Compiled-in invariant suites runnable from the CLI: "gradients",
// "projection", "contraction", "slingshot". Each prints one line per
// sub-check and returns false on any violation.
bool RunCheckSuite(const std::string& name);

std::vector<std::string> CheckSuiteNames();

}  // namespace slingshot

#endif  // SLINGSHOT_CHECKS_H_
