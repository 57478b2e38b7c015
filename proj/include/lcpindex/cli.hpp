// Copyright 2026 The lcpindex Authors
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

#ifndef LCPINDEX_CLI_HPP_
#define LCPINDEX_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace lcpindex::cli {

// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,        // bad arguments or configuration
  kDataError = 3,    // input data failed validation
  kInvariant = 4,    // internal invariant violated / verification failed
};

// Entry point behind the `lcpindex` binary. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lcpindex::cli

#endif  // LCPINDEX_CLI_HPP_
