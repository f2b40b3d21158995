// Copyright 2026 The adcue Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef ADCUE_CLI_APP_H_
#define ADCUE_CLI_APP_H_

#include <ostream>

namespace adcue::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNumeric = 4;
inline constexpr int kExitInternal = 1;

// Parses arguments and runs one subcommand. Results go to `out`; failures
// are reported on `err` as {"error": kind, "message": ...}.
int Main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace adcue::cli

#endif  // ADCUE_CLI_APP_H_
