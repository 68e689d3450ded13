// Copyright 2026 The dualkit Authors
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

// Command-line front end. Lives in a library so that tests can drive it
// in-process (including manifest replay).

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace dualkit {

struct CliStreams {
  std::istream* in;
  std::ostream* out;
  std::ostream* err;
  // When true, outputs are digested but not written anywhere (used by
  // manifest replay).
  bool capture = false;
  // Filled with path → bytes for every output the command produced.
  std::map<std::string, std::string> outputs;
};

// args excludes the program name. Returns the process exit status.
int run_cli(const std::vector<std::string>& args, CliStreams& io);

}  // namespace dualkit
