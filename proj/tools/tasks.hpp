// Copyright 2026 The matchgp developers
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

#pragma once

#include "matchgp/io.hpp"

namespace matchgp::tasks {

/// Runs one task config end to end; returns the process exit code.
/// 0 = ok, 2 = schema violation, 3 = numeric failure.
int run(const Json& config, const std::string& out_dir);

}  // namespace matchgp::tasks
