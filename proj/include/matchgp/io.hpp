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

#include <json.hpp>
#include <string>

#include "matchgp/kernels.hpp"

namespace matchgp {

using Json = nlohmann::json;

/// {"n":..., "m":..., "entries":[{"subset":[...], "value":...}]}; structural
/// zeros (exact 0.0) are omitted.
Json coeffs_to_json(const ModuleCoefficients& a);
ModuleCoefficients coeffs_from_json(const Json& j, CoeffKind kind = CoeffKind::Observable);

Json gram_to_json(const KernelMatrix& k);
std::string gram_to_csv(const KernelMatrix& k);

/// Deterministic float formatting (%.17g); reruns are byte-identical.
std::string format_double(double v);
std::string csv_row(const std::vector<double>& values);

void write_text_file(const std::string& path, const std::string& content);

/// FNV-1a of the canonical config dump; namespaces output directories.
std::string config_hash(const Json& config);

}  // namespace matchgp
