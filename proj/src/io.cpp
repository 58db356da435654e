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

#include "matchgp/io.hpp"

#include <cstdio>
#include <fstream>

namespace matchgp {

Json coeffs_to_json(const ModuleCoefficients& a) {
  Json entries = Json::array();
  for (int64_t r = 0; r < a.size(); ++r) {
    if (a.value(r) == 0.0) continue;
    entries.push_back({{"subset", a.index().subset(r)}, {"value", a.value(r)}});
  }
  return {{"n", a.n()}, {"m", a.m()}, {"entries", entries}};
}

ModuleCoefficients coeffs_from_json(const Json& j, CoeffKind kind) {
  ModuleCoefficients out(j.at("n").get<int>(), j.at("m").get<int>(), kind);
  for (const auto& e : j.at("entries")) {
    std::vector<int> subset = e.at("subset").get<std::vector<int>>();
    out.value(subset) = e.at("value").get<double>();
  }
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_row(const std::vector<double>& values) {
  std::string row;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) row += ",";
    row += format_double(values[i]);
  }
  return row;
}

Json gram_to_json(const KernelMatrix& k) {
  Json values = Json::array(), noise = Json::array();
  for (int64_t i = 0; i < k.size(); ++i) {
    Json row = Json::array(), nrow = Json::array();
    for (int64_t j = 0; j < k.size(); ++j) {
      row.push_back(k.values(i, j));
      nrow.push_back(k.noise_variance(i, j));
    }
    values.push_back(row);
    noise.push_back(nrow);
  }
  return {{"labels", k.labels}, {"values", values}, {"noise_variance", noise}};
}

std::string gram_to_csv(const KernelMatrix& k) {
  std::string out;
  for (size_t i = 0; i < k.labels.size(); ++i) {
    if (i) out += ",";
    out += k.labels[i];
  }
  out += "\n";
  for (int64_t i = 0; i < k.size(); ++i) {
    std::vector<double> row(k.size());
    for (int64_t j = 0; j < k.size(); ++j) row[j] = k.values(i, j);
    out += csv_row(row) + "\n";
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << content;
}

std::string config_hash(const Json& config) {
  std::string dump = config.dump();
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace matchgp
