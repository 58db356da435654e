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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "matchgp/common.hpp"
#include "tasks.hpp"

int main(int argc, char** argv) {
  CLI::App app{"matchgp: matchgate quantum Gaussian process toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out";
  uint64_t seed_flag = 0;
  bool seed_set = false;
  int threads = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config path")->required();
    sub->add_option("--seed", seed_flag, "seed override (mandatory here or in config)")
        ->each([&](const std::string&) { seed_set = true; });
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--threads", threads, "worker thread count (default: cores)");
  };

  const char* names[] = {"regress",         "classify", "bo",      "verify-moments",
                         "estimate-kernel", "psd-bench", "datasets"};
  for (const char* name : names) add_common(app.add_subcommand(name));

  CLI11_PARSE(app, argc, argv);

  if (threads > 0) matchgp::set_worker_threads(threads);

  std::ifstream f(config_path);
  if (!f) {
    std::cerr << "cannot open config: " << config_path << "\n";
    return 2;
  }
  matchgp::Json config;
  try {
    config = matchgp::Json::parse(f);
  } catch (const std::exception& e) {
    std::cerr << "config parse error: " << e.what() << "\n";
    return 2;
  }

  std::string task = app.get_subcommands().front()->get_name();
  if (config.contains("task") && config.at("task").get<std::string>() != task) {
    std::cerr << "config task does not match subcommand\n";
    return 2;
  }
  config["task"] = task;
  if (seed_set) config["seed"] = seed_flag;

  return matchgp::tasks::run(config, out_dir);
}
