// Copyright 2026 The ce_sampler Authors
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

// Runs every acceptance criterion and prints one PASS/FAIL line for each.
// Usage: acceptance_test [criterion ...]

#include <iostream>

#include "ce_sampler/acceptance.h"

int main(int argc, char** argv) {
  ce_sampler::AcceptanceOptions options;
  options.data_dir = CE_SAMPLER_DATA_DIR;
  for (int i = 1; i < argc; ++i) options.only.emplace_back(argv[i]);
  try {
    int failed = 0;
    for (const auto& r : ce_sampler::RunAcceptance(options)) {
      std::cout << ce_sampler::FormatResult(r) << std::endl;
      if (!r.passed) ++failed;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " failed")
              << std::endl;
    return failed == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "acceptance_test: " << e.what() << std::endl;
    return 2;
  }
}
