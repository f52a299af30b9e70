// Copyright 2026 The dpdda Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPDDA_TOOLS_PRESETS_H_
#define DPDDA_TOOLS_PRESETS_H_

#include <string>
#include <vector>

#include "config.h"

namespace dpdda::cli {

inline constexpr int kPresetVersion = 1;

struct PresetInfo {
  std::string name;
  std::string description;
};

std::vector<PresetInfo> ListPresets();

// Complete configuration document for a preset. Throws ConfigError for an
// unknown name.
Json PresetDocument(const std::string& name);

}  // namespace dpdda::cli

#endif  // DPDDA_TOOLS_PRESETS_H_
