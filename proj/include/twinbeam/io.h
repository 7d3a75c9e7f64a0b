// Copyright 2026 The twinbeam Authors
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

#ifndef TWINBEAM_IO_H
#define TWINBEAM_IO_H

#include <nlohmann/json.hpp>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "twinbeam/detector.h"
#include "twinbeam/fock_state.h"
#include "twinbeam/probe_homodyne.h"
#include "twinbeam/spdc.h"

namespace twinbeam {

/// 15 significant digits, scientific notation.
std::string format_double(double value);

/// {"terms":[{"occ":[m,n,r,s],"re":...,"im":...}, ...]}
nlohmann::json state_to_json(const FockState &s);
FockState state_from_json(const nlohmann::json &j);

/// {"windows":[{"class":m,"lower":x|null,"upper":x|null}, ...]}; null marks an infinite bound.
nlohmann::json windows_to_json(const WindowTable &w);
WindowTable windows_from_json(const nlohmann::json &j);

/// Header "i,c_i,P_i,cumP".
std::string records_to_csv(const std::vector<IterationRecord> &records);
std::vector<IterationRecord> records_from_csv(std::string_view csv);
/// [{"i":..,"c_i":..,"P_i":..,"cumP":..}, ...]
nlohmann::json records_to_json(const std::vector<IterationRecord> &records);
std::vector<IterationRecord> records_from_json(const nlohmann::json &j);

/// Header "n,p_n".
std::string distribution_to_csv(const PairDistribution &d);
std::vector<double> distribution_from_csv(std::string_view csv);

/// Header "x,declared_class".
std::string samples_to_csv(const std::vector<std::pair<double, int>> &samples);
std::vector<std::pair<double, int>> samples_from_csv(std::string_view csv);

}  // namespace twinbeam

#endif
