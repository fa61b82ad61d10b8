// Copyright 2026 The entlab developers
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

#ifndef ENTLAB_SERIALIZE_HPP
#define ENTLAB_SERIALIZE_HPP

#include <string>

#include <json.hpp>

#include "entlab/bhm.hpp"
#include "entlab/entreduce.hpp"
#include "entlab/forrelation.hpp"
#include "entlab/protocol.hpp"

namespace entlab {

using json = nlohmann::json;

/// Complex matrices travel as base64 over little-endian row-major
/// (re, im) double pairs, alongside explicit row/col counts.

std::string base64_encode(const unsigned char* data, size_t len);
std::vector<unsigned char> base64_decode(const std::string& text);

json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

json rational_to_json(const Rational& r);  // {"num": "...", "den": "..."} decimal strings
Rational rational_from_json(const json& j);

// Protocol IR documents carry a "kind" discriminator and a schema version.

json to_json(const SmpQuantumProtocol& p);
json to_json(const OneWayEntangledProtocol& p);
json to_json(const TwoWayEntangledProtocol& p);
SmpQuantumProtocol smp_from_json(const json& j);
OneWayEntangledProtocol one_way_from_json(const json& j);
TwoWayEntangledProtocol two_way_from_json(const json& j);

// Problem instances; +-1 vectors travel as 0/1 bitstrings (0 maps to +1).

json to_json(const ForrInstance& inst);
json to_json(const ForrXorInstance& inst);
ForrInstance forr_instance_from_json(const json& j);
ForrXorInstance forr_xor_from_json(const json& j);

json to_json(const Matching& m);
json to_json(const BhmInstance& inst);
json to_json(const HardDistributionSpec& spec);
Matching matching_from_json(const json& j);
BhmInstance bhm_instance_from_json(const json& j);
HardDistributionSpec hard_spec_from_json(const json& j);

json to_json(const Decomposition& dec);
json to_json(const DecompositionReport& report);

std::string bits_to_string(uint32_t bits, int n);
uint32_t bits_from_string(const std::string& s);
std::string signs_to_string(const std::vector<int>& v);
std::vector<int> signs_from_string(const std::string& s);

}  // namespace entlab

#endif
