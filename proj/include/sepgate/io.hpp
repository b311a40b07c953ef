// Copyright 2026 The sepgate Authors
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

/**
 * @file io.hpp
 * JSON documents: protocol files, search configs and run reports.
 *
 * Complex numbers are [re, im] pairs. A protocol file has keys "dims",
 * "resource", "unitary", "kraus" (list of {"E", "F"}) and optional "meta".
 */
#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "sepgate/matrix.hpp"
#include "sepgate/protocol.hpp"
#include "sepgate/search.hpp"
#include "sepgate/tensor.hpp"

namespace sepgate {

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

/// Protocol documents. Parse failures raise ParseError naming the key path
/// (e.g. "kraus[3].E").
std::string protocol_to_json(const SepProtocol& p, int indent = 1);
SepProtocol protocol_from_json(std::string_view text);
SepProtocol load_protocol(const std::filesystem::path& path);
void save_protocol(const std::filesystem::path& path, const SepProtocol& p);

/// A bare state {"da", "db", "state"} or anything carrying "dims" and
/// "resource".
struct StateDocument {
  CMatrix state;
  std::size_t da = 0;
  std::size_t db = 0;
};
StateDocument state_from_json(std::string_view text);

/// {"dims", "unitary"}; protocol files qualify.
struct UnitaryDocument {
  CMatrix unitary;
  SpaceDims dims;
};
UnitaryDocument unitary_from_json(std::string_view text);

/// Numbers may be given as closed-form strings such as "2*acos(35/36)".
SearchConfig search_config_from_json(std::string_view text);
std::string search_config_to_json(const SearchConfig& config);

std::string report_to_json(const VerificationReport& r);
std::string search_result_to_json(const SearchResult& r);
std::string continuation_to_json(const ContinuationResult& r);

}  // namespace sepgate
