// Copyright 2026 The Namesake Authors
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

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "namesake/error.hpp"
#include "namesake/training.hpp"

namespace namesake {
namespace {

using json = nlohmann::json;

std::string Fnv1a64Hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json FullCountsToJson(const std::map<std::size_t, std::uint64_t>& table) {
  json obj = json::object();
  for (const auto& [index, count] : table) obj[std::to_string(index)] = count;
  return obj;
}

json ModelBody(const RatioModel& model) {
  json dims_m = json::array();
  json dims_n = json::array();
  for (std::size_t d = 0; d < kProfileDims; ++d) {
    dims_m.push_back(model.dim_counts_m[d]);
    dims_n.push_back(model.dim_counts_n[d]);
  }
  json body = {
      {"format_version", kModelFormatVersion},
      {"schema_version", model.schema_version},
      {"alpha", model.alpha},
      {"min_count", model.min_count},
      {"total_m", model.total_m},
      {"total_n", model.total_n},
      {"full_counts_m", FullCountsToJson(model.full_counts_m)},
      {"full_counts_n", FullCountsToJson(model.full_counts_n)},
      {"dim_counts_m", std::move(dims_m)},
      {"dim_counts_n", std::move(dims_n)},
      {"config", model.config_json.empty() ? json(nullptr) : json::parse(model.config_json)},
  };
  return body;
}

[[noreturn]] void Corrupt(const std::string& what) {
  throw Error(Errc::kCorruptModel, what);
}

std::map<std::size_t, std::uint64_t> FullCountsFromJson(const json& obj) {
  if (!obj.is_object()) Corrupt("full counts must be an object");
  std::map<std::size_t, std::uint64_t> table;
  for (const auto& [key, value] : obj.items()) {
    std::size_t pos = 0;
    std::size_t index = 0;
    try {
      index = std::stoull(key, &pos);
    } catch (const std::exception&) {
      Corrupt("full counts key '" + key + "' is not an index");
    }
    if (pos != key.size() || !value.is_number_unsigned()) {
      Corrupt("full counts entry '" + key + "' is malformed");
    }
    table[index] = value.get<std::uint64_t>();
  }
  return table;
}

}  // namespace

std::string ModelChecksum(const RatioModel& model) {
  return Fnv1a64Hex(ModelBody(model).dump());
}

std::string SerializeModel(const RatioModel& model) {
  json doc = ModelBody(model);
  doc["checksum"] = Fnv1a64Hex(doc.dump());
  return doc.dump() + "\n";
}

RatioModel DeserializeModel(const std::string& bytes) {
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::parse_error& e) {
    Corrupt(std::string("model is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) Corrupt("model document must be an object");
  const auto version = doc.find("format_version");
  if (version == doc.end() || !version->is_number_integer()) Corrupt("missing format_version");
  if (version->get<int>() != kModelFormatVersion) {
    throw Error(Errc::kFormatVersionUnsupported,
                "model format_version " + version->dump() + " is not supported");
  }
  const auto checksum = doc.find("checksum");
  if (checksum == doc.end() || !checksum->is_string()) Corrupt("missing checksum");
  const std::string stored = checksum->get<std::string>();
  doc.erase("checksum");
  if (Fnv1a64Hex(doc.dump()) != stored) Corrupt("checksum mismatch");

  RatioModel model;
  try {
    model.schema_version = doc.at("schema_version").get<int>();
    model.alpha = doc.at("alpha").get<double>();
    model.min_count = doc.at("min_count").get<std::uint64_t>();
    model.total_m = doc.at("total_m").get<std::uint64_t>();
    model.total_n = doc.at("total_n").get<std::uint64_t>();
    model.full_counts_m = FullCountsFromJson(doc.at("full_counts_m"));
    model.full_counts_n = FullCountsFromJson(doc.at("full_counts_n"));
    const json& dims_m = doc.at("dim_counts_m");
    const json& dims_n = doc.at("dim_counts_n");
    if (!dims_m.is_array() || !dims_n.is_array() || dims_m.size() != kProfileDims ||
        dims_n.size() != kProfileDims) {
      Corrupt("dim counts must hold one table per dimension");
    }
    for (std::size_t d = 0; d < kProfileDims; ++d) {
      model.dim_counts_m[d] = dims_m[d].get<std::vector<std::uint64_t>>();
      model.dim_counts_n[d] = dims_n[d].get<std::vector<std::uint64_t>>();
    }
    if (const auto config = doc.find("config"); config != doc.end() && !config->is_null()) {
      model.config_json = config->dump();
    }
  } catch (const json::exception& e) {
    Corrupt(std::string("malformed model field: ") + e.what());
  }
  model.Validate();
  return model;
}

void SaveModel(const RatioModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::kIo, "cannot open '" + path + "' for writing");
  out << SerializeModel(model);
  if (!out) throw Error(Errc::kIo, "failed writing '" + path + "'");
}

RatioModel LoadModel(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIo, "cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return DeserializeModel(buffer.str());
}

}  // namespace namesake
