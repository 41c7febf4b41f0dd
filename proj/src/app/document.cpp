// Copyright 2026-present the qfluid project
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

#include <chrono>
#include <cstdlib>
#include <ctime>

#include "qfluid/app/commands.hpp"

namespace qfluid::app {

std::string utc_timestamp() {
  if (const char* fixed = std::getenv("QFLUID_TIMESTAMP"); fixed && *fixed) return fixed;
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json make_document(std::string_view schema, Json config, Json result) {
  Json doc;
  doc["schema"] = schema;
  doc["config"] = std::move(config);
  doc["result"] = std::move(result);
  doc["provenance"] = {{"tool", kToolName}, {"version", kToolVersion}, {"timestamp", utc_timestamp()}};
  return doc;
}

Json payload_without_timestamp(const Json& doc) {
  Json copy = doc;
  if (copy.contains("provenance")) copy["provenance"].erase("timestamp");
  return copy;
}

}  // namespace qfluid::app
