// Copyright 2026 The arner Authors.
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


// HTTP front end for configured pipelines.
//
//   POST /api/ner    {"text": string, "model": string}
//                 -> {"normalized": string,
//                     "entities": [{"surface", "class", "start", "end",
//                                   "url", "color"}],
//                     "model": string, "ms": number}
//   GET  /api/models -> {"models": [string], "default": string}
//   GET  /healthz    -> 200 "ok"
//
// Errors carry {"error": message}: 400 malformed request, 404 unknown model,
// 413 text over the configured limit, 500 pipeline failure.

#ifndef ARNER_SERVICE_H_
#define ARNER_SERVICE_H_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "arner/pipeline.h"
#include "arner/tags.h"
#include "json.hpp"

namespace arner {

inline constexpr std::string_view kDefaultWikipediaBase = "https://ar.wikipedia.org";

// base + "/wiki/" + the surface with spaces as '_' and every byte outside the
// RFC 3986 unreserved set percent-encoded. Throws ContractError if empty.
std::string WikipediaLink(std::string_view surface,
                          std::string_view base = kDefaultWikipediaBase);

// Inverse of the percent-encoding step. Malformed escapes are kept verbatim.
std::string PercentDecode(std::string_view text);

// "#rrggbb" with hue stepped by the golden angle over the class index.
// Throws InventoryError for a class outside the inventory.
std::string ClassColor(const EntityClass& cls, const LabelInventory& inventory);

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  // Keyed by model id; each PipelineConfig::model_id matches its key.
  std::map<std::string, PipelineConfig> models;
  // Used when a request names no model. Defaults to the first id.
  std::string default_model;
  // Code points.
  std::size_t max_request_chars = 10000;
  std::string wikipedia_base = std::string(kDefaultWikipediaBase);
  std::chrono::milliseconds request_timeout{5000};
  // Served at "/" when set.
  std::filesystem::path static_dir;

  // Throws ConfigError.
  void Validate() const;
};

// JSON config file. Relative paths resolve against the file's directory. The
// ARNER_TRANSLIT_ENDPOINT environment variable overrides the configured
// transliteration endpoint. Throws ConfigError.
ServiceConfig LoadServiceConfig(const std::filesystem::path& path);
ServiceConfig ParseServiceConfig(const nlohmann::json& json,
                                 const std::filesystem::path& base_dir);

// Drops the external transliteration backend from every model.
void DisableExternalTransliteration(ServiceConfig& config);

struct ApiReply {
  int status = 200;
  nlohmann::json body;
};

class NerService {
 public:
  // Builds every pipeline up front; throws LoadError or ConfigError.
  explicit NerService(const ServiceConfig& config);
  // Uses prebuilt pipelines keyed by model id.
  NerService(const ServiceConfig& config,
             std::map<std::string, std::shared_ptr<const NerPipeline>> pipelines);

  // Never throws.
  ApiReply HandleNer(std::string_view body) const;
  ApiReply HandleModels() const;

  const ServiceConfig& config() const { return config_; }

 private:
  ServiceConfig config_;
  std::map<std::string, std::shared_ptr<const NerPipeline>> pipelines_;
};

// Blocking HTTP server around a NerService.
class HttpServer {
 public:
  explicit HttpServer(std::shared_ptr<const NerService> service);
  ~HttpServer();

  // Binds host:port (port 0 picks a free one) and returns the bound port.
  // Throws ConfigError if the address cannot be bound.
  int Bind(const std::string& host, int port);
  // Serves until Stop().
  void Listen();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace arner

#endif  // ARNER_SERVICE_H_
