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


#include "arner/service.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>

#include "arner/error.h"
#include "arner/utf8.h"
#include "httplib.h"

namespace arner {
namespace {

constexpr double kGoldenAngleDegrees = 137.50776405003785;

bool IsUnreserved(unsigned char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
         (c >= '0' && c <= '9') || c == '-' || c == '.' || c == '_' || c == '~';
}

int HexValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// h in degrees, s and l in [0, 1].
std::string HslToHex(double h, double s, double l) {
  const double c = (1.0 - std::fabs(2.0 * l - 1.0)) * s;
  const double hp = h / 60.0;
  const double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(hp) % 6) {
    case 0: r = c; g = x; break;
    case 1: r = x; g = c; break;
    case 2: g = c; b = x; break;
    case 3: g = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  const double m = l - c / 2.0;
  auto byte = [&](double v) {
    return static_cast<unsigned>(std::lround(std::clamp((v + m) * 255.0, 0.0, 255.0)));
  };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", byte(r), byte(g), byte(b));
  return buf;
}

ApiReply Fail(int status, std::string message) {
  return {status, {{"error", std::move(message)}}};
}

std::filesystem::path Resolve(const std::filesystem::path& base,
                              const std::string& p) {
  if (p.empty()) return {};
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

template <typename T>
T Get(const nlohmann::json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

PipelineConfig ParseModel(const std::string& id, const nlohmann::json& m,
                          const std::filesystem::path& base_dir) {
  if (!m.is_object()) throw ConfigError("model '" + id + "' must be an object");
  PipelineConfig pc;
  pc.model_id = id;
  pc.classes_file = Resolve(base_dir, Get<std::string>(m, "classes", ""));
  pc.vocabulary_file = Resolve(base_dir, Get<std::string>(m, "vocabulary", ""));
  if (pc.vocabulary_file.empty()) {
    throw ConfigError("model '" + id + "' has no vocabulary");
  }
  const auto kind = Get<std::string>(m, "classifier", "mock-hash");
  if (kind == "mock-hash") {
    pc.classifier = ClassifierKind::kMockHash;
  } else if (kind == "gazetteer") {
    pc.classifier = ClassifierKind::kGazetteer;
  } else if (kind == "external") {
    pc.classifier = ClassifierKind::kExternalModel;
  } else {
    throw ConfigError("model '" + id + "': unknown classifier '" + kind + "'");
  }
  pc.classifier_path = Resolve(base_dir, Get<std::string>(m, "path", ""));
  if (pc.classifier != ClassifierKind::kMockHash && pc.classifier_path.empty()) {
    throw ConfigError("model '" + id + "' needs a 'path' for its classifier");
  }
  if (pc.classifier != ClassifierKind::kExternalModel && pc.classes_file.empty()) {
    throw ConfigError("model '" + id + "' has no class list");
  }
  pc.mock_seed = Get<std::uint64_t>(m, "seed", 0);
  const auto approach = Get<std::string>(m, "approach", "all");
  if (approach == "all") {
    pc.approach = AlignmentApproach::kAllSubtokens;
  } else if (approach == "first") {
    pc.approach = AlignmentApproach::kFirstSubtokenOnly;
  } else {
    throw ConfigError("model '" + id + "': approach must be 'all' or 'first'");
  }
  pc.tokenizer.max_sequence_length =
      Get<std::size_t>(m, "max_sequence_length", pc.tokenizer.max_sequence_length);
  pc.tokenizer.window_stride =
      Get<std::size_t>(m, "window_stride", pc.tokenizer.window_stride);
  const auto overflow = Get<std::string>(m, "overflow", "window");
  if (overflow == "window") {
    pc.tokenizer.overflow = OverflowPolicy::kWindow;
  } else if (overflow == "truncate") {
    pc.tokenizer.overflow = OverflowPolicy::kTruncate;
  } else {
    throw ConfigError("model '" + id + "': overflow must be 'window' or 'truncate'");
  }
  pc.tokenizer.Validate();
  return pc;
}

}  // namespace

std::string WikipediaLink(std::string_view surface, std::string_view base) {
  if (surface.empty()) throw ContractError("cannot link an empty surface");
  std::string out(base);
  while (!out.empty() && out.back() == '/') out.pop_back();
  out += "/wiki/";
  for (unsigned char c : surface) {
    if (c == ' ') {
      out += '_';
    } else if (IsUnreserved(c)) {
      out += static_cast<char>(c);
    } else {
      char buf[4];
      std::snprintf(buf, sizeof buf, "%%%02X", c);
      out += buf;
    }
  }
  return out;
}

std::string PercentDecode(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '%' && i + 2 < text.size()) {
      const int hi = HexValue(text[i + 1]);
      const int lo = HexValue(text[i + 2]);
      if (hi >= 0 && lo >= 0) {
        out += static_cast<char>(hi * 16 + lo);
        i += 2;
        continue;
      }
    }
    out += text[i];
  }
  return out;
}

std::string ClassColor(const EntityClass& cls, const LabelInventory& inventory) {
  const std::size_t index = inventory.ClassIndex(cls);
  const double hue = std::fmod(static_cast<double>(index) * kGoldenAngleDegrees, 360.0);
  // Alternate lightness so neighbours in hue stay apart.
  const double lightness = index % 2 == 0 ? 0.72 : 0.62;
  return HslToHex(hue, 0.70, lightness);
}

void ServiceConfig::Validate() const {
  if (models.empty()) throw ConfigError("no models configured");
  if (max_request_chars == 0) throw ConfigError("max_request_chars must be positive");
  if (port < 0 || port > 65535) throw ConfigError("port out of range");
  if (!default_model.empty() && !models.contains(default_model)) {
    throw ConfigError("default model '" + default_model + "' is not configured");
  }
  for (const auto& [id, pc] : models) {
    if (id != pc.model_id) {
      throw ConfigError("model key '" + id + "' differs from its model id");
    }
  }
}

ServiceConfig ParseServiceConfig(const nlohmann::json& json,
                                 const std::filesystem::path& base_dir) {
  if (!json.is_object()) throw ConfigError("config must be a JSON object");
  ServiceConfig config;
  if (json.contains("listen")) {
    const auto& listen = json.at("listen");
    config.host = Get<std::string>(listen, "host", config.host);
    config.port = Get<int>(listen, "port", config.port);
  }
  config.max_request_chars =
      Get<std::size_t>(json, "max_request_chars", config.max_request_chars);
  config.wikipedia_base = Get<std::string>(json, "wikipedia_base", config.wikipedia_base);
  config.request_timeout = std::chrono::milliseconds(
      Get<std::int64_t>(json, "request_timeout_ms", config.request_timeout.count()));
  config.static_dir = Resolve(base_dir, Get<std::string>(json, "static_dir", ""));

  std::optional<ExternalTransliterationConfig> external;
  std::filesystem::path rules;
  if (json.contains("transliteration")) {
    const auto& t = json.at("transliteration");
    rules = Resolve(base_dir, Get<std::string>(t, "rules", ""));
    ExternalTransliterationConfig ext;
    ext.endpoint = Get<std::string>(t, "endpoint", "");
    ext.input_tool = Get<std::string>(t, "input_tool", ext.input_tool);
    ext.max_candidates = Get<std::size_t>(t, "max_candidates", ext.max_candidates);
    ext.max_in_flight = Get<std::size_t>(t, "max_in_flight", ext.max_in_flight);
    ext.timeout = std::chrono::milliseconds(
        Get<std::int64_t>(t, "timeout_ms", ext.timeout.count()));
    if (const char* env = std::getenv("ARNER_TRANSLIT_ENDPOINT"); env && *env) {
      ext.endpoint = env;
    }
    if (Get<bool>(t, "external", false)) {
      if (ext.endpoint.empty()) {
        throw ConfigError("external transliteration enabled without an endpoint");
      }
      external = ext;
    }
  }

  if (!json.contains("models") || !json.at("models").is_object()) {
    throw ConfigError("config needs a 'models' object");
  }
  for (const auto& [id, m] : json.at("models").items()) {
    PipelineConfig pc = ParseModel(id, m, base_dir);
    pc.external_transliteration = external;
    pc.transliteration_rules = rules;
    config.models.emplace(id, std::move(pc));
  }
  config.default_model = Get<std::string>(json, "default_model", "");
  if (config.default_model.empty() && !config.models.empty()) {
    config.default_model = config.models.begin()->first;
  }
  config.Validate();
  return config;
}

ServiceConfig LoadServiceConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config " + path.string());
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return ParseServiceConfig(json, path.parent_path());
}

void DisableExternalTransliteration(ServiceConfig& config) {
  for (auto& [id, pc] : config.models) pc.external_transliteration.reset();
}

NerService::NerService(const ServiceConfig& config) : config_(config) {
  config_.Validate();
  for (const auto& [id, pc] : config_.models) {
    pipelines_.emplace(id, std::make_shared<const NerPipeline>(BuildPipeline(pc)));
  }
  if (config_.default_model.empty()) config_.default_model = pipelines_.begin()->first;
}

NerService::NerService(
    const ServiceConfig& config,
    std::map<std::string, std::shared_ptr<const NerPipeline>> pipelines)
    : config_(config), pipelines_(std::move(pipelines)) {
  if (pipelines_.empty()) throw ConfigError("no models configured");
  if (config_.max_request_chars == 0) {
    throw ConfigError("max_request_chars must be positive");
  }
  if (config_.default_model.empty()) config_.default_model = pipelines_.begin()->first;
  if (!pipelines_.contains(config_.default_model)) {
    throw ConfigError("default model '" + config_.default_model + "' is not configured");
  }
}

ApiReply NerService::HandleNer(std::string_view body) const {
  try {
    const auto request = nlohmann::json::parse(body, nullptr, false);
    if (request.is_discarded() || !request.is_object()) {
      return Fail(400, "request body must be a JSON object");
    }
    const auto text_it = request.find("text");
    if (text_it == request.end() || !text_it->is_string()) {
      return Fail(400, "'text' must be a string");
    }
    std::string model_id = config_.default_model;
    if (const auto m = request.find("model"); m != request.end()) {
      if (!m->is_string()) return Fail(400, "'model' must be a string");
      model_id = m->get<std::string>();
    }
    const auto& text = text_it->get_ref<const std::string&>();
    const std::size_t chars = utf8::Length(text);
    if (chars > config_.max_request_chars) {
      return Fail(413, "text has " + std::to_string(chars) +
                           " characters; the limit is " +
                           std::to_string(config_.max_request_chars));
    }
    const auto pipeline = pipelines_.find(model_id);
    if (pipeline == pipelines_.end()) {
      return Fail(404, "unknown model '" + utf8::Sanitize(model_id) + "'");
    }

    const auto deadline = std::chrono::steady_clock::now() + config_.request_timeout;
    const NerResult result = pipeline->second->Run(text, deadline);
    const LabelInventory& inventory = pipeline->second->inventory();
    nlohmann::json entities = nlohmann::json::array();
    for (const auto& span : result.spans) {
      entities.push_back({{"surface", span.surface},
                          {"class", span.entity_class.name()},
                          {"start", span.char_start},
                          {"end", span.char_end},
                          {"url", WikipediaLink(span.surface, config_.wikipedia_base)},
                          {"color", ClassColor(span.entity_class, inventory)}});
    }
    return {200,
            {{"normalized", result.normalized},
             {"entities", std::move(entities)},
             {"model", result.model_id},
             {"ms", result.elapsed_ms}}};
  } catch (...) {
    return Fail(500, "internal error");
  }
}

ApiReply NerService::HandleModels() const {
  nlohmann::json ids = nlohmann::json::array();
  for (const auto& [id, p] : pipelines_) ids.push_back(id);
  return {200, {{"models", std::move(ids)}, {"default", config_.default_model}}};
}

struct HttpServer::Impl {
  std::shared_ptr<const NerService> service;
  httplib::Server server;
};

HttpServer::HttpServer(std::shared_ptr<const NerService> service)
    : impl_(std::make_unique<Impl>()) {
  impl_->service = std::move(service);
  auto& server = impl_->server;
  const NerService* svc = impl_->service.get();
  // SO_REUSEADDR only: the library default of SO_REUSEPORT would let a second
  // server bind a port that is already in use.
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });

  auto send = [](httplib::Response& res, const ApiReply& reply) {
    res.status = reply.status;
    res.set_content(reply.body.dump(-1, ' ', false,
                                    nlohmann::json::error_handler_t::replace),
                    "application/json; charset=utf-8");
  };
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  // Generous byte cap; the code point limit is enforced per request.
  server.set_payload_max_length(svc->config().max_request_chars * 16 + 65536);
  server.Post("/api/ner", [svc, send](const httplib::Request& req,
                                      httplib::Response& res) {
    send(res, svc->HandleNer(req.body));
  });
  server.Options("/api/ner", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
  server.Get("/api/models", [svc, send](const httplib::Request&,
                                        httplib::Response& res) {
    send(res, svc->HandleModels());
  });
  server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("ok", "text/plain");
  });
  if (!svc->config().static_dir.empty()) {
    server.set_mount_point("/", svc->config().static_dir.string());
  }
}

HttpServer::~HttpServer() { Stop(); }

int HttpServer::Bind(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
  } else if (!impl_->server.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) {
    throw ConfigError("cannot bind " + host + ":" + std::to_string(port));
  }
  return bound;
}

void HttpServer::Listen() { impl_->server.listen_after_bind(); }

void HttpServer::Stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

}  // namespace arner
