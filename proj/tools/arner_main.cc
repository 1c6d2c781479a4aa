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


// Command-line front end: tag, eval, split and serve.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "arner/corpus.h"
#include "arner/error.h"
#include "arner/evaluation.h"
#include "arner/pipeline.h"
#include "arner/service.h"

namespace {

namespace fs = std::filesystem;

struct ModelOptions {
  std::string config_path;
  std::string model;
  std::string approach;
  bool no_external = false;
};

void AddModelOptions(CLI::App* cmd, ModelOptions& opts) {
  cmd->add_option("--config", opts.config_path, "Service/model config (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--model", opts.model, "Model id (default: config default)");
  cmd->add_option("--approach", opts.approach, "Label alignment approach")
      ->check(CLI::IsMember({"all", "first"}));
  cmd->add_flag("--no-external-translit", opts.no_external,
                "Use the local Arabizi rules only");
}

arner::ServiceConfig LoadConfig(const ModelOptions& opts) {
  arner::ServiceConfig config = arner::LoadServiceConfig(opts.config_path);
  if (opts.no_external) arner::DisableExternalTransliteration(config);
  if (!opts.approach.empty()) {
    for (auto& [id, pc] : config.models) {
      pc.approach = opts.approach == "first"
                        ? arner::AlignmentApproach::kFirstSubtokenOnly
                        : arner::AlignmentApproach::kAllSubtokens;
    }
  }
  if (!opts.model.empty()) {
    if (!config.models.contains(opts.model)) {
      throw arner::ConfigError("model '" + opts.model + "' is not configured");
    }
    config.default_model = opts.model;
  }
  return config;
}

int RunTag(const ModelOptions& opts, const std::string& input,
           const std::string& output, bool conll_input) {
  const arner::ServiceConfig config = LoadConfig(opts);
  const arner::NerPipeline pipeline =
      arner::BuildPipeline(config.models.at(config.default_model));

  arner::Corpus corpus;
  corpus.source_name = input;
  if (conll_input) {
    // Gold tags are replaced; words are tagged as given.
    corpus = arner::ReadConllFile(input);
    for (auto& sentence : corpus.sentences) {
      sentence.tags = pipeline.TagWords(sentence.words);
    }
  }
  std::ifstream in(input, std::ios::binary);
  if (!in) throw arner::LoadError("cannot read " + input);
  std::string line;
  while (!conll_input && std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    arner::NerResult result = pipeline.Run(line);
    // A line without words has no CoNLL representation.
    if (result.words.empty()) continue;
    corpus.sentences.push_back(
        arner::MakeSentence(std::move(result.words), std::move(result.word_tags)));
  }

  if (output.empty() || output == "-") {
    arner::WriteConll(corpus, std::cout);
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) throw arner::LoadError("cannot write " + output);
    arner::WriteConll(corpus, out);
  }
  return 0;
}

int RunEval(const std::string& gold_path, const std::string& pred_path,
            const std::string& kv_path, bool micro_only) {
  const arner::Corpus gold = arner::ReadConllFile(gold_path);
  const arner::Corpus pred = arner::ReadConllFile(pred_path);
  const arner::EvalReport report = arner::Score(gold, pred);
  std::cout << arner::RenderReport(report, micro_only);
  if (!kv_path.empty()) {
    std::ofstream out(kv_path, std::ios::binary);
    if (!out) throw arner::LoadError("cannot write " + kv_path);
    out << arner::ExportKeyValues(report);
  }
  return 0;
}

int RunSplit(const std::string& input, const std::string& out_dir,
             std::array<int, 3> percents, std::uint64_t seed) {
  const arner::Corpus corpus = arner::ReadConllFile(input);
  const arner::CorpusSplit split = arner::Split(
      corpus, arner::SplitSpec::Percent(percents[0], percents[1], percents[2], seed));
  fs::create_directories(out_dir);
  const std::pair<const char*, const arner::Corpus*> parts[] = {
      {"train", &split.train}, {"eval", &split.eval}, {"test", &split.test}};
  for (const auto& [name, part] : parts) {
    const fs::path path = fs::path(out_dir) / (std::string(name) + ".conll");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw arner::LoadError("cannot write " + path.string());
    arner::WriteConll(*part, out);
    std::cout << name << ": " << part->sentences.size() << " sentences, "
              << part->TokenCount() << " tokens\n";
    for (const auto& [cls, count] : arner::ClassHistogram(*part)) {
      std::cout << "  " << cls << ' ' << count << '\n';
    }
  }
  return 0;
}

arner::HttpServer* g_server = nullptr;

void HandleSignal(int) {
  if (g_server != nullptr) g_server->Stop();
}

int RunServe(const ModelOptions& opts, const std::string& host, int port,
             const std::string& static_dir) {
  arner::ServiceConfig config = LoadConfig(opts);
  if (!host.empty()) config.host = host;
  if (port >= 0) config.port = port;
  if (!static_dir.empty()) config.static_dir = static_dir;
  auto service = std::make_shared<const arner::NerService>(config);
  arner::HttpServer server(service);
  const int bound = server.Bind(config.host, config.port);
  std::cerr << "listening on " << config.host << ':' << bound << '\n';
  g_server = &server;
  std::signal(SIGINT, HandleSignal);
  std::signal(SIGTERM, HandleSignal);
  server.Listen();
  g_server = nullptr;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arabic and Arabizi named entity recognition"};
  app.require_subcommand(1);

  ModelOptions tag_opts;
  std::string tag_input, tag_output;
  auto* tag = app.add_subcommand("tag", "Tag plain text, one sentence per line");
  AddModelOptions(tag, tag_opts);
  tag->add_option("input", tag_input, "Input text file")->required();
  tag->add_option("-o,--output", tag_output, "CoNLL output (default: stdout)");
  bool tag_conll = false;
  tag->add_flag("--conll", tag_conll,
                "Input is a CoNLL corpus; its words are retagged without normalization");

  std::string gold, pred, kv;
  bool micro_only = false;
  auto* eval = app.add_subcommand("eval", "Score predicted CoNLL against gold");
  eval->add_option("gold", gold, "Gold CoNLL file")->required();
  eval->add_option("predicted", pred, "Predicted CoNLL file")->required();
  eval->add_option("--kv", kv, "Also write key=value metrics to this file");
  eval->add_flag("--micro-only", micro_only, "Print the micro column only");

  std::string split_input, split_out = ".";
  std::array<int, 3> percents{80, 10, 10};
  std::uint64_t seed = 0;
  auto* split = app.add_subcommand("split", "Shuffle and split a CoNLL corpus");
  split->add_option("input", split_input, "CoNLL corpus")->required();
  split->add_option("--out-dir", split_out, "Directory for train/eval/test.conll");
  split->add_option("--train", percents[0], "Train percentage");
  split->add_option("--eval", percents[1], "Eval percentage");
  split->add_option("--test", percents[2], "Test percentage");
  split->add_option("--seed", seed, "Shuffle seed");

  ModelOptions serve_opts;
  std::string host, static_dir;
  int port = -1;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  AddModelOptions(serve, serve_opts);
  serve->add_option("--host", host, "Listen address (overrides config)");
  serve->add_option("--port", port, "Listen port (overrides config)");
  serve->add_option("--static", static_dir, "Directory served at /");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*tag) return RunTag(tag_opts, tag_input, tag_output, tag_conll);
    if (*eval) return RunEval(gold, pred, kv, micro_only);
    if (*split) return RunSplit(split_input, split_out, percents, seed);
    if (*serve) return RunServe(serve_opts, host, port, static_dir);
  } catch (const arner::AlignmentError& e) {
    std::cerr << "alignment error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
