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


// Entity-level scoring with strict (class, word_start, word_end) matching.
// All metrics are percentages in [0, 100]; a zero denominator scores 0.

#ifndef ARNER_EVALUATION_H_
#define ARNER_EVALUATION_H_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "arner/corpus.h"
#include "arner/tags.h"

namespace arner {

struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  std::size_t support() const { return tp + fn; }
  std::size_t predicted() const { return tp + fp; }

  // Fills precision, recall and f1 from the counts.
  static Metrics FromCounts(std::size_t tp, std::size_t fp, std::size_t fn);

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

struct EvalReport {
  Metrics micro;
  // Every class with gold or predicted spans, keyed by name.
  std::map<std::string, Metrics> per_class;

  // Class names by gold support descending, then by name.
  std::vector<std::string> ColumnOrder() const;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

// Throws AlignmentError naming the first sentence (1-based) whose words
// differ, or the first sentence present in only one corpus.
EvalReport Score(const Corpus& gold, const Corpus& predicted);

// Per-sentence spans variant; the span lists of sentence i are compared
// with each other only.
EvalReport ScoreSpans(const std::vector<std::vector<EntitySpan>>& gold,
                      const std::vector<std::vector<EntitySpan>>& predicted);

// Fixed-width table: Recall, Precision and F1 rows; the micro column first,
// then classes in ColumnOrder() unless `micro_only`. One decimal place.
std::string RenderReport(const EvalReport& report, bool micro_only = false);

// One "key=value" per line: micro.precision, micro.recall, micro.f1,
// micro.tp, micro.fp, micro.fn, then class.<name>.<metric> for each class.
std::string ExportKeyValues(const EvalReport& report);

}  // namespace arner

#endif  // ARNER_EVALUATION_H_
