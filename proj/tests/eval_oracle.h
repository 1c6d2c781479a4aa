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


// Brute-force entity matcher used as an independent reference for Score().
// It re-derives entities from the raw tag strings by testing every
// (start, end) word pair and compares every gold/predicted pair.

#ifndef ARNER_TESTS_EVAL_ORACLE_H_
#define ARNER_TESTS_EVAL_ORACLE_H_

#include <cstddef>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "arner/corpus.h"

namespace arner::testing {

struct OracleCounts {
  std::size_t tp = 0, fp = 0, fn = 0;
  friend bool operator==(const OracleCounts&, const OracleCounts&) = default;
};

struct OracleResult {
  OracleCounts micro;
  std::map<std::string, OracleCounts> per_class;
};

using Triple = std::tuple<std::string, std::size_t, std::size_t>;

// Entities as (class, first word, last word). A run starts at "B-c", or at
// "I-c" whose left neighbour is not B-c/I-c, and extends over "I-c".
inline std::vector<Triple> OracleEntities(const std::vector<std::string>& tags) {
  auto cls_of = [](const std::string& t) { return t.size() > 2 ? t.substr(2) : std::string(); };
  auto continues = [&](std::size_t i, const std::string& c) {
    return i < tags.size() && tags[i] == "I-" + c;
  };
  std::vector<Triple> out;
  for (std::size_t s = 0; s < tags.size(); ++s) {
    const std::string c = cls_of(tags[s]);
    if (c.empty()) continue;
    const bool opens = tags[s][0] == 'B' ||
                       (s == 0 || (tags[s - 1] != "B-" + c && tags[s - 1] != "I-" + c));
    if (!opens) continue;
    for (std::size_t e = s; e < tags.size(); ++e) {
      bool inner = true;
      for (std::size_t k = s + 1; k <= e; ++k) inner = inner && continues(k, c);
      if (inner && !continues(e + 1, c)) out.emplace_back(c, s, e);
    }
  }
  return out;
}

inline OracleResult OracleScore(const std::vector<std::vector<std::string>>& gold,
                                const std::vector<std::vector<std::string>>& pred) {
  OracleResult r;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const auto g = OracleEntities(gold[i]);
    const auto p = OracleEntities(pred[i]);
    for (const auto& pt : p) {
      bool hit = false;
      for (const auto& gt : g) hit = hit || pt == gt;
      auto& c = r.per_class[std::get<0>(pt)];
      (hit ? c.tp : c.fp)++;
      (hit ? r.micro.tp : r.micro.fp)++;
    }
    for (const auto& gt : g) {
      bool hit = false;
      for (const auto& pt : p) hit = hit || pt == gt;
      if (!hit) {
        r.per_class[std::get<0>(gt)].fn++;
        r.micro.fn++;
      }
    }
  }
  return r;
}

inline std::vector<std::vector<std::string>> TagStrings(const Corpus& corpus) {
  std::vector<std::vector<std::string>> out;
  for (const auto& s : corpus.sentences) {
    std::vector<std::string> row;
    for (const auto& t : s.tags) row.push_back(t.ToString());
    out.push_back(std::move(row));
  }
  return out;
}

// Percentages from counts with zero denominators scoring 0.
inline std::tuple<double, double, double> OracleMetrics(const OracleCounts& c) {
  const double p = c.tp + c.fp == 0 ? 0.0 : 100.0 * c.tp / double(c.tp + c.fp);
  const double r = c.tp + c.fn == 0 ? 0.0 : 100.0 * c.tp / double(c.tp + c.fn);
  const double f = p + r == 0.0 ? 0.0 : 2 * p * r / (p + r);
  return {p, r, f};
}

}  // namespace arner::testing

#endif  // ARNER_TESTS_EVAL_ORACLE_H_
