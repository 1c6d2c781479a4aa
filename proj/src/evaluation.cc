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


#include "arner/evaluation.h"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <tuple>

#include "arner/error.h"

namespace arner {
namespace {

using SpanKey = std::tuple<std::string, std::size_t, std::size_t>;

std::set<SpanKey> Keys(const std::vector<EntitySpan>& spans) {
  std::set<SpanKey> keys;
  for (const auto& s : spans) {
    keys.emplace(s.entity_class.name(), s.word_start, s.word_end);
  }
  return keys;
}

double Percent(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

std::string OneDecimal(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

std::string FourDecimals(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

struct Counts {
  std::size_t tp = 0, fp = 0, fn = 0;
};

}  // namespace

Metrics Metrics::FromCounts(std::size_t tp, std::size_t fp, std::size_t fn) {
  Metrics m;
  m.tp = tp;
  m.fp = fp;
  m.fn = fn;
  m.precision = Percent(tp, tp + fp);
  m.recall = Percent(tp, tp + fn);
  const double sum = m.precision + m.recall;
  m.f1 = sum > 0.0 ? 2.0 * m.precision * m.recall / sum : 0.0;
  return m;
}

std::vector<std::string> EvalReport::ColumnOrder() const {
  std::vector<std::string> names;
  for (const auto& [name, m] : per_class) names.push_back(name);
  std::stable_sort(names.begin(), names.end(),
                   [&](const std::string& a, const std::string& b) {
                     return per_class.at(a).support() > per_class.at(b).support();
                   });
  return names;
}

EvalReport ScoreSpans(const std::vector<std::vector<EntitySpan>>& gold,
                      const std::vector<std::vector<EntitySpan>>& predicted) {
  if (gold.size() != predicted.size()) {
    throw AlignmentError("sentence " +
                         std::to_string(std::min(gold.size(), predicted.size()) + 1) +
                         " is missing from one side");
  }
  std::map<std::string, Counts> per_class;
  Counts total;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const auto g = Keys(gold[i]);
    const auto p = Keys(predicted[i]);
    for (const auto& key : p) {
      auto& c = per_class[std::get<0>(key)];
      if (g.contains(key)) {
        ++c.tp;
        ++total.tp;
      } else {
        ++c.fp;
        ++total.fp;
      }
    }
    for (const auto& key : g) {
      if (p.contains(key)) continue;
      ++per_class[std::get<0>(key)].fn;
      ++total.fn;
    }
  }
  EvalReport report;
  report.micro = Metrics::FromCounts(total.tp, total.fp, total.fn);
  for (const auto& [name, c] : per_class) {
    report.per_class.emplace(name, Metrics::FromCounts(c.tp, c.fp, c.fn));
  }
  return report;
}

EvalReport Score(const Corpus& gold, const Corpus& predicted) {
  const std::size_t n = std::min(gold.sentences.size(), predicted.sentences.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (gold.sentences[i].words != predicted.sentences[i].words) {
      throw AlignmentError("sentence " + std::to_string(i + 1) +
                           ": gold and predicted words differ");
    }
  }
  if (gold.sentences.size() != predicted.sentences.size()) {
    throw AlignmentError("sentence " + std::to_string(n + 1) + ": present in " +
                         (gold.sentences.size() > n ? "gold" : "predicted") +
                         " only (" + std::to_string(gold.sentences.size()) +
                         " gold vs " + std::to_string(predicted.sentences.size()) +
                         " predicted sentences)");
  }
  std::vector<std::vector<EntitySpan>> g, p;
  g.reserve(n);
  p.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.push_back(DecodeSpans(gold.sentences[i]));
    p.push_back(DecodeSpans(predicted.sentences[i]));
  }
  return ScoreSpans(g, p);
}

std::string RenderReport(const EvalReport& report, bool micro_only) {
  std::vector<std::string> headers{"micro"};
  std::vector<const Metrics*> columns{&report.micro};
  if (!micro_only) {
    for (const auto& name : report.ColumnOrder()) {
      headers.push_back(name);
      columns.push_back(&report.per_class.at(name));
    }
  }
  constexpr std::size_t kLabelWidth = 10;
  std::vector<std::size_t> widths;
  for (const auto& h : headers) widths.push_back(std::max<std::size_t>(h.size(), 5) + 2);

  auto pad_left = [](const std::string& s, std::size_t w) {
    return std::string(w > s.size() ? w - s.size() : 0, ' ') + s;
  };
  std::ostringstream out;
  out << std::string(kLabelWidth, ' ');
  for (std::size_t c = 0; c < headers.size(); ++c) out << pad_left(headers[c], widths[c]);
  out << '\n';
  const std::pair<const char*, double Metrics::*> rows[] = {
      {"Recall", &Metrics::recall},
      {"Precision", &Metrics::precision},
      {"F1", &Metrics::f1},
  };
  for (const auto& [label, field] : rows) {
    std::string l = label;
    out << l << std::string(kLabelWidth - l.size(), ' ');
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out << pad_left(OneDecimal(columns[c]->*field), widths[c]);
    }
    out << '\n';
  }
  return out.str();
}

std::string ExportKeyValues(const EvalReport& report) {
  std::ostringstream out;
  auto emit = [&](const std::string& prefix, const Metrics& m) {
    out << prefix << ".precision=" << FourDecimals(m.precision) << '\n'
        << prefix << ".recall=" << FourDecimals(m.recall) << '\n'
        << prefix << ".f1=" << FourDecimals(m.f1) << '\n'
        << prefix << ".tp=" << m.tp << '\n'
        << prefix << ".fp=" << m.fp << '\n'
        << prefix << ".fn=" << m.fn << '\n';
  };
  emit("micro", report.micro);
  for (const auto& [name, m] : report.per_class) {
    emit("class." + name, m);
    out << "class." << name << ".support=" << m.support() << '\n'
        << "class." << name << ".predicted=" << m.predicted() << '\n';
  }
  return out.str();
}

}  // namespace arner
