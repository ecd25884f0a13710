// src/metrics/report.cc

// Copyright 2026  upitsep authors

// See ../../COPYING for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "upit/metrics/report.h"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

#include "upit/error.h"

namespace upit {

namespace {

constexpr int kSpeakerCounts[] = {2, 3};

double SnrKey(const EvalResult &r) {
  return r.snr_db ? *r.snr_db : std::numeric_limits<double>::infinity();
}

std::string FormatSnr(double snr) {
  if (std::isinf(snr)) return "clean";
  std::ostringstream os;
  os << snr << " dB";
  return os.str();
}

std::string FormatValue(double v, Metric m) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), m == Metric::kSdr ? "%.2f" : "%.3f", v);
  return buf;
}

// Column order: IPSF first, then models in order of first appearance.
std::vector<std::string> ModelColumns(const std::vector<EvalResult> &results) {
  std::vector<std::string> cols;
  bool oracle = false;
  for (const EvalResult &r : results) {
    if (r.model_id == kOracleModelId) {
      oracle = true;
      continue;
    }
    if (std::find(cols.begin(), cols.end(), r.model_id) == cols.end())
      cols.push_back(r.model_id);
  }
  if (oracle) cols.insert(cols.begin(), kOracleModelId);
  return cols;
}

// Unprocessed scores depend only on the data, so pool them across models.
struct Baseline {
  int count = 0;
  double sdr = 0.0, estoi = 0.0;
};

std::map<std::tuple<std::string, double, int>, Baseline> Baselines(
    const std::vector<EvalResult> &results) {
  std::map<std::tuple<std::string, double, int>, Baseline> out;
  std::set<std::tuple<std::string, std::string, double, int>> seen;
  for (const EvalResult &r : results) {
    const double snr = SnrKey(r);
    if (!seen.insert({r.utterance_id, r.noise_id, snr, r.num_speakers}).second)
      continue;
    Baseline &b = out[{r.noise_id, snr, r.num_speakers}];
    ++b.count;
    b.sdr += (r.sdr_unprocessed_mean() - b.sdr) / b.count;
    b.estoi += (r.estoi_unprocessed_mean() - b.estoi) / b.count;
  }
  return out;
}

}  // namespace

std::map<CellKey, CellStats> Aggregate(std::span<const EvalResult> results) {
  Require(!results.empty(), ErrorKind::kInvalidArgument, "Aggregate: no results");
  std::map<CellKey, CellStats> cells;
  for (const EvalResult &r : results) {
    CellStats &c = cells[{r.model_id, r.noise_id, SnrKey(r), r.num_speakers}];
    ++c.count;
    const double n = c.count;
    c.sdr_improvement_db += (r.sdr_improvement_db - c.sdr_improvement_db) / n;
    c.estoi_improvement += (r.estoi_improvement - c.estoi_improvement) / n;
    c.sdr_unprocessed += (r.sdr_unprocessed_mean() - c.sdr_unprocessed) / n;
    c.estoi_unprocessed += (r.estoi_unprocessed_mean() - c.estoi_unprocessed) / n;
  }
  return cells;
}

void Report::Add(std::span<const EvalResult> results) {
  results_.insert(results_.end(), results.begin(), results.end());
}

std::map<CellKey, CellStats> Report::cells() const { return Aggregate(results_); }

std::string Report::RenderText() const {
  Require(!results_.empty(), ErrorKind::kInvalidArgument, "Report: no results");
  const auto cells = this->cells();
  const auto baselines = Baselines(results_);
  const std::vector<std::string> models = ModelColumns(results_);
  std::set<std::string> noises;
  std::set<double> snrs(std::begin(kReportSnrsDb), std::end(kReportSnrsDb));
  for (const EvalResult &r : results_) {
    noises.insert(r.noise_id);
    snrs.insert(SnrKey(r));
  }

  std::ostringstream os;
  const int w = 10;
  for (Metric metric : {Metric::kSdr, Metric::kEstoi}) {
    for (const std::string &noise : noises) {
      os << MetricName(metric) << " improvement, noise: "
         << (noise.empty() ? "none" : noise) << "\n";
      os << std::setw(8) << "";
      for (int spk : kSpeakerCounts) {
        std::ostringstream head;
        head << spk << "-speaker";
        os << " | " << std::left << std::setw(w * (1 + models.size()))
           << head.str() << std::right;
      }
      os << "\n" << std::setw(8) << "SNR";
      for (int spk : kSpeakerCounts) {
        (void)spk;
        os << " | " << std::setw(w) << "No Proc.";
        for (const std::string &m : models) os << std::setw(w) << m;
      }
      os << "\n";
      for (double snr : snrs) {
        os << std::setw(8) << FormatSnr(snr);
        for (int spk : kSpeakerCounts) {
          os << " | ";
          auto b = baselines.find({noise, snr, spk});
          if (b == baselines.end()) {
            os << std::setw(w) << "-";
          } else {
            os << std::setw(w)
               << FormatValue(metric == Metric::kSdr ? b->second.sdr : b->second.estoi,
                              metric);
          }
          for (const std::string &m : models) {
            auto c = cells.find({m, noise, snr, spk});
            if (c == cells.end()) {
              os << std::setw(w) << "-";
            } else {
              const double v = metric == Metric::kSdr ? c->second.sdr_improvement_db
                                                      : c->second.estoi_improvement;
              os << std::setw(w) << FormatValue(v, metric);
            }
          }
        }
        os << "\n";
      }
      os << "\n";
    }
  }
  os << ReferenceFootnote();
  return os.str();
}

std::string Report::RenderDelimited() const {
  std::ostringstream os;
  os << "metric,noise,speakers,snr_db,column,value,count\n";
  const auto write = [&](Metric m, const std::string &noise, int spk, double snr,
                         const std::string &col, double v, int n) {
    os << MetricName(m) << ',' << noise << ',' << spk << ',';
    if (std::isinf(snr)) {
      os << "inf";
    } else {
      os << snr;
    }
    os << ',' << col << ',' << std::setprecision(10) << v << ',' << n << '\n';
  };
  for (const auto &[key, b] : Baselines(results_)) {
    const auto &[noise, snr, spk] = key;
    write(Metric::kSdr, noise, spk, snr, "No Proc.", b.sdr, b.count);
    write(Metric::kEstoi, noise, spk, snr, "No Proc.", b.estoi, b.count);
  }
  for (const auto &[key, c] : cells()) {
    write(Metric::kSdr, key.noise_id, key.num_speakers, key.snr_db, key.model_id,
          c.sdr_improvement_db, c.count);
    write(Metric::kEstoi, key.noise_id, key.num_speakers, key.snr_db, key.model_id,
          c.estoi_improvement, c.count);
  }
  return os.str();
}

std::string ReferenceFootnote() {
  return "Reference (full-scale models, matched noise, averaged over SNRs):\n"
         "  2-speaker: SDR improvement +9.1 dB, ESTOI improvement +0.18\n"
         "  3-speaker: SDR improvement +7.2 dB, ESTOI improvement +0.13\n";
}

}  // namespace upit
