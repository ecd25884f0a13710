// include/upit/metrics/report.h

// Copyright 2026  upitsep authors

// See ../../../COPYING for clarification regarding multiple authors
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

#ifndef UPIT_METRICS_REPORT_H_
#define UPIT_METRICS_REPORT_H_

#include <map>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "upit/metrics/evaluation.h"

namespace upit {

// Column id used for oracle-mask results.
inline constexpr const char *kOracleModelId = "IPSF";
// Evaluation SNRs always shown as table rows.
inline constexpr double kReportSnrsDb[] = {-5.0, 0.0, 5.0, 20.0};

struct CellKey {
  std::string model_id;
  std::string noise_id;
  double snr_db = 0.0;
  int num_speakers = 0;
  auto operator<=>(const CellKey &) const = default;
};

struct CellStats {
  int count = 0;
  double sdr_improvement_db = 0.0;
  double estoi_improvement = 0.0;
  double sdr_unprocessed = 0.0;
  double estoi_unprocessed = 0.0;
};

// Mean improvements per (model, noise, snr, speaker count) cell. Results
// without an SNR are filed under +inf. Throws on empty input.
std::map<CellKey, CellStats> Aggregate(std::span<const EvalResult> results);

// Tables shaped like the usual separation-results layout: one table per
// (metric, noise type), rows are input SNRs, and for 2- and 3-speaker
// mixtures the columns are No Proc. (absolute score of the unprocessed
// mixture) followed by the improvement of IPSF and of every model.
class Report {
 public:
  void Add(std::span<const EvalResult> results);
  bool empty() const { return results_.empty(); }

  std::map<CellKey, CellStats> cells() const;
  std::string RenderText() const;
  // metric,noise,speakers,snr_db,column,value,count
  std::string RenderDelimited() const;

 private:
  std::vector<EvalResult> results_;
};

// Full-scale reference figures shown under every text report.
std::string ReferenceFootnote();

}  // namespace upit

#endif  // UPIT_METRICS_REPORT_H_
