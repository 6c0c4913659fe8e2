#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gisin/distill.hpp"
#include "gisin/engine.hpp"

namespace gisin {

/// Version tag written into every report document.
inline constexpr const char* kReportSchema = "gisin.report/1";

/// Shortest decimal that parses back to the identical double.
std::string format_double(double x);

nlohmann::json to_json(const Bipartition& p, std::size_t index);
nlohmann::json to_json(const Generator& g);
nlohmann::json to_json(const MeasurementSetting& s);
nlohmann::json to_json(const ViolationRecord& r);
nlohmann::json to_json(const Matrix& m);

/// {"kind", "dims", "tolerance", "verdict", "projection_count",
///  "best_violation", "best_index", "best", "records"}; records are omitted
/// when `with_records` is false.
nlohmann::json to_json(const SweepReport& report, bool with_records = true);
nlohmann::json to_json(const DistillWitness& witness);
nlohmann::json to_json(const TrialStatistics& stats);

struct PptEntry {
  Bipartition partition;
  std::size_t index = 0;
  PptResult result;
};
nlohmann::json to_json(const std::vector<PptEntry>& entries);

/// Flat "key,value" CSV of a JSON object; nested keys are joined with '.',
/// arrays use their element index. Numbers use format_double.
std::string flat_csv(const nlohmann::json& doc);

} // namespace gisin
