#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corruptkit/severity.hpp"

namespace corruptkit {

/// Scores for easy, moderate, hard (in that order).
using SeverityScores = std::array<double, 3>;

enum class MetricDirection { kHigherBetter, kLowerBetter };

struct DetectionSummary {
  double mAP = 0.0;
  double mATE = 0.0;
  double mASE = 0.0;
  double mAOE = 0.0;
  double mAVE = 0.0;
  double mAAE = 0.0;
};

/// nuScenes detection score: (5 * mAP + sum(1 - min(1, mTP))) / 10.
/// Throws InvalidInput when mAP is outside [0, 1] or a TP error is negative
/// or non-finite.
double compute_nds(const DetectionSummary& d);

/// Corruption error in percent:
///   100 * sum_l (1 - candidate_l) / sum_l (1 - baseline_l).
/// Throws InvalidInput("degenerate baseline") when the baseline sum is 0.
double compute_ce(const SeverityScores& candidate, const SeverityScores& baseline);

/// Resilience rate in percent: 100 * sum_l candidate_l / (3 * clean).
/// Throws InvalidInput when clean <= 0.
double compute_rr(const SeverityScores& candidate, double clean);

struct ModelResults {
  double clean = 0.0;
  // corruption name -> severity -> value; cells may be missing until
  // aggregate() checks coverage.
  std::map<std::string, std::map<Severity, double>> corrupted;
};

struct BenchmarkResults {
  std::string metric = "NDS";
  MetricDirection direction = MetricDirection::kHigherBetter;
  // Required for lower-better metrics: values are mapped to 1 - m / scale.
  std::optional<double> reference_scale;
  std::vector<std::string> model_order;  // file order
  std::map<std::string, ModelResults> models;
};

/// Parses the results document:
///   {"metric": "NDS", "direction": "higher-better",
///    "models": {"DETR3D": {"clean": 0.4224,
///                          "corruptions": {"fog": {"easy": 0.3, ...}}}}}
/// "direction" defaults to higher-better; "reference_scale" is optional.
BenchmarkResults parse_results(std::string_view text);
BenchmarkResults load_results(const std::filesystem::path& path);

struct ModelRobustness {
  std::string name;
  double clean = 0.0;  // as reported, before any direction mapping
  std::vector<double> ce;  // aligned with RobustnessReport::corruptions
  std::vector<double> rr;
  double mce = 0.0;
  double mrr = 0.0;
};

struct RobustnessReport {
  std::string metric;
  std::string baseline;
  std::vector<std::string> corruptions;
  std::vector<ModelRobustness> models;  // results file order
};

inline constexpr std::string_view kDefaultBaseline = "DETR3D";

/// Corruptions are ordered as the built-in kinds first (Camera Crash, Frame
/// Lost, Color Quant, Motion Blur, Brightness, Dark, Fog, Snow), then any
/// other names alphabetically.
///
/// Throws InvalidInput when the baseline is absent (listing the available
/// models), a (corruption, severity) cell is missing, models disagree on the
/// corruption set, a value is non-finite, or a lower-better metric has no
/// reference scale.
RobustnessReport aggregate(const BenchmarkResults& results,
                           std::string_view baseline = kDefaultBaseline);

enum class ReportFormat { kCsv, kMarkdown };
enum class ReportTable { kCe, kRr };

std::optional<ReportFormat> parse_report_format(std::string_view name) noexcept;
std::optional<ReportTable> parse_report_table(std::string_view name) noexcept;

/// Columns: Model, <metric>, mCE, mRR, then one per corruption holding CE
/// (or RR). Percentages use two decimals, the clean metric four.
std::string render_report(const RobustnessReport& report, ReportFormat format,
                          ReportTable table = ReportTable::kCe);

struct ParsedTable {
  std::vector<std::string> header;
  std::vector<std::string> models;
  std::vector<std::vector<double>> cells;  // numeric columns after Model
};

/// Reads back the CSV produced by render_report.
ParsedTable parse_report_csv(std::string_view text);

}  // namespace corruptkit
