#include "corruptkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "corruptkit/error.hpp"

namespace corruptkit {

double compute_nds(const DetectionSummary& d) {
  if (!(d.mAP >= 0.0 && d.mAP <= 1.0)) throw InvalidInput("mAP must be in [0, 1]");
  double tp_score = 0.0;
  for (double err : {d.mATE, d.mASE, d.mAOE, d.mAVE, d.mAAE}) {
    if (!(err >= 0.0) || !std::isfinite(err)) throw InvalidInput("TP errors must be finite and >= 0");
    tp_score += 1.0 - std::min(1.0, err);
  }
  return (5.0 * d.mAP + tp_score) / 10.0;
}

double compute_ce(const SeverityScores& candidate, const SeverityScores& baseline) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t l = 0; l < 3; ++l) {
    num += 1.0 - candidate[l];
    den += 1.0 - baseline[l];
  }
  if (den == 0.0) throw InvalidInput("degenerate baseline");
  return 100.0 * num / den;
}

double compute_rr(const SeverityScores& candidate, double clean) {
  if (!(clean > 0.0)) throw InvalidInput("clean score must be > 0");
  return 100.0 * (candidate[0] + candidate[1] + candidate[2]) / (3.0 * clean);
}

BenchmarkResults parse_results(std::string_view text) {
  using ordered = nlohmann::ordered_json;
  BenchmarkResults out;
  try {
    const ordered doc = ordered::parse(text);
    out.metric = doc.value("metric", std::string("NDS"));
    const std::string dir = doc.value("direction", std::string("higher-better"));
    if (dir == "higher-better") {
      out.direction = MetricDirection::kHigherBetter;
    } else if (dir == "lower-better") {
      out.direction = MetricDirection::kLowerBetter;
    } else {
      throw InvalidInput("results: direction must be higher-better or lower-better, got '" + dir + "'");
    }
    if (const auto it = doc.find("reference_scale"); it != doc.end() && !it->is_null()) {
      out.reference_scale = it->get<double>();
    }
    for (const auto& [name, body] : doc.at("models").items()) {
      ModelResults model;
      model.clean = body.at("clean").get<double>();
      for (const auto& [corruption, levels] : body.at("corruptions").items()) {
        auto& cells = model.corrupted[corruption];
        for (const auto& [level, value] : levels.items()) {
          const auto sev = parse_severity(level);
          if (!sev) throw InvalidInput("results: unknown severity '" + level + "' for " + name + "/" + corruption);
          cells[*sev] = value.get<double>();
        }
      }
      if (!out.models.emplace(name, std::move(model)).second) {
        throw InvalidInput("results: duplicate model '" + name + "'");
      }
      out.model_order.push_back(name);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("results: ") + e.what());
  }
  return out;
}

BenchmarkResults load_results(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open results file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_results(buf.str());
}

namespace {

std::vector<std::string> ordered_corruptions(const std::set<std::string>& names) {
  static constexpr CorruptionKind kTableOrder[] = {
      CorruptionKind::kCameraCrash, CorruptionKind::kFrameLost,  CorruptionKind::kColorQuant,
      CorruptionKind::kMotionBlur,  CorruptionKind::kBrightness, CorruptionKind::kDark,
      CorruptionKind::kFog,         CorruptionKind::kSnow};
  std::vector<std::string> out;
  for (auto k : kTableOrder) {
    const std::string name(to_string(k));
    if (names.contains(name)) out.push_back(name);
  }
  for (const auto& n : names) {
    if (!parse_kind(n)) out.push_back(n);
  }
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

}  // namespace

RobustnessReport aggregate(const BenchmarkResults& results, std::string_view baseline_name) {
  const auto base_it = results.models.find(std::string(baseline_name));
  if (base_it == results.models.end()) {
    throw InvalidInput("baseline '" + std::string(baseline_name) + "' not in results; available models: " +
                       join(results.model_order));
  }

  // Lower-better metrics are mapped to goodness 1 - m / scale.
  std::function<double(double)> goodness = [](double v) { return v; };
  if (results.direction == MetricDirection::kLowerBetter) {
    if (!results.reference_scale || !std::isfinite(*results.reference_scale) || !(*results.reference_scale > 0.0)) {
      throw InvalidInput("metric '" + results.metric +
                         "' is lower-better; CE/RR need a positive finite reference_scale");
    }
    const double scale = *results.reference_scale;
    goodness = [scale](double v) { return 1.0 - v / scale; };
  }

  std::set<std::string> names;
  for (const auto& [corruption, cells] : base_it->second.corrupted) names.insert(corruption);
  const auto corruptions = ordered_corruptions(names);

  auto scores_of = [&](const std::string& model, const ModelResults& m, const std::string& corruption) {
    const auto it = m.corrupted.find(corruption);
    if (it == m.corrupted.end()) {
      throw InvalidInput("missing cell " + model + "/" + corruption + " (all severities)");
    }
    SeverityScores s{};
    for (auto sev : kAllSeverities) {
      const auto cell = it->second.find(sev);
      if (cell == it->second.end()) {
        throw InvalidInput("missing cell " + model + "/" + corruption + "/" + std::string(to_string(sev)));
      }
      if (!std::isfinite(cell->second)) {
        throw InvalidInput("non-finite value in " + model + "/" + corruption + "/" + std::string(to_string(sev)));
      }
      s[static_cast<std::size_t>(sev)] = goodness(cell->second);
    }
    return s;
  };

  RobustnessReport report;
  report.metric = results.metric;
  report.baseline = std::string(baseline_name);
  report.corruptions = corruptions;

  for (const auto& name : results.model_order) {
    const ModelResults& model = results.models.at(name);
    for (const auto& [corruption, cells] : model.corrupted) {
      if (!names.contains(corruption)) {
        throw InvalidInput("model " + name + " has corruption '" + corruption + "' missing from the baseline");
      }
    }
    if (!std::isfinite(model.clean)) throw InvalidInput("non-finite clean value for " + name);
    ModelRobustness row;
    row.name = name;
    row.clean = model.clean;
    const double clean = goodness(model.clean);
    for (const auto& corruption : corruptions) {
      const auto cand = scores_of(name, model, corruption);
      const auto base = scores_of(report.baseline, base_it->second, corruption);
      row.ce.push_back(compute_ce(cand, base));
      row.rr.push_back(compute_rr(cand, clean));
    }
    if (!corruptions.empty()) {
      double ce_sum = 0.0, rr_sum = 0.0;
      for (double v : row.ce) ce_sum += v;
      for (double v : row.rr) rr_sum += v;
      row.mce = ce_sum / static_cast<double>(row.ce.size());
      row.mrr = rr_sum / static_cast<double>(row.rr.size());
    }
    report.models.push_back(std::move(row));
  }
  return report;
}

std::optional<ReportFormat> parse_report_format(std::string_view name) noexcept {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "markdown" || name == "md") return ReportFormat::kMarkdown;
  return std::nullopt;
}

std::optional<ReportTable> parse_report_table(std::string_view name) noexcept {
  if (name == "ce") return ReportTable::kCe;
  if (name == "rr") return ReportTable::kRr;
  return std::nullopt;
}

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string render_report(const RobustnessReport& report, ReportFormat format, ReportTable table) {
  std::vector<std::string> header = {"Model", report.metric.empty() ? "Clean" : report.metric, "mCE", "mRR"};
  const std::string prefix = table == ReportTable::kCe ? "CE " : "RR ";
  for (const auto& c : report.corruptions) header.push_back(prefix + c);

  std::vector<std::vector<std::string>> rows;
  for (const auto& m : report.models) {
    std::vector<std::string> row = {m.name, fixed(m.clean, 4), fixed(m.mce, 2), fixed(m.mrr, 2)};
    for (double v : table == ReportTable::kCe ? m.ce : m.rr) row.push_back(fixed(v, 2));
    rows.push_back(std::move(row));
  }

  std::string out;
  if (format == ReportFormat::kCsv) {
    auto emit = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + csv_field(cells[i]);
      out += '\n';
    };
    emit(header);
    for (const auto& r : rows) emit(r);
  } else {
    auto emit = [&](const std::vector<std::string>& cells) {
      out += "|";
      for (const auto& c : cells) out += " " + c + " |";
      out += '\n';
    };
    emit(header);
    out += "|";
    for (std::size_t i = 0; i < header.size(); ++i) out += i == 0 ? " --- |" : " ---: |";
    out += '\n';
    for (const auto& r : rows) emit(r);
  }
  return out;
}

namespace {

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

}  // namespace

ParsedTable parse_report_csv(std::string_view text) {
  ParsedTable table;
  std::size_t pos = 0;
  bool first = true;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (first) {
      table.header = std::move(cells);
      first = false;
      continue;
    }
    if (cells.size() != table.header.size()) throw InvalidInput("report CSV: ragged row");
    table.models.push_back(cells[0]);
    std::vector<double> values;
    for (std::size_t i = 1; i < cells.size(); ++i) {
      try {
        values.push_back(std::stod(cells[i]));
      } catch (const std::exception&) {
        throw InvalidInput("report CSV: non-numeric cell '" + cells[i] + "'");
      }
    }
    table.cells.push_back(std::move(values));
  }
  return table;
}

}  // namespace corruptkit
