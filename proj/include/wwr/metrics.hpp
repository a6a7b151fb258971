#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "wwr/error.hpp"
#include "wwr/types.hpp"
#include "wwr/util.hpp"

namespace wwr {

// Per-image window/facade pixel counts and the derived ratio
// wwr = window / (facade + window). Undefined (defined=false) when both
// counts are zero.
struct WWRRecord {
  std::string id;
  std::uint64_t window_pixels = 0;
  std::uint64_t facade_pixels = 0;
  double wwr = 0.0;
  bool defined = false;

  static WWRRecord from_counts(std::string id, std::uint64_t window_px,
                               std::uint64_t facade_px) {
    WWRRecord r;
    r.id = std::move(id);
    r.window_pixels = window_px;
    r.facade_pixels = facade_px;
    const std::uint64_t denom = window_px + facade_px;
    r.defined = denom > 0;
    r.wwr = r.defined ? static_cast<double>(window_px) / static_cast<double>(denom) : 0.0;
    return r;
  }

  bool operator==(const WWRRecord&) const = default;
};

struct IoUResult {
  std::uint64_t intersection = 0;
  std::uint64_t union_ = 0;
  double iou = 0.0;
};

struct ErrorSummary {
  double mean_abs_error = 0.0;
  double fraction_within = 0.0;
  double threshold = 0.10;
  std::size_t n = 0;           // pairs with both WWRs defined
  std::size_t n_excluded = 0;  // pairs dropped because either WWR is undefined
};

// Counts window_class and building_class pixels; every other value,
// including the ignore index, stays out of both counts.
inline WWRRecord compute_wwr(const LabelMap& map, const ClassConfig& cfg,
                             std::string id = {}) {
  cfg.validate();
  std::uint64_t window_px = 0;
  std::uint64_t facade_px = 0;
  for (std::uint8_t v : map.classes) {
    if (v == cfg.window_class)
      ++window_px;
    else if (v == cfg.building_class)
      ++facade_px;
  }
  return WWRRecord::from_counts(std::move(id), window_px, facade_px);
}

// Set-theoretic intersection over union of the true pixels. Two empty masks
// agree perfectly: iou = 1.
inline IoUResult compute_iou(const BinaryMask& pred, const BinaryMask& truth) {
  if (pred.width != truth.width || pred.height != truth.height)
    throw ShapeError("prediction is " + std::to_string(pred.width) + "x" +
                     std::to_string(pred.height) + " but truth is " +
                     std::to_string(truth.width) + "x" + std::to_string(truth.height));
  IoUResult r;
  const std::size_t n = pred.bits.size();
  for (std::size_t i = 0; i < n; ++i) {
    const bool a = pred.bits[i] != 0;
    const bool b = truth.bits[i] != 0;
    r.intersection += a && b;
    r.union_ += a || b;
  }
  r.iou = r.union_ > 0 ? static_cast<double>(r.intersection) / static_cast<double>(r.union_)
                       : 1.0;
  return r;
}

// Pairs records by id (one-to-one) and summarizes |wwr_pred - wwr_truth|.
// With relative=true the error is |pred - truth| / truth instead (0 when
// both are 0, +inf when only the truth is 0). Pairs where either WWR is
// undefined are excluded and counted in n_excluded.
inline ErrorSummary wwr_error(const std::vector<WWRRecord>& pred,
                              const std::vector<WWRRecord>& truth,
                              double threshold = 0.10, bool relative = false) {
  std::unordered_map<std::string, const WWRRecord*> truth_by_id;
  truth_by_id.reserve(truth.size());
  for (const auto& t : truth)
    if (!truth_by_id.emplace(t.id, &t).second)
      throw PairingError("duplicate id in truth records: \"" + t.id + "\"");

  ErrorSummary summary;
  summary.threshold = threshold;
  double error_sum = 0.0;
  std::size_t within = 0;
  std::unordered_map<std::string, bool> seen;
  seen.reserve(pred.size());
  for (const auto& p : pred) {
    if (!seen.emplace(p.id, true).second)
      throw PairingError("duplicate id in predicted records: \"" + p.id + "\"");
    auto it = truth_by_id.find(p.id);
    if (it == truth_by_id.end())
      throw PairingError("no ground truth for id \"" + p.id + "\"");
    const WWRRecord& t = *it->second;
    truth_by_id.erase(it);

    if (!p.defined || !t.defined) {
      ++summary.n_excluded;
      continue;
    }
    double err = std::abs(p.wwr - t.wwr);
    if (relative) {
      if (t.wwr == 0.0)
        err = p.wwr == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
      else
        err /= t.wwr;
    }
    error_sum += err;
    within += err <= threshold;
    ++summary.n;
  }
  if (!truth_by_id.empty())
    throw PairingError("no prediction for id \"" + truth_by_id.begin()->first + "\"");

  if (summary.n > 0) {
    summary.mean_abs_error = error_sum / static_cast<double>(summary.n);
    summary.fraction_within = static_cast<double>(within) / static_cast<double>(summary.n);
  }
  return summary;
}

// CSV layout: "id,window_pixels,facade_pixels,wwr,defined". Floats use the
// shortest representation that round-trips exactly.
inline void write_wwr_csv(const std::vector<WWRRecord>& records, std::ostream& out) {
  out << "id,window_pixels,facade_pixels,wwr,defined\n";
  for (const auto& r : records) {
    out << r.id << ',' << r.window_pixels << ',' << r.facade_pixels << ','
        << format_double(r.wwr) << ',' << (r.defined ? 1 : 0) << '\n';
  }
}

inline void write_wwr_csv(const std::vector<WWRRecord>& records,
                          const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_wwr_csv(records, out);
  if (!out) throw IoError("write failure: " + path.string());
}

inline std::vector<WWRRecord> read_wwr_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "id,window_pixels,facade_pixels,wwr,defined")
    throw ParseError("bad WWR CSV header in " + path.string());

  std::vector<WWRRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        cells.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (cells.size() != 5)
      throw ParseError("bad WWR CSV row \"" + line + "\" in " + path.string());
    WWRRecord r;
    r.id = cells[0];
    r.window_pixels = std::stoull(cells[1]);
    r.facade_pixels = std::stoull(cells[2]);
    r.wwr = parse_double(cells[3]);
    r.defined = cells[4] == "1";
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace wwr
