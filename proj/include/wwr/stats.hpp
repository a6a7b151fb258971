#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "wwr/error.hpp"
#include "wwr/metrics.hpp"
#include "wwr/util.hpp"

namespace wwr {

inline constexpr int kWwrHistogramBins = 100;  // 0.01-wide bins over [0, 1]

struct PerImageStat {
  std::string id;
  double wwr = 0.0;
  bool defined = false;
  double window_pct = 0.0;    // 100 * A_w / total pixels
  double building_pct = 0.0;  // 100 * A_f / total pixels
  bool operator==(const PerImageStat&) const = default;
};

struct DatasetStats {
  std::size_t n = 0;          // records seen
  std::size_t n_defined = 0;  // records with a defined WWR
  double mean_wwr = 0.0;
  double mode_wwr = 0.0;  // center of the most populated histogram bin
  std::array<std::uint32_t, kWwrHistogramBins> histogram{};
  std::vector<PerImageStat> per_image;
};

inline int wwr_histogram_bin(double wwr) {
  const int bin = static_cast<int>(std::floor(wwr * kWwrHistogramBins));
  return std::clamp(bin, 0, kWwrHistogramBins - 1);
}

// Aggregates per-image records into the dataset distribution. The mode is the
// center of the fullest 0.01-wide bin; ties go to the lower bin. Records with
// an undefined WWR appear in per_image but not in mean/mode/histogram.
inline DatasetStats dataset_stats(
    const std::vector<std::pair<WWRRecord, std::uint64_t>>& records) {
  DatasetStats stats;
  double sum = 0.0;
  for (const auto& [rec, total_pixels] : records) {
    if (total_pixels == 0)
      throw ValidationError("record \"" + rec.id + "\" has zero total pixels");
    PerImageStat s;
    s.id = rec.id;
    s.wwr = rec.wwr;
    s.defined = rec.defined;
    s.window_pct = 100.0 * static_cast<double>(rec.window_pixels) / static_cast<double>(total_pixels);
    s.building_pct = 100.0 * static_cast<double>(rec.facade_pixels) / static_cast<double>(total_pixels);
    stats.per_image.push_back(std::move(s));
    ++stats.n;
    if (rec.defined) {
      ++stats.n_defined;
      sum += rec.wwr;
      ++stats.histogram[wwr_histogram_bin(rec.wwr)];
    }
  }
  if (stats.n_defined > 0) {
    stats.mean_wwr = sum / static_cast<double>(stats.n_defined);
    const auto it = std::max_element(stats.histogram.begin(), stats.histogram.end());
    stats.mode_wwr = (static_cast<double>(it - stats.histogram.begin()) + 0.5) / kWwrHistogramBins;
  }
  return stats;
}

namespace detail {

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct SvgCanvas {
  // 800x600 viewBox with a fixed plot area; all geometry is derived from the
  // stats alone, so reports are byte-stable.
  static constexpr double kWidth = 800, kHeight = 600;
  static constexpr double kLeft = 80, kRight = 770, kTop = 40, kBottom = 540;

  std::string body;

  double sx(double unit) const { return kLeft + unit * (kRight - kLeft); }
  double sy(double unit) const { return kBottom - unit * (kBottom - kTop); }

  void line(double x1, double y1, double x2, double y2) {
    body += "<line x1=\"" + svg_num(x1) + "\" y1=\"" + svg_num(y1) + "\" x2=\"" +
            svg_num(x2) + "\" y2=\"" + svg_num(y2) +
            "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  }
  void rect(double x, double y, double w, double h, const std::string& fill) {
    body += "<rect x=\"" + svg_num(x) + "\" y=\"" + svg_num(y) + "\" width=\"" +
            svg_num(w) + "\" height=\"" + svg_num(h) + "\" fill=\"" + fill + "\"/>\n";
  }
  void circle(double x, double y, double r, const std::string& fill) {
    body += "<circle cx=\"" + svg_num(x) + "\" cy=\"" + svg_num(y) + "\" r=\"" +
            svg_num(r) + "\" fill=\"" + fill + "\"/>\n";
  }
  void text(double x, double y, const std::string& s, const std::string& anchor,
            double size = 14) {
    body += "<text x=\"" + svg_num(x) + "\" y=\"" + svg_num(y) + "\" font-size=\"" +
            svg_num(size) + "\" font-family=\"sans-serif\" text-anchor=\"" + anchor +
            "\">" + s + "</text>\n";
  }

  // Axis frame with 0..1-unit tick positions and printed tick labels.
  void axes(const std::vector<std::pair<double, std::string>>& x_ticks,
            const std::vector<std::pair<double, std::string>>& y_ticks,
            const std::string& x_label, const std::string& y_label) {
    line(kLeft, kBottom, kRight, kBottom);
    line(kLeft, kBottom, kLeft, kTop);
    for (const auto& [u, label] : x_ticks) {
      line(sx(u), kBottom, sx(u), kBottom + 6);
      text(sx(u), kBottom + 24, label, "middle", 12);
    }
    for (const auto& [u, label] : y_ticks) {
      line(kLeft - 6, sy(u), kLeft, sy(u));
      text(kLeft - 10, sy(u) + 4, label, "end", 12);
    }
    text((kLeft + kRight) / 2, kHeight - 12, x_label, "middle");
    body += "<text x=\"22\" y=\"" + svg_num((kTop + kBottom) / 2) +
            "\" font-size=\"14.00\" font-family=\"sans-serif\" text-anchor=\"middle\" "
            "transform=\"rotate(-90 22 " +
            svg_num((kTop + kBottom) / 2) + ")\">" + y_label + "</text>\n";
  }

  std::string document() const {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" "
           "width=\"800\" height=\"600\">\n<rect x=\"0\" y=\"0\" width=\"800\" "
           "height=\"600\" fill=\"white\"/>\n" +
           body + "</svg>\n";
  }
};

inline std::vector<std::pair<double, std::string>> unit_ticks(double max_value, int count) {
  std::vector<std::pair<double, std::string>> ticks;
  for (int i = 0; i <= count; ++i) {
    const double u = static_cast<double>(i) / count;
    ticks.emplace_back(u, svg_num(u * max_value));
  }
  return ticks;
}

inline std::string histogram_svg(const DatasetStats& stats) {
  SvgCanvas svg;
  std::uint32_t max_count = 0;
  for (auto c : stats.histogram) max_count = std::max(max_count, c);

  std::vector<std::pair<double, std::string>> x_ticks;
  for (int i = 0; i <= 10; ++i)
    x_ticks.emplace_back(i / 10.0, svg_num(i / 10.0));
  svg.axes(x_ticks, unit_ticks(max_count, 5), "WWR", "images");

  if (max_count > 0) {
    const double bin_w = (SvgCanvas::kRight - SvgCanvas::kLeft) / kWwrHistogramBins;
    for (int b = 0; b < kWwrHistogramBins; ++b) {
      const std::uint32_t c = stats.histogram[b];
      if (c == 0) continue;
      const double x = SvgCanvas::kLeft + b * bin_w;
      const double y = svg.sy(static_cast<double>(c) / max_count);
      svg.rect(x, y, bin_w, SvgCanvas::kBottom - y, "steelblue");
    }
  }
  return svg.document();
}

inline std::string scatter_svg(const DatasetStats& stats) {
  SvgCanvas svg;
  auto pct_ticks = [] {
    std::vector<std::pair<double, std::string>> ticks;
    for (int i = 0; i <= 5; ++i)
      ticks.emplace_back(i / 5.0, svg_num(i * 20.0));
    return ticks;
  }();
  svg.axes(pct_ticks, pct_ticks, "building pixels %", "window pixels %");
  for (const auto& s : stats.per_image)
    svg.circle(svg.sx(s.building_pct / 100.0), svg.sy(s.window_pct / 100.0), 3.0, "firebrick");
  return svg.document();
}

}  // namespace detail

// CSV layout: "id,wwr,defined,window_pct,building_pct"; floats round-trip
// exactly.
inline void write_stats_csv(const DatasetStats& stats, std::ostream& out) {
  out << "id,wwr,defined,window_pct,building_pct\n";
  for (const auto& s : stats.per_image) {
    out << s.id << ',' << format_double(s.wwr) << ',' << (s.defined ? 1 : 0) << ','
        << format_double(s.window_pct) << ',' << format_double(s.building_pct) << '\n';
  }
}

inline std::vector<PerImageStat> read_stats_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "id,wwr,defined,window_pct,building_pct")
    throw ParseError("bad stats CSV header in " + path.string());
  std::vector<PerImageStat> rows;
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
      throw ParseError("bad stats CSV row \"" + line + "\" in " + path.string());
    PerImageStat s;
    s.id = cells[0];
    s.wwr = parse_double(cells[1]);
    s.defined = cells[2] == "1";
    s.window_pct = parse_double(cells[3]);
    s.building_pct = parse_double(cells[4]);
    rows.push_back(std::move(s));
  }
  return rows;
}

// Writes stats.csv, histogram.svg and scatter.svg into out_dir. The SVGs are
// standalone documents with axes and tick labels; with no data they contain
// an empty plot area.
inline void emit_report(const DatasetStats& stats, const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec && !fs::is_directory(out_dir))
    throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  auto write_file = [&](const char* name, const std::string& contents) {
    const fs::path path = out_dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << contents;
    if (!out) throw IoError("write failure: " + path.string());
  };

  {
    std::ostringstream csv;
    write_stats_csv(stats, csv);
    write_file("stats.csv", csv.str());
  }
  write_file("histogram.svg", detail::histogram_svg(stats));
  write_file("scatter.svg", detail::scatter_svg(stats));
}

}  // namespace wwr
