#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wwr/error.hpp"
#include "wwr/types.hpp"

namespace wwr {

// One labeled polygon in image pixel space (origin top-left, x right, y down).
struct PolygonAnnotation {
  std::string label;
  std::vector<Point> points;
  bool operator==(const PolygonAnnotation&) const = default;
};

// Parses the annotation document: an object with a "shapes" array whose
// entries carry "label" (string) and "points" (array of [x,y] pairs).
// Unknown keys are ignored. A shape with fewer than 3 points fails the whole
// document so that silent data loss cannot skew the downstream statistics.
inline std::vector<PolygonAnnotation> parse_annotations_text(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }

  if (!doc.is_object()) throw SchemaError("annotation document must be a JSON object");
  auto shapes_it = doc.find("shapes");
  if (shapes_it == doc.end()) throw SchemaError("missing \"shapes\" key");
  if (!shapes_it->is_array()) throw SchemaError("\"shapes\" must be an array");

  std::vector<PolygonAnnotation> out;
  out.reserve(shapes_it->size());
  std::size_t index = 0;
  for (const auto& shape : *shapes_it) {
    const std::string where = "shape " + std::to_string(index);
    if (!shape.is_object()) throw SchemaError(where + " must be an object");

    auto label_it = shape.find("label");
    if (label_it == shape.end() || !label_it->is_string())
      throw SchemaError(where + ": \"label\" must be a string");

    auto points_it = shape.find("points");
    if (points_it == shape.end() || !points_it->is_array())
      throw SchemaError(where + ": \"points\" must be an array");

    PolygonAnnotation ann;
    ann.label = label_it->get<std::string>();
    ann.points.reserve(points_it->size());
    for (const auto& pt : *points_it) {
      if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number())
        throw SchemaError(where + ": each point must be an [x, y] number pair");
      Point p{pt[0].get<double>(), pt[1].get<double>()};
      if (!std::isfinite(p.x) || !std::isfinite(p.y))
        throw SchemaError(where + ": coordinates must be finite");
      ann.points.push_back(p);
    }
    if (ann.points.size() < 3)
      throw ValidationError(where + " has " + std::to_string(ann.points.size()) +
                            " points; a polygon needs at least 3");
    out.push_back(std::move(ann));
    ++index;
  }
  return out;
}

inline std::vector<PolygonAnnotation> parse_annotations(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open annotation file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failure: " + path.string());
  return parse_annotations_text(buf.str());
}

// Keeps only the shapes whose label is in `labels` (the window-label set).
inline std::vector<PolygonAnnotation> select_labeled(
    const std::vector<PolygonAnnotation>& annotations,
    const std::set<std::string>& labels) {
  std::vector<PolygonAnnotation> out;
  for (const auto& a : annotations)
    if (labels.count(a.label)) out.push_back(a);
  return out;
}

}  // namespace wwr
