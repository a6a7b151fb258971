#include "wwr/annotations.hpp"

#include <fstream>

#include <gtest/gtest.h>

#include "oracles.hpp"

using wwr::parse_annotations;
using wwr::parse_annotations_text;

TEST(ParseAnnotations, MinimalTriangle) {
  const auto anns = parse_annotations_text(
      R"({"shapes":[{"label":"window","points":[[0,0],[4,0],[0,4]]}]})");
  ASSERT_EQ(anns.size(), 1u);
  EXPECT_EQ(anns[0].label, "window");
  ASSERT_EQ(anns[0].points.size(), 3u);
  EXPECT_EQ(anns[0].points[1], (wwr::Point{4.0, 0.0}));
}

TEST(ParseAnnotations, EmptyShapesList) {
  EXPECT_TRUE(parse_annotations_text(R"({"shapes":[]})").empty());
}

TEST(ParseAnnotations, TwoPointShapeFailsNamingIndex) {
  try {
    parse_annotations_text(R"({"shapes":[{"label":"window","points":[[0,0],[4,0]]}]})");
    FAIL() << "expected ValidationError";
  } catch (const wwr::ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("shape 0"), std::string::npos);
  }
}

TEST(ParseAnnotations, SecondShapeBadFailsWholeFile) {
  const char* doc =
      R"({"shapes":[{"label":"window","points":[[0,0],[4,0],[0,4]]},
                    {"label":"window","points":[[1,1],[2,2]]}]})";
  try {
    parse_annotations_text(doc);
    FAIL() << "expected ValidationError";
  } catch (const wwr::ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("shape 1"), std::string::npos);
  }
}

TEST(ParseAnnotations, MalformedJsonReportsByteOffset) {
  try {
    parse_annotations_text(R"({"shapes": [}])");
    FAIL() << "expected ParseError";
  } catch (const wwr::ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos);
  }
}

TEST(ParseAnnotations, SchemaViolationsNameTheField) {
  EXPECT_THROW(parse_annotations_text(R"([1,2,3])"), wwr::SchemaError);
  EXPECT_THROW(parse_annotations_text(R"({"no_shapes":[]})"), wwr::SchemaError);
  EXPECT_THROW(parse_annotations_text(R"({"shapes":{}})"), wwr::SchemaError);
  EXPECT_THROW(parse_annotations_text(R"({"shapes":[{"points":[[0,0],[1,0],[0,1]]}]})"),
               wwr::SchemaError);
  EXPECT_THROW(parse_annotations_text(R"({"shapes":[{"label":7,"points":[[0,0],[1,0],[0,1]]}]})"),
               wwr::SchemaError);
  EXPECT_THROW(parse_annotations_text(R"({"shapes":[{"label":"w","points":[[0,0],[1],[0,1]]}]})"),
               wwr::SchemaError);
  EXPECT_THROW(
      parse_annotations_text(R"({"shapes":[{"label":"w","points":[[0,0],["a",0],[0,1]]}]})"),
      wwr::SchemaError);
}

TEST(ParseAnnotations, UnknownKeysIgnoredLabelsVerbatimOrderPreserved) {
  const auto anns = parse_annotations_text(R"({
    "imageWidth": 640, "version": "5.0",
    "shapes": [
      {"label": "door", "points": [[1,1],[2,1],[2,2]], "shape_type": "polygon"},
      {"label": "Window", "points": [[0.5,0.25],[10,0.25],[10,8],[0.5,8]]}
    ]})");
  ASSERT_EQ(anns.size(), 2u);
  EXPECT_EQ(anns[0].label, "door");
  EXPECT_EQ(anns[1].label, "Window");
  EXPECT_DOUBLE_EQ(anns[1].points[0].x, 0.5);
}

// Totality over the schema: any schema-valid document parses and the output
// length equals the shapes-array length.
TEST(ParseAnnotations, TotalOverSchemaValidDocuments) {
  oracle::Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    nlohmann::json doc;
    doc["shapes"] = nlohmann::json::array();
    const int n_shapes = rng.uniform_int(0, 6);
    for (int s = 0; s < n_shapes; ++s) {
      nlohmann::json shape;
      shape["label"] = s % 2 ? "window" : "wall";
      shape["points"] = nlohmann::json::array();
      const int n_pts = rng.uniform_int(3, 10);
      for (int p = 0; p < n_pts; ++p)
        shape["points"].push_back({rng.uniform(-100.0, 700.0), rng.uniform(-100.0, 700.0)});
      doc["shapes"].push_back(shape);
    }
    const auto anns = parse_annotations_text(doc.dump());
    EXPECT_EQ(anns.size(), static_cast<std::size_t>(n_shapes));
  }
}

TEST(ParseAnnotations, FromFileAndMissingFile) {
  oracle::TempDir tmp("ann");
  const auto path = tmp.path / "a.json";
  std::ofstream(path) << R"({"shapes":[{"label":"window","points":[[0,0],[4,0],[0,4]]}]})";
  EXPECT_EQ(parse_annotations(path).size(), 1u);
  EXPECT_THROW(parse_annotations(tmp.path / "missing.json"), wwr::IoError);
}

TEST(SelectLabeled, FiltersByLabelSet) {
  const auto anns = parse_annotations_text(R"({"shapes":[
    {"label":"window","points":[[0,0],[1,0],[0,1]]},
    {"label":"door","points":[[0,0],[1,0],[0,1]]},
    {"label":"window","points":[[2,2],[3,2],[2,3]]}]})");
  EXPECT_EQ(wwr::select_labeled(anns, {"window"}).size(), 2u);
  EXPECT_EQ(wwr::select_labeled(anns, {"door"}).size(), 1u);
  EXPECT_EQ(wwr::select_labeled(anns, {"balcony"}).size(), 0u);
}
