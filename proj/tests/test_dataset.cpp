#include "wwr/dataset.hpp"

#include <fstream>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace {

void touch(const std::filesystem::path& p) { std::ofstream(p) << "x"; }

}  // namespace

TEST(ScanDataset, PairsImageWithAnnotation) {
  oracle::TempDir tmp("scan1");
  touch(tmp.path / "a.jpg");
  touch(tmp.path / "a.json");

  const auto items = wwr::scan_dataset(tmp.path);
  ASSERT_EQ(items.size(), 1u);
  EXPECT_EQ(items[0].id, "a");
  ASSERT_TRUE(items[0].annotation_path.has_value());
  EXPECT_FALSE(items[0].label_map_path.has_value());
}

TEST(ScanDataset, EmptyDirectory) {
  oracle::TempDir tmp("scan2");
  EXPECT_TRUE(wwr::scan_dataset(tmp.path).empty());
}

TEST(ScanDataset, ItemWithAnnotationAndLabelMap) {
  oracle::TempDir tmp("scan3");
  touch(tmp.path / "b.jpg");
  touch(tmp.path / "b.json");
  touch(tmp.path / "b_label.png");

  const auto items = wwr::scan_dataset(tmp.path);
  ASSERT_EQ(items.size(), 1u);
  EXPECT_EQ(items[0].id, "b");
  ASSERT_TRUE(items[0].annotation_path.has_value());
  ASSERT_TRUE(items[0].label_map_path.has_value());
  EXPECT_EQ(items[0].label_map_path->filename(), "b_label.png");
}

TEST(ScanDataset, SortedByIdAndCaseInsensitiveExtensions) {
  oracle::TempDir tmp("scan4");
  touch(tmp.path / "zz.JPG");
  touch(tmp.path / "mm.jpeg");
  touch(tmp.path / "aa.PNG");
  touch(tmp.path / "notes.txt");

  const auto items = wwr::scan_dataset(tmp.path);
  ASSERT_EQ(items.size(), 3u);
  EXPECT_EQ(items[0].id, "aa");
  EXPECT_EQ(items[1].id, "mm");
  EXPECT_EQ(items[2].id, "zz");
}

TEST(ScanDataset, ConflictingImagesForOneStem) {
  oracle::TempDir tmp("scan5");
  touch(tmp.path / "c.jpg");
  touch(tmp.path / "c.png");
  try {
    wwr::scan_dataset(tmp.path);
    FAIL() << "expected AmbiguityError";
  } catch (const wwr::AmbiguityError& e) {
    EXPECT_NE(std::string(e.what()).find("\"c\""), std::string::npos);
  }
}

TEST(ScanDataset, LoneLabelPngIsItsOwnItem) {
  oracle::TempDir tmp("scan6");
  touch(tmp.path / "orphan_label.png");  // no orphan.jpg
  const auto items = wwr::scan_dataset(tmp.path);
  ASSERT_EQ(items.size(), 1u);
  EXPECT_EQ(items[0].id, "orphan_label");
}

TEST(ScanDataset, CustomLabelSuffix) {
  oracle::TempDir tmp("scan7");
  touch(tmp.path / "d.jpg");
  touch(tmp.path / "d_seg.png");
  const auto items = wwr::scan_dataset(tmp.path, "_seg");
  ASSERT_EQ(items.size(), 1u);
  ASSERT_TRUE(items[0].label_map_path.has_value());
  EXPECT_EQ(items[0].label_map_path->filename(), "d_seg.png");
}

TEST(ScanDataset, MissingRootIsIoError) {
  oracle::TempDir tmp("scan8");
  EXPECT_THROW(wwr::scan_dataset(tmp.path / "nope"), wwr::IoError);
}
