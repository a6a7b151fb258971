#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wwr/error.hpp"
#include "wwr/util.hpp"

namespace wwr {

// One dataset entry: an image plus whatever labeling exists for it.
struct DatasetItem {
  std::string id;  // stem of the image filename
  std::filesystem::path image_path;
  std::optional<std::filesystem::path> annotation_path;  // <id>.json
  std::optional<std::filesystem::path> label_map_path;   // <id><suffix>.png
};

// Scans a flat directory for images (.jpg/.jpeg/.png, case-insensitive) and
// pairs each with a same-stem .json annotation and/or "<stem><suffix>.png"
// label map. A label-map PNG is a companion, not an item of its own, whenever
// the base-stem image exists. Output is sorted by id, independent of
// filesystem enumeration order.
inline std::vector<DatasetItem> scan_dataset(const std::filesystem::path& root,
                                             std::string_view label_suffix = "_label") {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(root, ec))
    throw IoError("not a readable directory: " + root.string());

  std::map<std::string, std::vector<fs::path>> images;  // stem -> image files
  std::map<std::string, fs::path> jsons;                // stem -> annotation

  fs::directory_iterator it(root, ec);
  if (ec) throw IoError("cannot read directory " + root.string() + ": " + ec.message());
  for (const auto& entry : it) {
    if (!entry.is_regular_file()) continue;
    const fs::path& p = entry.path();
    const std::string ext = to_lower(p.extension().string());
    const std::string stem = p.stem().string();
    if (ext == ".jpg" || ext == ".jpeg" || ext == ".png") {
      images[stem].push_back(p);
    } else if (ext == ".json") {
      jsons[stem] = p;
    }
  }

  const std::string suffix(label_suffix);
  auto label_base = [&](const std::string& stem) -> std::optional<std::string> {
    if (suffix.empty() || stem.size() <= suffix.size()) return std::nullopt;
    if (stem.compare(stem.size() - suffix.size(), suffix.size(), suffix) != 0)
      return std::nullopt;
    return stem.substr(0, stem.size() - suffix.size());
  };

  std::vector<DatasetItem> items;
  for (const auto& [stem, files] : images) {
    // "<base><suffix>.png" next to an existing "<base>.*" image is a
    // companion label map, not a dataset item.
    if (auto base = label_base(stem); base && images.count(*base)) continue;
    if (files.size() > 1)
      throw AmbiguityError("stem \"" + stem + "\" matches more than one image file");

    DatasetItem item;
    item.id = stem;
    item.image_path = files.front();
    if (auto j = jsons.find(stem); j != jsons.end()) item.annotation_path = j->second;
    const std::string label_stem = stem + suffix;
    if (auto l = images.find(label_stem); l != images.end()) {
      for (const auto& cand : l->second) {
        if (to_lower(cand.extension().string()) == ".png") {
          item.label_map_path = cand;
          break;
        }
      }
    }
    items.push_back(std::move(item));
  }
  std::sort(items.begin(), items.end(),
            [](const DatasetItem& a, const DatasetItem& b) { return a.id < b.id; });
  return items;
}

}  // namespace wwr
