// Command-line front end of the WWR pipeline. Subcommands cover the full
// flow: rasterize -> fuse -> preprocess/wwr/iou/eval, perspective correction
// (warp, detect-corners) and dataset statistics (stats).

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "wwr/wwr.hpp"

namespace fs = std::filesystem;

namespace {

enum class LogLevel { kError = 0, kInfo = 1, kDebug = 2 };

LogLevel log_level_from_env() {
  const char* v = std::getenv("WWR_LOG");
  if (!v) return LogLevel::kError;
  const std::string s = wwr::to_lower(v);
  if (s == "debug") return LogLevel::kDebug;
  if (s == "info") return LogLevel::kInfo;
  return LogLevel::kError;
}

LogLevel g_log_level = LogLevel::kError;

void log_info(const std::string& msg) {
  if (g_log_level >= LogLevel::kInfo) std::cerr << "[info] " << msg << "\n";
}

void log_debug(const std::string& msg) {
  if (g_log_level >= LogLevel::kDebug) std::cerr << "[debug] " << msg << "\n";
}

unsigned default_jobs() {
  const unsigned n = std::thread::hardware_concurrency();
  return n ? n : 1;
}

// "--classes building=2,window=9"; unknown keys are rejected, missing keys
// keep their defaults.
wwr::ClassConfig parse_classes(const std::string& spec) {
  wwr::ClassConfig cfg;
  if (spec.empty()) return cfg;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw wwr::ValidationError("bad --classes entry \"" + item + "\" (want key=value)");
    const std::string key = item.substr(0, eq);
    const int value = std::stoi(item.substr(eq + 1));
    if (value < 0 || value > 255)
      throw wwr::ValidationError("class index out of range in \"" + item + "\"");
    if (key == "building")
      cfg.building_class = static_cast<std::uint8_t>(value);
    else if (key == "window")
      cfg.window_class = static_cast<std::uint8_t>(value);
    else
      throw wwr::ValidationError("unknown --classes key \"" + key + "\"");
  }
  cfg.validate();
  return cfg;
}

std::set<std::string> parse_label_set(const std::string& spec) {
  std::set<std::string> labels;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) labels.insert(item);
  if (labels.empty()) throw wwr::ValidationError("empty window-label set");
  return labels;
}

wwr::Quad quad_from_values(const std::vector<double>& v) {
  if (v.size() != 8)
    throw wwr::ValidationError("--corners needs exactly 8 values (x1,y1,...,x4,y4), got " +
                               std::to_string(v.size()));
  return wwr::make_quad({wwr::Point{v[0], v[1]}, wwr::Point{v[2], v[3]},
                         wwr::Point{v[4], v[5]}, wwr::Point{v[6], v[7]}});
}

std::string corners_json(const wwr::Quad& q) {
  auto pt = [](const wwr::Point& p) {
    return "[" + wwr::format_double(p.x) + "," + wwr::format_double(p.y) + "]";
  };
  return "{\"tl\":" + pt(q.tl()) + ",\"tr\":" + pt(q.tr()) + ",\"br\":" + pt(q.br()) +
         ",\"bl\":" + pt(q.bl()) + "}";
}

std::string strip_suffix(const std::string& stem, const std::string& suffix) {
  if (!suffix.empty() && stem.size() > suffix.size() &&
      stem.compare(stem.size() - suffix.size(), suffix.size(), suffix) == 0)
    return stem.substr(0, stem.size() - suffix.size());
  return stem;
}

// Sorted list of the .png files directly inside dir.
std::vector<fs::path> list_pngs(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw wwr::IoError("not a directory: " + dir.string());
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    if (wwr::to_lower(entry.path().extension().string()) == ".png")
      out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct LabeledRecords {
  std::vector<wwr::WWRRecord> records;
  std::vector<std::uint64_t> total_pixels;
};

LabeledRecords records_from_dir(const fs::path& dir, const wwr::ClassConfig& cfg,
                                const std::string& suffix, unsigned jobs) {
  const auto files = list_pngs(dir);
  LabeledRecords out;
  out.records.resize(files.size());
  out.total_pixels.resize(files.size());
  wwr::parallel_for(files.size(), jobs, [&](std::size_t i) {
    const wwr::LabelMap map = wwr::decode_label_png(files[i]);
    out.records[i] =
        wwr::compute_wwr(map, cfg, strip_suffix(files[i].stem().string(), suffix));
    out.total_pixels[i] = static_cast<std::uint64_t>(map.width) * map.height;
  });
  for (std::size_t i = 0; i < files.size(); ++i)
    log_debug("wwr " + out.records[i].id + " = " + wwr::format_double(out.records[i].wwr));
  return out;
}

// ---------------------------------------------------------------------------
// rasterize

struct RasterizeOpts {
  std::string input;
  std::string out;
  std::string image;
  int width = 0;
  int height = 0;
  std::string window_labels = "window";
  std::string label_suffix = "_label";
  unsigned jobs = default_jobs();
};

void run_rasterize_file(const RasterizeOpts& opt) {
  int w = opt.width, h = opt.height;
  if (!opt.image.empty()) {
    const wwr::RasterImage img = wwr::decode_image(opt.image);
    w = img.width;
    h = img.height;
  }
  if (w < 1 || h < 1)
    throw wwr::ValidationError("mask dimensions unknown; pass --width/--height or --image");

  const auto labels = parse_label_set(opt.window_labels);
  const auto polys = wwr::select_labeled(wwr::parse_annotations(opt.input), labels);
  const wwr::BinaryMask mask = wwr::rasterize_polygons(polys, w, h);

  fs::path out = opt.out.empty()
                     ? fs::path(opt.input).replace_filename(
                           fs::path(opt.input).stem().string() + "_mask.png")
                     : fs::path(opt.out);
  wwr::encode_mask_png(mask, out);
  log_info("rasterized " + std::to_string(polys.size()) + " window polygons -> " + out.string());
}

void run_rasterize_dir(const RasterizeOpts& opt) {
  const auto labels = parse_label_set(opt.window_labels);
  auto items = wwr::scan_dataset(opt.input, opt.label_suffix);
  std::erase_if(items, [](const wwr::DatasetItem& it) { return !it.annotation_path; });
  if (opt.out.empty()) throw wwr::ValidationError("--out directory is required in batch mode");
  fs::create_directories(opt.out);

  wwr::parallel_for(items.size(), opt.jobs, [&](std::size_t i) {
    const auto& item = items[i];
    const wwr::RasterImage img = wwr::decode_image(item.image_path);
    const auto polys = wwr::select_labeled(wwr::parse_annotations(*item.annotation_path), labels);
    const wwr::BinaryMask mask = wwr::rasterize_polygons(polys, img.width, img.height);
    wwr::encode_mask_png(mask, fs::path(opt.out) / (item.id + "_mask.png"));
  });
  for (const auto& item : items) log_debug("rasterized " + item.id);
  log_info("rasterized " + std::to_string(items.size()) + " annotated items -> " + opt.out);
}

void run_rasterize(const RasterizeOpts& opt) {
  if (fs::is_directory(opt.input))
    run_rasterize_dir(opt);
  else
    run_rasterize_file(opt);
}

// ---------------------------------------------------------------------------
// fuse

struct FuseOpts {
  std::string base;
  std::string mask;
  std::string labels_dir;
  std::string masks_dir;
  std::string out;
  std::string classes;
  std::string label_suffix = "_label";
  unsigned jobs = default_jobs();
};

void run_fuse(const FuseOpts& opt) {
  const wwr::ClassConfig cfg = parse_classes(opt.classes);
  if (!opt.base.empty()) {
    if (opt.mask.empty() || opt.out.empty())
      throw wwr::ValidationError("single-file fuse needs --base, --mask and --out");
    const wwr::LabelMap fused =
        wwr::fuse_labels(wwr::decode_label_png(opt.base), wwr::decode_mask_png(opt.mask), cfg);
    wwr::encode_label_png(fused, opt.out);
    log_info("fused " + opt.base + " + " + opt.mask + " -> " + opt.out);
    return;
  }

  if (opt.labels_dir.empty() || opt.masks_dir.empty() || opt.out.empty())
    throw wwr::ValidationError("batch fuse needs --labels, --masks and --out directories");
  const auto label_files = list_pngs(opt.labels_dir);
  fs::create_directories(opt.out);

  wwr::parallel_for(label_files.size(), opt.jobs, [&](std::size_t i) {
    const std::string id = strip_suffix(label_files[i].stem().string(), opt.label_suffix);
    const fs::path mask_path = fs::path(opt.masks_dir) / (id + "_mask.png");
    if (!fs::exists(mask_path))
      throw wwr::PairingError("no mask for id \"" + id + "\" (expected " + mask_path.string() + ")");
    const wwr::LabelMap fused =
        wwr::fuse_labels(wwr::decode_label_png(label_files[i]), wwr::decode_mask_png(mask_path), cfg);
    wwr::encode_label_png(fused, fs::path(opt.out) / (id + opt.label_suffix + ".png"));
  });
  for (const auto& f : label_files) log_debug("fused " + f.stem().string());
  log_info("fused " + std::to_string(label_files.size()) + " label maps -> " + opt.out);
}

// ---------------------------------------------------------------------------
// preprocess

struct PreprocessOpts {
  std::string input;
  std::string out;
  bool fcn = false;
  bool segformer = false;
  int size = 0;
  std::uint64_t seed = 0;
  std::optional<double> crop_fraction;
  std::vector<double> mean;
  std::vector<double> stddev;
  std::string label;
  std::string label_out;
};

void run_preprocess(const PreprocessOpts& opt) {
  wwr::NormalizationParams params;
  auto fill3 = [](const std::vector<double>& v, std::array<float, 3>& dst, const char* name) {
    if (v.empty()) return;
    if (v.size() != 3)
      throw wwr::ValidationError(std::string(name) + " needs exactly 3 values");
    for (int i = 0; i < 3; ++i) dst[i] = static_cast<float>(v[i]);
  };
  fill3(opt.mean, params.mean, "--mean");
  fill3(opt.stddev, params.stddev, "--std");
  params.validate();

  if (!opt.label.empty() && opt.label_out.empty())
    throw wwr::ValidationError("--label requires --label-out");

  const int size = opt.size > 0
                       ? opt.size
                       : (opt.fcn ? wwr::kFcnInputSize : wwr::kSegformerInputSize);
  const wwr::RasterImage img = wwr::decode_image(opt.input);
  const fs::path out = opt.out.empty()
                           ? fs::path(opt.input).replace_extension(".f32")
                           : fs::path(opt.out);

  if (opt.fcn) {
    const wwr::FloatImage tensor = wwr::normalize(wwr::resize_bilinear(img, size, size), params);
    wwr::export_tensor(tensor, out);
    if (!opt.label.empty()) {
      const wwr::LabelMap resized =
          wwr::resize_nearest(wwr::decode_label_png(opt.label), size, size);
      wwr::encode_label_png(resized, opt.label_out);
    }
  } else {
    const wwr::FloatImage normalized = wwr::normalize(img, params);
    wwr::LabelMap map = opt.label.empty()
                            ? wwr::LabelMap(img.width, img.height, wwr::kIgnoreIndex)
                            : wwr::decode_label_png(opt.label);
    const wwr::CropPadResult result =
        wwr::crop_pad_resize(normalized, map, size, opt.seed, opt.crop_fraction);
    wwr::export_tensor(result.image, out);
    if (!opt.label.empty()) wwr::encode_label_png(result.labels, opt.label_out);
  }
  log_info("preprocessed " + opt.input + " -> " + out.string() + " (" +
           (opt.fcn ? "fcn" : "segformer") + ", size " + std::to_string(size) + ")");
}

// ---------------------------------------------------------------------------
// wwr / iou / eval

struct WwrOpts {
  std::string input;
  std::string out;
  std::string classes;
  std::string label_suffix = "_label";
  unsigned jobs = default_jobs();
};

void run_wwr(const WwrOpts& opt) {
  const wwr::ClassConfig cfg = parse_classes(opt.classes);
  if (fs::is_directory(opt.input)) {
    const LabeledRecords recs = records_from_dir(opt.input, cfg, opt.label_suffix, opt.jobs);
    if (opt.out.empty())
      wwr::write_wwr_csv(recs.records, std::cout);
    else
      wwr::write_wwr_csv(recs.records, fs::path(opt.out));
    return;
  }

  const wwr::LabelMap map = wwr::decode_label_png(opt.input);
  const std::string id = strip_suffix(fs::path(opt.input).stem().string(), opt.label_suffix);
  const wwr::WWRRecord rec = wwr::compute_wwr(map, cfg, id);
  log_info("window=" + std::to_string(rec.window_pixels) +
           " facade=" + std::to_string(rec.facade_pixels));
  std::cout << (rec.defined ? "wwr=" + wwr::format_double(rec.wwr) : "wwr=undefined") << "\n";
  if (!opt.out.empty()) wwr::write_wwr_csv({rec}, fs::path(opt.out));
}

struct IouOpts {
  std::string pred;
  std::string truth;
};

void run_iou(const IouOpts& opt) {
  const wwr::IoUResult r =
      wwr::compute_iou(wwr::decode_mask_png(opt.pred), wwr::decode_mask_png(opt.truth));
  std::cout << "iou=" << wwr::format_double(r.iou) << " intersection=" << r.intersection
            << " union=" << r.union_ << "\n";
}

struct EvalOpts {
  std::string pred;
  std::string truth;
  std::string classes;
  std::string label_suffix = "_label";
  double threshold = 0.10;
  bool relative = false;
  unsigned jobs = default_jobs();
};

void run_eval(const EvalOpts& opt) {
  const wwr::ClassConfig cfg = parse_classes(opt.classes);
  const auto pred = records_from_dir(opt.pred, cfg, opt.label_suffix, opt.jobs);
  const auto truth = records_from_dir(opt.truth, cfg, opt.label_suffix, opt.jobs);
  const wwr::ErrorSummary s =
      wwr::wwr_error(pred.records, truth.records, opt.threshold, opt.relative);

  std::cout << "pairs: " << s.n << " (excluded: " << s.n_excluded << ")\n"
            << "mean abs error: " << wwr::format_double(s.mean_abs_error) << "\n"
            << "within " << wwr::format_double(s.threshold)
            << (opt.relative ? " (relative)" : "") << ": "
            << wwr::format_double(100.0 * s.fraction_within) << "%\n";
  std::cout << "{\"n\":" << s.n << ",\"n_excluded\":" << s.n_excluded
            << ",\"mean_abs_error\":" << wwr::format_double(s.mean_abs_error)
            << ",\"fraction_within\":" << wwr::format_double(s.fraction_within)
            << ",\"threshold\":" << wwr::format_double(s.threshold)
            << ",\"relative\":" << (opt.relative ? "true" : "false") << "}\n";
}

// ---------------------------------------------------------------------------
// warp / detect-corners

struct WarpOpts {
  std::string image;
  std::vector<double> corners;
  std::string auto_mask;
  bool auto_edges = false;
  double canny_low = 50.0;
  double canny_high = 150.0;
  std::string out;
  std::string label;
  std::string label_out;
  std::string classes;
};

wwr::Quad resolve_quad(const WarpOpts& opt, const std::optional<wwr::RasterImage>& img) {
  const int sources = (!opt.corners.empty() ? 1 : 0) + (!opt.auto_mask.empty() ? 1 : 0) +
                      (opt.auto_edges ? 1 : 0);
  if (sources != 1)
    throw wwr::ValidationError(
        "need exactly one corner source: --corners, --auto-mask or --auto-edges");
  if (!opt.corners.empty()) return quad_from_values(opt.corners);
  if (!opt.auto_mask.empty())
    return wwr::corners_from_mask(wwr::decode_label_png(opt.auto_mask), parse_classes(opt.classes));
  if (!img) throw wwr::ValidationError("--auto-edges needs an input image");
  return wwr::quad_from_edges(wwr::detect_edges(*img, opt.canny_low, opt.canny_high));
}

void run_warp(const WarpOpts& opt) {
  if (opt.image.empty() && opt.label.empty())
    throw wwr::ValidationError("nothing to warp; pass an image and/or --label");
  if (!opt.image.empty() && opt.out.empty())
    throw wwr::ValidationError("warping an image needs --out");
  if (!opt.label.empty() && opt.label_out.empty())
    throw wwr::ValidationError("--label requires --label-out");

  std::optional<wwr::RasterImage> img;
  if (!opt.image.empty()) img = wwr::decode_image(opt.image);

  const wwr::Quad quad = resolve_quad(opt, img);
  const wwr::TargetRect target = wwr::target_rectangle(quad);
  const wwr::Homography H = wwr::estimate_homography(quad, target.dst);
  log_info("corners " + corners_json(quad) + " -> " + std::to_string(target.width) + "x" +
           std::to_string(target.height));

  if (img) wwr::encode_png(wwr::warp_image(*img, H, target.width, target.height), opt.out);
  if (!opt.label.empty())
    wwr::encode_label_png(
        wwr::warp_labels(wwr::decode_label_png(opt.label), H, target.width, target.height),
        opt.label_out);
}

struct DetectCornersOpts {
  std::string mask;
  std::string edges;
  double canny_low = 50.0;
  double canny_high = 150.0;
  std::string classes;
};

void run_detect_corners(const DetectCornersOpts& opt) {
  if (opt.mask.empty() == opt.edges.empty())
    throw wwr::ValidationError("pass exactly one of --mask or --edges");
  wwr::Quad quad =
      !opt.mask.empty()
          ? wwr::corners_from_mask(wwr::decode_label_png(opt.mask), parse_classes(opt.classes))
          : wwr::quad_from_edges(
                wwr::detect_edges(wwr::decode_image(opt.edges), opt.canny_low, opt.canny_high));
  std::cout << corners_json(quad) << "\n";
}

// ---------------------------------------------------------------------------
// stats

struct StatsOpts {
  std::string input;
  std::string out = ".";
  std::string classes;
  std::string label_suffix = "_label";
  unsigned jobs = default_jobs();
};

void run_stats(const StatsOpts& opt) {
  const wwr::ClassConfig cfg = parse_classes(opt.classes);
  const LabeledRecords recs = records_from_dir(opt.input, cfg, opt.label_suffix, opt.jobs);
  std::vector<std::pair<wwr::WWRRecord, std::uint64_t>> input;
  input.reserve(recs.records.size());
  for (std::size_t i = 0; i < recs.records.size(); ++i)
    input.emplace_back(recs.records[i], recs.total_pixels[i]);
  const wwr::DatasetStats stats = wwr::dataset_stats(input);
  wwr::emit_report(stats, opt.out);
  std::cout << "n=" << stats.n << " defined=" << stats.n_defined
            << " mean_wwr=" << wwr::format_double(stats.mean_wwr)
            << " mode_wwr=" << wwr::format_double(stats.mode_wwr) << "\n";
  log_info("report written to " + opt.out);
}

}  // namespace

int main(int argc, char** argv) {
  g_log_level = log_level_from_env();

  CLI::App app{"Window-to-Wall Ratio pipeline for facade segmentation datasets"};
  app.require_subcommand(1);

  RasterizeOpts rasterize_opts;
  auto* rasterize = app.add_subcommand(
      "rasterize", "Rasterize window polygon annotations into a binary mask PNG");
  rasterize->add_option("input", rasterize_opts.input, "Annotation .json file or dataset directory")
      ->required()
      ->check(CLI::ExistingPath);
  rasterize->add_option("--out", rasterize_opts.out, "Output mask PNG (file mode) or directory");
  rasterize->add_option("--width", rasterize_opts.width, "Mask width in pixels");
  rasterize->add_option("--height", rasterize_opts.height, "Mask height in pixels");
  rasterize->add_option("--image", rasterize_opts.image, "Image whose dimensions the mask uses")
      ->check(CLI::ExistingFile);
  rasterize->add_option("--window-labels", rasterize_opts.window_labels,
                        "Comma-separated labels treated as windows");
  rasterize->add_option("--label-suffix", rasterize_opts.label_suffix,
                        "Label-map companion suffix used by dataset scans");
  rasterize->add_option("--jobs", rasterize_opts.jobs, "Parallel workers")->check(CLI::PositiveNumber);
  rasterize->callback([&] { run_rasterize(rasterize_opts); });

  FuseOpts fuse_opts;
  auto* fuse = app.add_subcommand("fuse", "Overlay a window mask onto a base label map");
  fuse->add_option("--base", fuse_opts.base, "Base label-map PNG")->check(CLI::ExistingFile);
  fuse->add_option("--mask", fuse_opts.mask, "Window mask PNG")->check(CLI::ExistingFile);
  fuse->add_option("--labels", fuse_opts.labels_dir, "Directory of base label maps")
      ->check(CLI::ExistingDirectory);
  fuse->add_option("--masks", fuse_opts.masks_dir, "Directory of window masks")
      ->check(CLI::ExistingDirectory);
  fuse->add_option("--out", fuse_opts.out, "Output PNG (single) or directory (batch)")->required();
  fuse->add_option("--classes", fuse_opts.classes, "Class overrides, e.g. building=2,window=9");
  fuse->add_option("--label-suffix", fuse_opts.label_suffix, "Label-map filename suffix");
  fuse->add_option("--jobs", fuse_opts.jobs, "Parallel workers")->check(CLI::PositiveNumber);
  fuse->callback([&] { run_fuse(fuse_opts); });

  PreprocessOpts pre_opts;
  auto* pre = app.add_subcommand("preprocess", "Produce a model-ready tensor from an image");
  pre->add_option("input", pre_opts.input, "Input image (PNG or JPEG)")
      ->required()
      ->check(CLI::ExistingFile);
  auto* fcn_flag = pre->add_flag("--fcn", pre_opts.fcn, "FCN path: bilinear resize to 520");
  auto* seg_flag =
      pre->add_flag("--segformer", pre_opts.segformer, "SegFormer path: crop/pad/resize to 512");
  fcn_flag->excludes(seg_flag);
  seg_flag->excludes(fcn_flag);
  pre->add_option("--size", pre_opts.size, "Override the output size")->check(CLI::PositiveNumber);
  pre->add_option("--seed", pre_opts.seed, "Seed for the random crop");
  pre->add_option("--crop-fraction", pre_opts.crop_fraction,
                  "Force the crop scale fraction instead of drawing it");
  pre->add_option("--mean", pre_opts.mean, "Normalization means (3 values)")->delimiter(',');
  pre->add_option("--std", pre_opts.stddev, "Normalization stddevs (3 values)")->delimiter(',');
  pre->add_option("--out", pre_opts.out, "Output tensor file (default: input with .f32)");
  pre->add_option("--label", pre_opts.label, "Label map to transform with the same geometry")
      ->check(CLI::ExistingFile);
  pre->add_option("--label-out", pre_opts.label_out, "Output path for the transformed label map");
  pre->callback([&] {
    if (!pre_opts.fcn && !pre_opts.segformer)
      throw wwr::ValidationError("pick a preprocessing path: --fcn or --segformer");
    run_preprocess(pre_opts);
  });

  WwrOpts wwr_opts;
  auto* wwr_cmd = app.add_subcommand("wwr", "Compute window-to-wall ratio from label maps");
  wwr_cmd->add_option("input", wwr_opts.input, "Label-map PNG or directory of label maps")
      ->required()
      ->check(CLI::ExistingPath);
  wwr_cmd->add_option("--out", wwr_opts.out, "Write records CSV here");
  wwr_cmd->add_option("--classes", wwr_opts.classes, "Class overrides");
  wwr_cmd->add_option("--label-suffix", wwr_opts.label_suffix, "Label-map filename suffix");
  wwr_cmd->add_option("--jobs", wwr_opts.jobs, "Parallel workers")->check(CLI::PositiveNumber);
  wwr_cmd->callback([&] { run_wwr(wwr_opts); });

  IouOpts iou_opts;
  auto* iou = app.add_subcommand("iou", "Intersection over union of two window masks");
  iou->add_option("--pred", iou_opts.pred, "Predicted mask PNG")->required()->check(CLI::ExistingFile);
  iou->add_option("--truth", iou_opts.truth, "Ground-truth mask PNG")->required()->check(CLI::ExistingFile);
  iou->callback([&] { run_iou(iou_opts); });

  EvalOpts eval_opts;
  auto* eval = app.add_subcommand("eval", "Compare predicted WWRs against ground truth");
  eval->add_option("--pred", eval_opts.pred, "Directory of predicted label maps")
      ->required()
      ->check(CLI::ExistingDirectory);
  eval->add_option("--truth", eval_opts.truth, "Directory of ground-truth label maps")
      ->required()
      ->check(CLI::ExistingDirectory);
  eval->add_option("--threshold", eval_opts.threshold, "Error band (default 0.10)");
  eval->add_flag("--relative", eval_opts.relative, "Use |err|/truth instead of absolute error");
  eval->add_option("--classes", eval_opts.classes, "Class overrides");
  eval->add_option("--label-suffix", eval_opts.label_suffix, "Label-map filename suffix");
  eval->add_option("--jobs", eval_opts.jobs, "Parallel workers")->check(CLI::PositiveNumber);
  eval->callback([&] { run_eval(eval_opts); });

  WarpOpts warp_opts;
  auto* warp = app.add_subcommand("warp", "Perspective-correct a facade photo to fronto-parallel");
  warp->add_option("image", warp_opts.image, "Input image")->check(CLI::ExistingFile);
  warp->add_option("--corners", warp_opts.corners,
                   "Four corners as x1,y1,x2,y2,x3,y3,x4,y4 (any order)")
      ->delimiter(',');
  warp->add_option("--auto-mask", warp_opts.auto_mask, "Detect corners from this label map")
      ->check(CLI::ExistingFile);
  warp->add_flag("--auto-edges", warp_opts.auto_edges, "Detect corners via edges + Hough");
  warp->add_option("--canny-low", warp_opts.canny_low, "Hysteresis low threshold");
  warp->add_option("--canny-high", warp_opts.canny_high, "Hysteresis high threshold");
  warp->add_option("--out", warp_opts.out, "Corrected image PNG");
  warp->add_option("--label", warp_opts.label, "Label map to warp with the same homography")
      ->check(CLI::ExistingFile);
  warp->add_option("--label-out", warp_opts.label_out, "Output path for the warped label map");
  warp->add_option("--classes", warp_opts.classes, "Class overrides");
  warp->callback([&] { run_warp(warp_opts); });

  DetectCornersOpts corners_opts;
  auto* corners = app.add_subcommand("detect-corners", "Print facade corner candidates as JSON");
  corners->add_option("--mask", corners_opts.mask, "Label map for segmentation-based detection")
      ->check(CLI::ExistingFile);
  corners->add_option("--edges", corners_opts.edges, "Image for edge-based detection")
      ->check(CLI::ExistingFile);
  corners->add_option("--canny-low", corners_opts.canny_low, "Hysteresis low threshold");
  corners->add_option("--canny-high", corners_opts.canny_high, "Hysteresis high threshold");
  corners->add_option("--classes", corners_opts.classes, "Class overrides");
  corners->callback([&] { run_detect_corners(corners_opts); });

  StatsOpts stats_opts;
  auto* stats = app.add_subcommand("stats", "Dataset WWR distribution report (CSV + SVG)");
  stats->add_option("input", stats_opts.input, "Directory of label maps")
      ->required()
      ->check(CLI::ExistingDirectory);
  stats->add_option("--out", stats_opts.out, "Report output directory (default .)");
  stats->add_option("--classes", stats_opts.classes, "Class overrides");
  stats->add_option("--label-suffix", stats_opts.label_suffix, "Label-map filename suffix");
  stats->add_option("--jobs", stats_opts.jobs, "Parallel workers")->check(CLI::PositiveNumber);
  stats->callback([&] { run_stats(stats_opts); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    std::cerr << app.help() << "\n";
    return 1;
  } catch (const wwr::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const wwr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
