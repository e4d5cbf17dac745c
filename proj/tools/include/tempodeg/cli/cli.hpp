#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tempodeg/clip.hpp"
#include "tempodeg/png_codec.hpp"
#include "tempodeg/preset.hpp"

namespace tempodeg::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,  // unexpected failure (including a failed determinism check)
  kConfig = 2,
  kIo = 3,
  kShapeFormat = 4,
  kSidecar = 5,
};

/// Every knob any subcommand reads. A --config JSON file uses the same names
/// (with '-' or '_') as flat keys; explicit flags win over the file, which
/// wins over these defaults.
struct RunConfig {
  std::string command;
  std::string input;
  std::string output;
  std::string reference;
  std::string test;
  std::string clean;
  std::string degraded;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> metrics{"psnr", "ssim", "flicker"};
  std::size_t n = 16;
  double box_expansion = 0.1;
  unsigned threads = 0;
  std::string recipe;
  std::string report;
  std::string sidecar_in;
  std::string sidecar_out;
  std::string trajectory = "smooth";
  int fps = 24;
  std::size_t frames = 49;
  std::size_t height = 480;
  std::size_t width = 832;
  std::size_t runs = 5;
  std::vector<unsigned> thread_counts{1, 2, 4, 8};
  std::size_t thumb_width = 160;
};

/// Parses args (without the program name) and runs the subcommand. Normal
/// output goes to out, diagnostics to err. Returns an ExitCode.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Contact sheet: a row of clean thumbnails over a row of degraded ones at
/// uniform_frame_indices(T, n), each column labelled with its frame index.
RgbImage render_contact_sheet(const Clip& clean, const Clip& degraded, std::size_t n,
                              std::size_t thumb_width);

struct SheetLayout {
  std::size_t margin = 0;
  std::size_t label_height = 0;
  std::size_t thumb_height = 0;
  std::size_t thumb_width = 0;
  std::size_t columns = 0;
  std::size_t height = 0;
  std::size_t width = 0;
  /// Top-left pixel of thumbnail (row 0 = clean, row 1 = degraded, column).
  std::size_t cell_x(std::size_t column) const;
  std::size_t cell_y(std::size_t row) const;
};
SheetLayout contact_sheet_layout(const ClipShape& shape, std::size_t n, std::size_t thumb_width);

struct BenchOptions {
  ClipShape shape{49, 720, 1280};
  Preset preset = Preset::kStrong;
  std::uint64_t seed = 0;
  std::size_t runs = 5;
  std::vector<unsigned> thread_counts{1, 2, 4, 8};
};

struct ThreadPoint {
  unsigned threads = 1;
  double fps = 0.0;                // median full-pipeline frames/second
  double blur_warp_seconds = 0.0;  // median motion_blur + grid_warp time
  std::uint64_t digest = 0;
};

struct BenchResult {
  std::vector<std::string> operators;
  std::vector<ThreadPoint> scaling;
  std::map<std::string, double> stage_seconds;  // median per stage, most threads
  bool deterministic = true;
  unsigned hardware_threads = 0;
  /// Full-pipeline fps at the largest measured thread count.
  double fps() const;
  /// blur+warp speed-up of `threads` over the single-thread point (0 if
  /// either was not measured).
  double blur_warp_speedup(unsigned threads) const;
};

/// Degrades a synthetic clip repeatedly. Progress lines go to log if given.
BenchResult run_bench(const BenchOptions& options, std::ostream* log = nullptr);

}  // namespace tempodeg::cli
