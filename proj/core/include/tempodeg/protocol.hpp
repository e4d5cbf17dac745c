#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

// Crop-level evaluation protocol: frame sampling, detection box expansion,
// relative-gain aggregation, and the score sidecars produced by external
// detectors/scorers.
namespace tempodeg {

inline constexpr std::size_t kDefaultSampleCount = 16;
inline constexpr double kDefaultBoxExpansion = 0.1;
inline constexpr double kGainEpsilon = 1e-9;

/// round(k (T-1) / (n-1)) for k = 0..n-1, or {0} when n == 1.
/// Throws ParameterError unless 1 <= n <= T.
std::vector<std::size_t> uniform_frame_indices(std::size_t frames, std::size_t n);

struct Box {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;
  friend bool operator==(const Box&, const Box&) = default;
  friend auto operator<=>(const Box&, const Box&) = default;
};

/// Grows each side by fraction * (that side's dimension) and clamps to the
/// frame. Throws ParameterError for a degenerate box, a negative fraction, or
/// a box that does not intersect the frame.
Box expand_box(const Box& box, double fraction, std::size_t height, std::size_t width);

struct GainSummary {
  double percent = 0.0;     // mean of 100 (out - in) / |in| over used crops
  double mean_delta = 0.0;  // mean of (out - in) over used crops
  std::size_t used = 0;
  std::size_t excluded = 0;  // crops with |in| <= kGainEpsilon
};

/// Throws ParameterError on unequal or empty series, or when every crop is
/// excluded (the gain is undefined).
GainSummary relative_gain(std::span<const double> score_in, std::span<const double> score_out);

/// Unweighted mean over every cell. Throws ParameterError when empty.
double aggregate_scores(const std::vector<std::vector<double>>& table);

struct SidecarEntry {
  std::size_t frame_index = 0;
  Box box;
  std::map<std::string, double> scores;
};

/// Array of {frame_index, box{x,y,w,h}, scores{id: value}}. Throws
/// SidecarError on anything else.
std::vector<SidecarEntry> parse_sidecar(const nlohmann::json& doc);
std::vector<SidecarEntry> parse_sidecar_text(std::string_view text);
std::vector<SidecarEntry> load_sidecar(const std::filesystem::path& path);

struct MetricGain {
  std::string metric;
  double mean_in = 0.0;
  double mean_out = 0.0;
  GainSummary gain;
};

struct SidecarEvaluation {
  std::vector<std::size_t> frames;  // sampled frame indices
  std::size_t crops = 0;            // paired crops on sampled frames
  std::vector<std::pair<std::size_t, Box>> expanded;  // crop regions after expansion
  std::vector<MetricGain> metrics;                    // sorted by metric id
};

/// Pairs input/output entries by (frame_index, box), keeps those on the
/// uniformly sampled frames, and computes a relative gain per metric id.
/// Throws SidecarError when the two sidecars do not pair up.
SidecarEvaluation evaluate_sidecars(const std::vector<SidecarEntry>& input,
                                    const std::vector<SidecarEntry>& output,
                                    std::size_t frames, std::size_t n, double fraction,
                                    std::size_t height, std::size_t width);

}  // namespace tempodeg
