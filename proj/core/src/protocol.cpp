#include "tempodeg/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "tempodeg/error.hpp"

namespace tempodeg {

using nlohmann::json;

std::vector<std::size_t> uniform_frame_indices(std::size_t frames, std::size_t n) {
  if (n < 1 || n > frames) {
    throw ParameterError("sample count " + std::to_string(n) + " must lie in [1, " +
                         std::to_string(frames) + "]");
  }
  if (n == 1) return {0};
  std::vector<std::size_t> out;
  out.reserve(n);
  const double step = static_cast<double>(frames - 1) / static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(static_cast<std::size_t>(std::round(static_cast<double>(k) * step)));
  }
  out.back() = frames - 1;
  return out;
}

Box expand_box(const Box& box, double fraction, std::size_t height, std::size_t width) {
  if (!(box.w > 0.0) || !(box.h > 0.0) || !std::isfinite(box.x) || !std::isfinite(box.y)) {
    throw ParameterError("degenerate box");
  }
  if (!(fraction >= 0.0)) throw ParameterError("expansion fraction must be >= 0");
  const double x0 = std::max(0.0, box.x - fraction * box.w);
  const double y0 = std::max(0.0, box.y - fraction * box.h);
  const double x1 = std::min(static_cast<double>(width), box.x + box.w + fraction * box.w);
  const double y1 = std::min(static_cast<double>(height), box.y + box.h + fraction * box.h);
  if (!(x1 > x0) || !(y1 > y0)) throw ParameterError("box lies outside the frame");
  return {x0, y0, x1 - x0, y1 - y0};
}

GainSummary relative_gain(std::span<const double> score_in, std::span<const double> score_out) {
  if (score_in.size() != score_out.size()) {
    throw ParameterError("relative gain needs paired series of equal length");
  }
  if (score_in.empty()) throw ParameterError("relative gain needs at least one crop");
  GainSummary g;
  double percent = 0.0;
  double delta = 0.0;
  for (std::size_t i = 0; i < score_in.size(); ++i) {
    if (std::abs(score_in[i]) <= kGainEpsilon) {
      ++g.excluded;
      continue;
    }
    percent += 100.0 * (score_out[i] - score_in[i]) / std::abs(score_in[i]);
    delta += score_out[i] - score_in[i];
    ++g.used;
  }
  if (g.used == 0) throw ParameterError("relative gain undefined: every input score is ~0");
  g.percent = percent / static_cast<double>(g.used);
  g.mean_delta = delta / static_cast<double>(g.used);
  return g;
}

double aggregate_scores(const std::vector<std::vector<double>>& table) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& row : table) {
    for (double v : row) sum += v;
    count += row.size();
  }
  if (count == 0) throw ParameterError("cannot aggregate an empty score table");
  return sum / static_cast<double>(count);
}

std::vector<SidecarEntry> parse_sidecar(const json& doc) {
  if (!doc.is_array()) throw SidecarError("sidecar must be a JSON array");
  std::vector<SidecarEntry> out;
  out.reserve(doc.size());
  try {
    for (const json& e : doc) {
      SidecarEntry entry;
      const json& fi = e.at("frame_index");
      if (!fi.is_number_integer() || fi.get<long long>() < 0) {
        throw SidecarError("frame_index must be a non-negative integer");
      }
      entry.frame_index = fi.get<std::size_t>();
      const json& b = e.at("box");
      entry.box = {b.at("x").get<double>(), b.at("y").get<double>(), b.at("w").get<double>(),
                   b.at("h").get<double>()};
      const json& s = e.at("scores");
      if (!s.is_object() || s.empty()) throw SidecarError("scores must be a non-empty object");
      for (auto it = s.begin(); it != s.end(); ++it) {
        if (!it.value().is_number()) throw SidecarError("score '" + it.key() + "' is not a number");
        entry.scores[it.key()] = it.value().get<double>();
      }
      out.push_back(std::move(entry));
    }
  } catch (const json::exception& e) {
    throw SidecarError(std::string("malformed sidecar entry: ") + e.what());
  }
  return out;
}

std::vector<SidecarEntry> parse_sidecar_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw SidecarError(std::string("sidecar is not valid JSON: ") + e.what());
  }
  return parse_sidecar(doc);
}

std::vector<SidecarEntry> load_sidecar(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open sidecar " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_sidecar_text(ss.str());
}

SidecarEvaluation evaluate_sidecars(const std::vector<SidecarEntry>& input,
                                    const std::vector<SidecarEntry>& output,
                                    std::size_t frames, std::size_t n, double fraction,
                                    std::size_t height, std::size_t width) {
  using Key = std::pair<std::size_t, Box>;
  auto index = [](const std::vector<SidecarEntry>& entries, const char* which) {
    std::map<Key, const SidecarEntry*> m;
    for (const SidecarEntry& e : entries) {
      if (!m.emplace(Key{e.frame_index, e.box}, &e).second) {
        throw SidecarError(std::string(which) + " sidecar repeats a (frame_index, box) key");
      }
    }
    return m;
  };
  const auto in_map = index(input, "input");
  const auto out_map = index(output, "output");
  if (in_map.size() != out_map.size()) {
    throw SidecarError("input and output sidecars hold different crop sets");
  }
  for (const auto& [key, entry] : in_map) {
    if (!out_map.contains(key)) {
      throw SidecarError("crop at frame " + std::to_string(key.first) +
                         " has no partner in the output sidecar");
    }
    if (key.first >= frames) {
      throw SidecarError("sidecar frame_index " + std::to_string(key.first) +
                         " is past the end of the clip");
    }
  }

  SidecarEvaluation ev;
  ev.frames = uniform_frame_indices(frames, n);
  const std::set<std::size_t> sampled(ev.frames.begin(), ev.frames.end());

  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> series;
  for (const auto& [key, in_entry] : in_map) {
    if (!sampled.contains(key.first)) continue;
    const SidecarEntry* out_entry = out_map.at(key);
    try {
      ev.expanded.emplace_back(key.first, expand_box(key.second, fraction, height, width));
    } catch (const ParameterError& e) {
      throw SidecarError("bad box at frame " + std::to_string(key.first) + ": " + e.what());
    }
    ++ev.crops;
    for (const auto& [metric, v] : in_entry->scores) {
      const auto it = out_entry->scores.find(metric);
      if (it == out_entry->scores.end()) {
        throw SidecarError("metric '" + metric + "' missing from output crop at frame " +
                           std::to_string(key.first));
      }
      series[metric].first.push_back(v);
      series[metric].second.push_back(it->second);
    }
    if (out_entry->scores.size() != in_entry->scores.size()) {
      throw SidecarError("output crop at frame " + std::to_string(key.first) +
                         " carries metrics absent from the input");
    }
  }
  if (ev.crops == 0) throw SidecarError("no crops fall on the sampled frames");

  for (auto& [metric, pair] : series) {
    MetricGain mg;
    mg.metric = metric;
    mg.mean_in = aggregate_scores({pair.first});
    mg.mean_out = aggregate_scores({pair.second});
    try {
      mg.gain = relative_gain(pair.first, pair.second);
    } catch (const ParameterError& e) {
      throw SidecarError("metric '" + metric + "': " + e.what());
    }
    ev.metrics.push_back(std::move(mg));
  }
  return ev;
}

}  // namespace tempodeg
