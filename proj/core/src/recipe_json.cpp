#include "tempodeg/recipe_json.hpp"

#include <fstream>
#include <sstream>

#include "tempodeg/canonical_json.hpp"
#include "tempodeg/error.hpp"

namespace tempodeg {

using nlohmann::json;

namespace {

json floats(std::span<const float> values) {
  json arr = json::array();
  for (float v : values) arr.push_back(static_cast<double>(v));
  return arr;
}

std::vector<float> read_floats(const json& arr) {
  std::vector<float> out;
  out.reserve(arr.size());
  for (const json& v : arr) out.push_back(static_cast<float>(v.get<double>()));
  return out;
}

float read_float(const json& v) { return static_cast<float>(v.get<double>()); }

json key_json(const StreamKey& key) {
  return {{"seed", key.seed}, {"op_index", key.op_index}, {"purpose", key.purpose}};
}

StreamKey read_key(const json& j) {
  return {j.at("seed").get<std::uint64_t>(), j.at("op_index").get<std::uint32_t>(),
          j.at("purpose").get<std::string>()};
}

json spec_json(const TrajectorySpec& s) {
  return {{"basis", std::string(to_string(s.basis))},
          {"min", static_cast<double>(s.min)},
          {"max", static_cast<double>(s.max)},
          {"cycles", static_cast<double>(s.cycles)},
          {"lattice_points", s.lattice_points},
          {"smooth_window", s.smooth_window},
          {"stream", key_json(s.key)}};
}

TrajectorySpec read_spec(const json& j) {
  TrajectorySpec s;
  s.basis = parse_basis(j.at("basis").get<std::string>());
  s.min = read_float(j.at("min"));
  s.max = read_float(j.at("max"));
  s.cycles = read_float(j.at("cycles"));
  s.lattice_points = j.at("lattice_points").get<int>();
  s.smooth_window = j.at("smooth_window").get<int>();
  s.key = read_key(j.at("stream"));
  return s;
}

json trajectory_json(const TrajectorySpec& spec, const Trajectory& t) {
  return {{"spec", spec_json(spec)}, {"values", floats(t.values)}};
}

std::pair<TrajectorySpec, Trajectory> read_trajectory(const json& j) {
  return {read_spec(j.at("spec")), Trajectory{read_floats(j.at("values"))}};
}

json op_json(const TemporalOp& op) {
  json j;
  j["op"] = std::string(to_string(operator_of(op)));
  if (const auto* b = std::get_if<MotionBlurOp>(&op)) {
    j["theta"] = trajectory_json(b->theta_spec, b->theta);
    j["length"] = trajectory_json(b->length_spec, b->length);
  } else if (const auto* w = std::get_if<GridWarpOp>(&op)) {
    j["field"] = {{"grid_h", w->field_spec.grid_h},
                  {"grid_w", w->field_spec.grid_w},
                  {"amplitude", static_cast<double>(w->field_spec.amplitude)},
                  {"temporal_knots", w->field_spec.temporal_knots},
                  {"smooth_window", w->field_spec.smooth_window},
                  {"basis", std::string(to_string(w->field_spec.basis))}};
    j["stream"] = key_json(w->key);
    j["control"] = floats(w->fields.control());
  } else if (const auto* m = std::get_if<TemporalMorphOp>(&op)) {
    j["strength"] = static_cast<double>(m->strength);
    j["alpha"] = trajectory_json(m->alpha_spec, m->alpha);
  } else if (const auto* d = std::get_if<FrameDropOp>(&op)) {
    j["p_drop"] = static_cast<double>(d->p_drop);
    j["max_run"] = d->mask.max_run;
    j["stream"] = key_json(d->key);
    json keep = json::array();
    for (bool k : d->mask.keep) keep.push_back(k ? 1 : 0);
    j["keep"] = std::move(keep);
  } else if (const auto* t = std::get_if<TemporalDownsampleOp>(&op)) {
    j["s_temp"] = static_cast<double>(t->s_temp);
  }
  return j;
}

TemporalOp read_op(const json& j, const ClipShape& shape) {
  switch (parse_operator(j.at("op").get<std::string>())) {
    case OperatorId::kMotionBlur: {
      MotionBlurOp op;
      std::tie(op.theta_spec, op.theta) = read_trajectory(j.at("theta"));
      std::tie(op.length_spec, op.length) = read_trajectory(j.at("length"));
      return op;
    }
    case OperatorId::kGridWarp: {
      GridWarpOp op;
      const json& f = j.at("field");
      op.field_spec.grid_h = f.at("grid_h").get<std::size_t>();
      op.field_spec.grid_w = f.at("grid_w").get<std::size_t>();
      op.field_spec.amplitude = read_float(f.at("amplitude"));
      op.field_spec.temporal_knots = f.at("temporal_knots").get<int>();
      op.field_spec.smooth_window = f.at("smooth_window").get<int>();
      op.field_spec.basis = parse_basis(f.at("basis").get<std::string>());
      op.key = read_key(j.at("stream"));
      op.fields = DisplacementFieldSeq(shape.frames, shape.height, shape.width,
                                       op.field_spec.grid_h, op.field_spec.grid_w,
                                       read_floats(j.at("control")));
      return op;
    }
    case OperatorId::kTemporalMorph: {
      TemporalMorphOp op;
      op.strength = read_float(j.at("strength"));
      std::tie(op.alpha_spec, op.alpha) = read_trajectory(j.at("alpha"));
      return op;
    }
    case OperatorId::kFrameDrop: {
      FrameDropOp op;
      op.p_drop = read_float(j.at("p_drop"));
      op.key = read_key(j.at("stream"));
      op.mask.max_run = j.at("max_run").get<int>();
      for (const json& k : j.at("keep")) op.mask.keep.push_back(k.get<int>() != 0);
      return op;
    }
    case OperatorId::kTemporalDownsample:
      return TemporalDownsampleOp{read_float(j.at("s_temp"))};
  }
  throw FormatError("unknown operator");
}

}  // namespace

json recipe_to_json(const RecipeRecord& r) {
  json ops = json::array();
  for (const TemporalOp& op : r.temporal_ops) ops.push_back(op_json(op));
  return {{"format", std::string(kRecipeFormat)},
          {"seed", r.seed},
          {"preset", std::string(to_string(r.preset))},
          {"mode", std::string(to_string(r.mode))},
          {"shape",
           {{"frames", r.shape.frames}, {"height", r.shape.height}, {"width", r.shape.width}}},
          {"spatial_stage",
           {{"method", std::string(kSpatialMethod)},
            {"s_spat", static_cast<double>(r.spatial.s_spat)}}},
          {"temporal_ops", std::move(ops)}};
}

RecipeRecord recipe_from_json(const json& doc) {
  try {
    if (doc.at("format").get<std::string>() != kRecipeFormat) {
      throw FormatError("unsupported recipe format '" +
                        doc.at("format").get<std::string>() + "'");
    }
    RecipeRecord r;
    r.seed = doc.at("seed").get<std::uint64_t>();
    r.preset = parse_preset(doc.at("preset").get<std::string>());
    r.mode = parse_trajectory_mode(doc.at("mode").get<std::string>());
    const json& shape = doc.at("shape");
    r.shape = {shape.at("frames").get<std::size_t>(), shape.at("height").get<std::size_t>(),
               shape.at("width").get<std::size_t>()};
    const json& spatial = doc.at("spatial_stage");
    if (spatial.at("method").get<std::string>() != kSpatialMethod) {
      throw FormatError("unsupported spatial method");
    }
    r.spatial.s_spat = read_float(spatial.at("s_spat"));
    for (const json& op : doc.at("temporal_ops")) r.temporal_ops.push_back(read_op(op, r.shape));
    return r;
  } catch (const FormatError&) {
    throw;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed recipe: ") + e.what());
  } catch (const ParameterError& e) {
    throw FormatError(std::string("malformed recipe: ") + e.what());
  }
}

std::string serialize_recipe(const RecipeRecord& recipe) {
  return canonical_dump(recipe_to_json(recipe));
}

RecipeRecord parse_recipe(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("recipe is not valid JSON: ") + e.what());
  }
  return recipe_from_json(doc);
}

void save_recipe(const RecipeRecord& recipe, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << serialize_recipe(recipe);
  if (!out) throw IoError("failed writing " + path.string());
}

RecipeRecord load_recipe(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open recipe " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_recipe(ss.str());
}

}  // namespace tempodeg
