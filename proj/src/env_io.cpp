#include "navbench/env_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>

namespace navbench::envgen {

using nlohmann::json;

namespace {

constexpr const char* kEnvFormat = "navbench-env";
constexpr const char* kCatalogFormat = "navbench-catalog";
constexpr int kFormatVersion = 1;

[[noreturn]] void fail(const std::string& context, const std::string& what) {
  throw ParseError(context + ": " + what);
}

const json& require(const json& j, const char* key, const std::string& context) {
  auto it = j.find(key);
  if (it == j.end()) fail(context, std::string("missing field '") + key + "'");
  return *it;
}

json vec_to_json(const Vec2& v) { return json{{"x", v.x}, {"y", v.y}}; }

Vec2 vec_from_json(const json& j, const std::string& context) {
  return {require(j, "x", context).get<double>(), require(j, "y", context).get<double>()};
}

json layout_to_json(const LayoutSpec& layout) {
  json walls = json::array();
  for (const WallSpec& w : layout.boundary_walls)
    walls.push_back(json{{"ax", w.a.x}, {"ay", w.a.y}, {"bx", w.b.x}, {"by", w.b.y},
                         {"thickness", w.thickness}});
  return json{
      {"field", {{"min_x", layout.field.min_x}, {"min_y", layout.field.min_y},
                 {"size", layout.field.size}}},
      {"start", {{"x", layout.start.x}, {"y", layout.start.y}, {"theta", layout.start.theta}}},
      {"goal", vec_to_json(layout.goal)},
      {"goal_radius", layout.goal_radius},
      {"path_length", layout.path_length},
      {"boundary_walls", walls},
  };
}

LayoutSpec layout_from_json(const json& j, const std::string& context) {
  LayoutSpec layout;
  const json& field = require(j, "field", context);
  layout.field.min_x = require(field, "min_x", context).get<double>();
  layout.field.min_y = require(field, "min_y", context).get<double>();
  layout.field.size = require(field, "size", context).get<double>();
  const json& start = require(j, "start", context);
  layout.start.x = require(start, "x", context).get<double>();
  layout.start.y = require(start, "y", context).get<double>();
  layout.start.theta = require(start, "theta", context).get<double>();
  layout.goal = vec_from_json(require(j, "goal", context), context + "/goal");
  layout.goal_radius = require(j, "goal_radius", context).get<double>();
  layout.path_length = require(j, "path_length", context).get<double>();
  layout.boundary_walls.clear();
  for (const json& w : require(j, "boundary_walls", context)) {
    WallSpec wall;
    wall.a = {require(w, "ax", context).get<double>(), require(w, "ay", context).get<double>()};
    wall.b = {require(w, "bx", context).get<double>(), require(w, "by", context).get<double>()};
    wall.thickness = require(w, "thickness", context).get<double>();
    layout.boundary_walls.push_back(wall);
  }
  return layout;
}

uint64_t fnv1a64(const std::string& bytes, uint64_t h = 14695981039346656037ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex16(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string env_file_bytes(const EnvironmentSpec& env) {
  return env_to_json(env).dump(2) + "\n";
}

}  // namespace

json env_to_json(const EnvironmentSpec& env) {
  json j{
      {"format", kEnvFormat},
      {"version", kFormatVersion},
      {"id", env.id},
      {"kind", kind_name(env.kind)},
      {"seed", env.seed},
      {"layout", layout_to_json(env.layout)},
  };
  switch (env.kind) {
    case EnvKind::Static: {
      const StaticEnvData& data = env.static_data();
      j["cell_size"] = data.grid.cell_size;
      j["grid"] = data.grid.to_strings();
      j["ca_params"] = {{"initial_fill", data.params.initial_fill},
                        {"smoothing_iterations", data.params.smoothing_iterations},
                        {"fill_threshold", data.params.fill_threshold},
                        {"clear_threshold", data.params.clear_threshold},
                        {"seed", data.params.seed}};
      break;
    }
    case EnvKind::DynamicBox: {
      const DynamicBoxEnvSpec& data = env.box_data();
      j["field_size"] = data.field_size;
      json boxes = json::array();
      for (const BoxObstacle& b : data.boxes)
        boxes.push_back(json{{"width", b.width}, {"length", b.length}, {"height", b.height},
                             {"start_x", b.start.x}, {"start_y", b.start.y},
                             {"heading", b.heading}, {"speed", b.speed}, {"yaw", b.yaw}});
      j["boxes"] = boxes;
      break;
    }
    case EnvKind::DynamicWall: {
      const DynamicWallEnvSpec& data = env.wall_data();
      j["field_size"] = data.field_size;
      j["phase0"] = data.phase0;
      json walls = json::array();
      for (const MovingWall& w : data.walls)
        walls.push_back(json{{"length", w.length}, {"tilt", w.tilt}, {"speed", w.speed},
                             {"direction", w.direction}, {"travel_extent", w.travel_extent},
                             {"axis_x", w.axis_x}, {"rest_offset", w.rest_offset}});
      j["walls"] = walls;
      break;
    }
  }
  return j;
}

EnvironmentSpec env_from_json(const json& j, const std::string& context) {
  if (require(j, "format", context).get<std::string>() != kEnvFormat)
    fail(context, "not a navbench environment file");
  if (require(j, "version", context).get<int>() != kFormatVersion)
    fail(context, "unsupported format version");

  EnvironmentSpec env;
  env.id = require(j, "id", context).get<std::string>();
  env.kind = kind_from_name(require(j, "kind", context).get<std::string>());
  env.seed = require(j, "seed", context).get<uint64_t>();
  env.layout = layout_from_json(require(j, "layout", context), context + "/layout");

  try {
    switch (env.kind) {
      case EnvKind::Static: {
        StaticEnvData data;
        data.grid = OccupancyGrid::from_strings(
            require(j, "grid", context).get<std::vector<std::string>>());
        data.grid.cell_size = require(j, "cell_size", context).get<double>();
        const json& p = require(j, "ca_params", context);
        data.params.initial_fill = require(p, "initial_fill", context).get<double>();
        data.params.smoothing_iterations =
            require(p, "smoothing_iterations", context).get<int>();
        data.params.fill_threshold = require(p, "fill_threshold", context).get<int>();
        data.params.clear_threshold = require(p, "clear_threshold", context).get<int>();
        data.params.seed = require(p, "seed", context).get<uint64_t>();
        env.data = std::move(data);
        break;
      }
      case EnvKind::DynamicBox: {
        DynamicBoxEnvSpec data;
        data.field_size = require(j, "field_size", context).get<double>();
        for (const json& b : require(j, "boxes", context)) {
          BoxObstacle box;
          box.width = require(b, "width", context).get<double>();
          box.length = require(b, "length", context).get<double>();
          box.height = require(b, "height", context).get<double>();
          box.start = {require(b, "start_x", context).get<double>(),
                       require(b, "start_y", context).get<double>()};
          box.heading = require(b, "heading", context).get<double>();
          box.speed = require(b, "speed", context).get<double>();
          box.yaw = require(b, "yaw", context).get<double>();
          data.boxes.push_back(box);
        }
        env.data = std::move(data);
        break;
      }
      case EnvKind::DynamicWall: {
        DynamicWallEnvSpec data;
        data.field_size = require(j, "field_size", context).get<double>();
        data.phase0 = require(j, "phase0", context).get<double>();
        const json& walls = require(j, "walls", context);
        if (walls.size() != 2) fail(context, "dynamic-wall environments need exactly 2 walls");
        for (size_t i = 0; i < 2; ++i) {
          const json& w = walls[i];
          MovingWall& wall = data.walls[i];
          wall.length = require(w, "length", context).get<double>();
          wall.tilt = require(w, "tilt", context).get<double>();
          wall.speed = require(w, "speed", context).get<double>();
          wall.direction = require(w, "direction", context).get<int>();
          wall.travel_extent = require(w, "travel_extent", context).get<double>();
          wall.axis_x = require(w, "axis_x", context).get<double>();
          wall.rest_offset = require(w, "rest_offset", context).get<double>();
        }
        env.data = std::move(data);
        break;
      }
    }
  } catch (const std::invalid_argument& e) {
    fail(context, e.what());
  }
  return env;
}

void save_env(const EnvironmentSpec& env, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path.string() + " for writing");
  out << env_file_bytes(env);
}

EnvironmentSpec load_env(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    fail(path.string(), e.what());
  }
  return env_from_json(j, path.string());
}

std::string catalog_content_hash(const Catalog& catalog) {
  std::vector<const EnvironmentSpec*> byid;
  byid.reserve(catalog.envs.size());
  for (const EnvironmentSpec& e : catalog.envs) byid.push_back(&e);
  std::sort(byid.begin(), byid.end(),
            [](const EnvironmentSpec* a, const EnvironmentSpec* b) { return a->id < b->id; });
  uint64_t h = 14695981039346656037ULL;
  for (const EnvironmentSpec* e : byid) {
    h = fnv1a64(e->id + "\n", h);
    h = fnv1a64(env_file_bytes(*e), h);
  }
  for (const EnvSet& s : catalog.sets) {
    h = fnv1a64("set " + s.name + "\n", h);
    for (const std::string& id : s.members) h = fnv1a64(id + "\n", h);
  }
  return hex16(h);
}

void save_catalog(const Catalog& catalog, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir / "envs");
  json envs = json::object();
  for (const EnvironmentSpec& env : catalog.envs) {
    const std::string rel = "envs/" + env.id + ".json";
    save_env(env, dir / rel);
    envs[env.id] = rel;
  }
  json sets = json::array();
  for (const EnvSet& s : catalog.sets)
    sets.push_back(json{{"name", s.name}, {"kind", kind_name(s.kind)}, {"members", s.members}});
  const json manifest{
      {"format", kCatalogFormat},
      {"version", kFormatVersion},
      {"master_seed", catalog.master_seed},
      {"robot_radius", catalog.robot_radius},
      {"content_hash", catalog_content_hash(catalog)},
      {"envs", envs},
      {"sets", sets},
  };
  std::ofstream out(dir / "manifest.json");
  if (!out) throw ParseError("cannot open " + (dir / "manifest.json").string() + " for writing");
  out << manifest.dump(2) << "\n";
}

Catalog load_catalog(const std::filesystem::path& dir) {
  const std::filesystem::path manifest_path = dir / "manifest.json";
  std::ifstream in(manifest_path);
  if (!in) throw ParseError("cannot open " + manifest_path.string());
  json manifest;
  try {
    in >> manifest;
  } catch (const json::parse_error& e) {
    fail(manifest_path.string(), e.what());
  }
  const std::string context = manifest_path.string();
  if (require(manifest, "format", context).get<std::string>() != kCatalogFormat)
    fail(context, "not a navbench catalog manifest");
  if (require(manifest, "version", context).get<int>() != kFormatVersion)
    fail(context, "unsupported format version");

  Catalog catalog;
  catalog.master_seed = require(manifest, "master_seed", context).get<uint64_t>();
  catalog.robot_radius = require(manifest, "robot_radius", context).get<double>();

  std::map<std::string, std::string> paths =
      require(manifest, "envs", context).get<std::map<std::string, std::string>>();
  catalog.envs.reserve(paths.size());
  for (const auto& [id, rel] : paths) {
    EnvironmentSpec env = load_env(dir / rel);
    if (env.id != id)
      fail(context, "environment id '" + env.id + "' does not match manifest entry '" + id + "'");
    catalog.envs.push_back(std::move(env));
  }

  for (const json& s : require(manifest, "sets", context)) {
    EnvSet set;
    set.name = require(s, "name", context).get<std::string>();
    set.kind = kind_from_name(require(s, "kind", context).get<std::string>());
    set.members = require(s, "members", context).get<std::vector<std::string>>();
    for (const std::string& id : set.members)
      catalog.env(id);  // throws when a member is missing
    catalog.sets.push_back(std::move(set));
  }

  const std::string expected = require(manifest, "content_hash", context).get<std::string>();
  const std::string actual = catalog_content_hash(catalog);
  if (expected != actual)
    fail(context, "content hash mismatch (manifest " + expected + ", files " + actual + ")");
  return catalog;
}

bool env_equal(const EnvironmentSpec& a, const EnvironmentSpec& b) {
  return env_to_json(a) == env_to_json(b);
}

}  // namespace navbench::envgen
