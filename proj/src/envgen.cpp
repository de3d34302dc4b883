#include "navbench/envgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <numeric>

#include "navbench/rng.hpp"

namespace navbench::envgen {

namespace {

// Seed-stream tags so every environment kind draws from its own stream.
constexpr uint64_t kStaticTag = 1;
constexpr uint64_t kBoxTag = 2;
constexpr uint64_t kWallTag = 3;
constexpr uint64_t kSplitTag = 0xA11;

std::string padded_id(const char* prefix, int index) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s-%03d", prefix, index);
  return buf;
}

}  // namespace

// ------------------------------------------------------------------- grids

int OccupancyGrid::filled_count() const {
  return static_cast<int>(std::count(cells.cells.begin(), cells.cells.end(), uint8_t{1}));
}

double OccupancyGrid::fill_fraction() const {
  return static_cast<double>(filled_count()) / (kGridCells * kGridCells);
}

std::vector<std::string> OccupancyGrid::to_strings() const {
  std::vector<std::string> rows(kGridCells);
  for (int ix = 0; ix < kGridCells; ++ix) {
    std::string& row = rows[ix];
    row.resize(kGridCells);
    for (int iy = 0; iy < kGridCells; ++iy) row[iy] = at(ix, iy) ? '1' : '0';
  }
  return rows;
}

OccupancyGrid OccupancyGrid::from_strings(const std::vector<std::string>& rows) {
  if (static_cast<int>(rows.size()) != kGridCells)
    throw std::invalid_argument("grid must have " + std::to_string(kGridCells) +
                                " rows, got " + std::to_string(rows.size()));
  OccupancyGrid grid;
  for (int ix = 0; ix < kGridCells; ++ix) {
    if (static_cast<int>(rows[ix].size()) != kGridCells)
      throw std::invalid_argument("grid row " + std::to_string(ix) + " must have " +
                                  std::to_string(kGridCells) + " columns, got " +
                                  std::to_string(rows[ix].size()));
    for (int iy = 0; iy < kGridCells; ++iy) {
      const char c = rows[ix][iy];
      if (c != '0' && c != '1')
        throw std::invalid_argument("grid row " + std::to_string(ix) +
                                    ": cells must be '0' or '1'");
      grid.set(ix, iy, c == '1');
    }
  }
  return grid;
}

void CAParams::validate() const {
  if (initial_fill < 0.0 || initial_fill > 1.0)
    throw std::invalid_argument("initial_fill must lie in [0, 1]");
  if (smoothing_iterations < 0)
    throw std::invalid_argument("smoothing_iterations must be >= 0");
  if (clear_threshold < 0 || fill_threshold < clear_threshold || fill_threshold > 8)
    throw std::invalid_argument("need 0 <= clear_threshold <= fill_threshold <= 8");
}

BoolGrid ca_smooth_step(const BoolGrid& grid, int fill_threshold, int clear_threshold) {
  BoolGrid next(grid.nx, grid.ny);
  for (int ix = 0; ix < grid.nx; ++ix) {
    for (int iy = 0; iy < grid.ny; ++iy) {
      int filled = 0;
      for (int dx = -1; dx <= 1; ++dx) {
        for (int dy = -1; dy <= 1; ++dy) {
          if (dx == 0 && dy == 0) continue;
          const int jx = ix + dx;
          const int jy = iy + dy;
          // Out-of-bounds neighbors count as filled so the rule behaves as
          // if the grid were embedded in solid rock.
          if (jx < 0 || jx >= grid.nx || jy < 0 || jy >= grid.ny) {
            ++filled;
          } else if (grid.at(jx, jy)) {
            ++filled;
          }
        }
      }
      bool state = grid.at(ix, iy);
      if (!state && filled > fill_threshold) state = true;       // cave-in
      else if (state && filled < clear_threshold) state = false;  // erosion
      next.set(ix, iy, state);
    }
  }
  return next;
}

bool is_navigable(const OccupancyGrid& grid, double robot_radius) {
  const int n = kGridCells;
  const int inflate =
      static_cast<int>(std::ceil(robot_radius / grid.cell_size - 1e-9));

  // Chebyshev inflation of every filled cell by the footprint radius.
  BoolGrid blocked(n, n);
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      if (!grid.at(ix, iy)) continue;
      for (int jx = std::max(0, ix - inflate); jx <= std::min(n - 1, ix + inflate); ++jx)
        for (int jy = std::max(0, iy - inflate); jy <= std::min(n - 1, iy + inflate); ++jy)
          blocked.set(jx, jy, true);
    }
  }

  // 4-connected flood fill from the start-side edge (ix = 0).
  BoolGrid seen(n, n);
  std::deque<std::pair<int, int>> queue;
  for (int iy = 0; iy < n; ++iy) {
    if (!blocked.at(0, iy)) {
      seen.set(0, iy, true);
      queue.emplace_back(0, iy);
    }
  }
  while (!queue.empty()) {
    const auto [ix, iy] = queue.front();
    queue.pop_front();
    if (ix == n - 1) return true;  // reached the goal-side edge
    constexpr int dx[4] = {1, -1, 0, 0};
    constexpr int dy[4] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      const int jx = ix + dx[k];
      const int jy = iy + dy[k];
      if (jx < 0 || jx >= n || jy < 0 || jy >= n) continue;
      if (blocked.at(jx, jy) || seen.at(jx, jy)) continue;
      seen.set(jx, jy, true);
      queue.emplace_back(jx, jy);
    }
  }
  return false;
}

std::optional<OccupancyGrid> generate_static_attempt(const CAParams& params,
                                                     double robot_radius) {
  params.validate();
  const int total = kGridCells * kGridCells;
  const int fill_count = static_cast<int>(std::lround(total * params.initial_fill));

  Rng rng(params.seed);
  std::vector<int> order(total);
  std::iota(order.begin(), order.end(), 0);
  // Partial Fisher-Yates: the first fill_count entries are a uniform draw of
  // distinct cells.
  for (int i = 0; i < fill_count; ++i) {
    const int j = i + static_cast<int>(rng.uniform_index(static_cast<uint64_t>(total - i)));
    std::swap(order[i], order[j]);
  }

  OccupancyGrid grid;
  for (int i = 0; i < fill_count; ++i)
    grid.cells.cells[static_cast<size_t>(order[i])] = 1;

  for (int it = 0; it < params.smoothing_iterations; ++it)
    grid.cells = ca_smooth_step(grid.cells, params.fill_threshold, params.clear_threshold);

  if (!is_navigable(grid, robot_radius)) return std::nullopt;
  return grid;
}

OccupancyGrid generate_static(const CAParams& params, double robot_radius,
                              int retry_budget) {
  for (int k = 0; k < retry_budget; ++k) {
    CAParams attempt = params;
    attempt.seed = params.seed + static_cast<uint64_t>(k);
    if (auto grid = generate_static_attempt(attempt, robot_radius)) return *grid;
  }
  char msg[160];
  std::snprintf(msg, sizeof(msg),
                "no navigable grid after %d attempts (fill=%.2f iterations=%d "
                "thresholds=%d/%d seed=%llu radius=%.2f)",
                retry_budget, params.initial_fill, params.smoothing_iterations,
                params.fill_threshold, params.clear_threshold,
                static_cast<unsigned long long>(params.seed), robot_radius);
  throw GenerationError(msg);
}

// --------------------------------------------------------- dynamic obstacles

DynamicBoxEnvSpec generate_dynamic_box(uint64_t seed) {
  Rng rng(seed);
  DynamicBoxEnvSpec spec;
  const LayoutSpec layout = make_layout(EnvKind::DynamicBox);
  const int count = rng.uniform_int(10, 15);
  spec.boxes.reserve(count);
  for (int i = 0; i < count; ++i) {
    BoxObstacle box;
    box.width = rng.uniform(0.1, 0.5);
    box.length = rng.uniform(0.1, 0.5);
    box.speed = rng.uniform(1.0, 1.5);
    // Enter from the robot's-left field edge (+y), heading anywhere into the
    // field (strictly negative y component).
    box.start = {rng.uniform(layout.field.min_x, layout.field.max_x()),
                 layout.field.max_y()};
    do {
      box.heading = rng.uniform(-kPi, 0.0);
    } while (std::sin(box.heading) >= 0.0);
    box.yaw = rng.uniform(0.0, 2.0 * kPi);
    spec.boxes.push_back(box);
  }
  return spec;
}

DynamicWallEnvSpec generate_dynamic_wall(uint64_t seed) {
  Rng rng(seed);
  DynamicWallEnvSpec spec;
  const LayoutSpec layout = make_layout(EnvKind::DynamicWall);
  const double center_x = layout.field.min_x + layout.field.size * 0.5;
  for (int i = 0; i < 2; ++i) {
    MovingWall& wall = spec.walls[i];
    wall.length = rng.uniform(3.5, 4.5);
    wall.tilt = rng.uniform(deg2rad(-10.0), deg2rad(10.0));
    wall.speed = rng.uniform(1.0, 1.4);
    wall.travel_extent = layout.field.size * 0.5;
    wall.axis_x = center_x + (i == 0 ? -kDoorAxisOffset : kDoorAxisOffset);
  }
  const int first_dir = rng.uniform01() < 0.5 ? 1 : -1;
  spec.walls[0].direction = first_dir;
  spec.walls[1].direction = -first_dir;  // the pair always slides apart/together
  for (MovingWall& wall : spec.walls) wall.rest_offset = wall.direction * kDoorRestOffset;
  spec.phase0 = rng.uniform(0.0, 4.0);
  return spec;
}

// ------------------------------------------------------------------ layout

const char* kind_name(EnvKind kind) {
  switch (kind) {
    case EnvKind::Static: return "static";
    case EnvKind::DynamicBox: return "dynamic-box";
    case EnvKind::DynamicWall: return "dynamic-wall";
  }
  return "?";
}

EnvKind kind_from_name(const std::string& name) {
  if (name == "static") return EnvKind::Static;
  if (name == "dynamic-box") return EnvKind::DynamicBox;
  if (name == "dynamic-wall") return EnvKind::DynamicWall;
  throw std::invalid_argument("unknown environment kind: " + name);
}

LayoutSpec make_layout(EnvKind kind) {
  LayoutSpec layout;
  const double field_size = kind == EnvKind::DynamicBox ? kBoxFieldSize : kStaticFieldSize;
  layout.field.size = field_size;
  layout.field.min_x = kStartToFieldGap;
  layout.field.min_y = -field_size * 0.5;
  layout.start = {0.0, 0.0, 0.0};
  // Fixed 10 m path for the 4.5 m fields; the 13.5 m box field doesn't fit
  // inside 10 m, there the goal mirrors the start 2.25 m past the far edge.
  const double goal_x = kind == EnvKind::DynamicBox
                            ? layout.field.max_x() + kStartToFieldGap
                            : kStaticGoalDistance;
  layout.goal = {goal_x, 0.0};
  layout.path_length = goal_x;
  layout.goal_radius = kGoalRadius;

  // Three walls: both sides of the course plus one behind the goal. The
  // start side stays open, so the only way to the goal is through the field.
  const double hw = field_size * 0.5;
  const double x0 = layout.field.min_x;
  const double x1 = goal_x + kRearWallMargin;
  layout.boundary_walls = {
      {{x0, hw}, {x1, hw}, kWallThickness},
      {{x0, -hw}, {x1, -hw}, kWallThickness},
      {{x1, -hw}, {x1, hw}, kWallThickness},
  };
  return layout;
}

// ------------------------------------------------------------- environments

EnvironmentSpec make_static_env(const std::string& id, const CAParams& params,
                                double robot_radius) {
  EnvironmentSpec env;
  env.id = id;
  env.kind = EnvKind::Static;
  env.seed = params.seed;
  env.layout = make_layout(EnvKind::Static);
  env.data = StaticEnvData{generate_static(params, robot_radius), params};
  return env;
}

EnvironmentSpec make_dynamic_box_env(const std::string& id, uint64_t seed) {
  EnvironmentSpec env;
  env.id = id;
  env.kind = EnvKind::DynamicBox;
  env.seed = seed;
  env.layout = make_layout(EnvKind::DynamicBox);
  env.data = generate_dynamic_box(seed);
  return env;
}

EnvironmentSpec make_dynamic_wall_env(const std::string& id, uint64_t seed) {
  EnvironmentSpec env;
  env.id = id;
  env.kind = EnvKind::DynamicWall;
  env.seed = seed;
  env.layout = make_layout(EnvKind::DynamicWall);
  env.data = generate_dynamic_wall(seed);
  return env;
}

EnvironmentSpec make_empty_static_env(const std::string& id) {
  EnvironmentSpec env;
  env.id = id;
  env.kind = EnvKind::Static;
  env.seed = 0;
  env.layout = make_layout(EnvKind::Static);
  CAParams params;
  params.initial_fill = 0.0;
  params.smoothing_iterations = 0;
  env.data = StaticEnvData{OccupancyGrid{}, params};
  return env;
}

// ----------------------------------------------------------------- catalog

const EnvironmentSpec& Catalog::env(const std::string& id) const {
  for (const EnvironmentSpec& e : envs)
    if (e.id == id) return e;
  throw std::out_of_range("catalog has no environment '" + id + "'");
}

const EnvSet& Catalog::set(const std::string& name) const {
  for (const EnvSet& s : sets)
    if (s.name == name) return s;
  throw std::out_of_range("catalog has no set '" + name + "'");
}

bool Catalog::has_set(const std::string& name) const {
  return std::any_of(sets.begin(), sets.end(),
                     [&](const EnvSet& s) { return s.name == name; });
}

namespace {

// Shuffles 0..count-1; the first test_count entries become the test split,
// the remainder (still shuffled) the training pool. Nested training subsets
// are prefixes of that pool, so smaller budgets are subsets of larger ones.
struct Split {
  std::vector<int> test;
  std::vector<int> train;
};

Split make_split(uint64_t master_seed, uint64_t kind_tag, int count, int test_count) {
  Rng rng(mix_seed(master_seed, {kSplitTag, kind_tag}));
  std::vector<int> order(count);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  Split split;
  split.test.assign(order.begin(), order.begin() + test_count);
  split.train.assign(order.begin() + test_count, order.end());
  return split;
}

std::vector<std::string> ids_for(const std::vector<EnvironmentSpec>& envs, int base,
                                 const std::vector<int>& indices, int limit = -1) {
  std::vector<std::string> out;
  const int n = limit < 0 ? static_cast<int>(indices.size())
                          : std::min<int>(limit, indices.size());
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(envs[base + indices[i]].id);
  return out;
}

}  // namespace

Catalog generate_benchmark_set(uint64_t master_seed, const CatalogOptions& options) {
  Catalog catalog;
  catalog.master_seed = master_seed;
  catalog.robot_radius = options.robot_radius;

  const double fills[] = {0.15, 0.20, 0.25, 0.30};
  const int iterations[] = {2, 3, 4};
  const int static_count =
      static_cast<int>(std::size(fills) * std::size(iterations)) * options.grids_per_param_set;

  int static_index = 0;
  for (double fill : fills) {
    for (int iters : iterations) {
      for (int rep = 0; rep < options.grids_per_param_set; ++rep) {
        CAParams params;
        params.initial_fill = fill;
        params.smoothing_iterations = iters;
        params.seed = mix_seed(master_seed, {kStaticTag, static_cast<uint64_t>(static_index)});
        catalog.envs.push_back(make_static_env(padded_id("static", static_index), params,
                                               options.robot_radius));
        ++static_index;
      }
    }
  }

  const int box_base = static_cast<int>(catalog.envs.size());
  for (int i = 0; i < options.dynamic_box_count; ++i) {
    const uint64_t seed = mix_seed(master_seed, {kBoxTag, static_cast<uint64_t>(i)});
    catalog.envs.push_back(make_dynamic_box_env(padded_id("dynamic-box", i), seed));
  }

  const int wall_base = static_cast<int>(catalog.envs.size());
  for (int i = 0; i < options.dynamic_wall_count; ++i) {
    const uint64_t seed = mix_seed(master_seed, {kWallTag, static_cast<uint64_t>(i)});
    catalog.envs.push_back(make_dynamic_wall_env(padded_id("dynamic-wall", i), seed));
  }

  const Split static_split =
      make_split(master_seed, kStaticTag, static_count, options.test_envs_per_kind);
  catalog.sets.push_back({"static-test", EnvKind::Static,
                          ids_for(catalog.envs, 0, static_split.test)});
  for (int size : options.static_train_subsets) {
    if (size > static_cast<int>(static_split.train.size()))
      throw std::invalid_argument("training subset larger than the training pool");
    catalog.sets.push_back({"static-train-" + std::to_string(size), EnvKind::Static,
                            ids_for(catalog.envs, 0, static_split.train, size)});
  }

  const Split box_split = make_split(master_seed, kBoxTag, options.dynamic_box_count,
                                     options.test_envs_per_kind);
  catalog.sets.push_back({"dynamic-box-test", EnvKind::DynamicBox,
                          ids_for(catalog.envs, box_base, box_split.test)});
  catalog.sets.push_back({"dynamic-box-train", EnvKind::DynamicBox,
                          ids_for(catalog.envs, box_base, box_split.train)});

  const Split wall_split = make_split(master_seed, kWallTag, options.dynamic_wall_count,
                                      options.test_envs_per_kind);
  catalog.sets.push_back({"dynamic-wall-test", EnvKind::DynamicWall,
                          ids_for(catalog.envs, wall_base, wall_split.test)});
  catalog.sets.push_back({"dynamic-wall-train", EnvKind::DynamicWall,
                          ids_for(catalog.envs, wall_base, wall_split.train)});

  return catalog;
}

}  // namespace navbench::envgen
