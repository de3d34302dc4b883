#pragma once

// Procedural benchmark environments. Three families:
//   static        30x30 cellular-automata obstacle grid, 4.5 m field
//   dynamic-box   13.5 m field crossed by 10-15 constant-velocity boxes
//   dynamic-wall  4.5 m field with two sliding door walls moving oppositely
//
// Every generator is a pure function of its seed, so a catalog can be
// rebuilt bit-identically from the master seed alone.

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "navbench/geometry.hpp"

namespace navbench::envgen {

// ---------------------------------------------------------------- constants

inline constexpr int kGridCells = 30;           // cells per grid side
inline constexpr double kCellSize = 0.15;       // m
inline constexpr double kStaticFieldSize = 4.5;  // m, = 30 * 0.15
inline constexpr double kBoxFieldSize = 13.5;    // m
inline constexpr double kStartToFieldGap = 2.25;  // start sits this far before the field
inline constexpr double kStaticGoalDistance = 10.0;  // start->goal, static & wall kinds
inline constexpr double kGoalRadius = 0.4;       // success threshold d_s
inline constexpr double kWallThickness = 0.1;    // m, boundary and moving walls
inline constexpr double kRearWallMargin = 0.75;  // end wall sits this far past the goal
inline constexpr double kDefaultRobotRadius = 0.3;

// Sliding-door placement for dynamic-wall environments: the two walls sit
// this far before/after the field center along the path, and their rest
// centers this far off the path axis (sign = travel direction).
inline constexpr double kDoorAxisOffset = 0.3;
inline constexpr double kDoorRestOffset = 1.0;

// ------------------------------------------------------------------- grids

// Minimal rectangular bit grid; ca_smooth_step runs on arbitrary sizes so
// the update rule can be checked exhaustively on small patches.
struct BoolGrid {
  int nx = 0;
  int ny = 0;
  std::vector<uint8_t> cells;  // row-major, index ix * ny + iy

  BoolGrid() = default;
  BoolGrid(int nx_, int ny_) : nx(nx_), ny(ny_), cells(static_cast<size_t>(nx_) * ny_, 0) {}

  bool at(int ix, int iy) const { return cells[static_cast<size_t>(ix) * ny + iy] != 0; }
  void set(int ix, int iy, bool v) { cells[static_cast<size_t>(ix) * ny + iy] = v ? 1 : 0; }
  bool operator==(const BoolGrid&) const = default;
};

// 30x30 obstacle grid of one static environment. Axis 0 (ix) runs along the
// start-goal direction, axis 1 (iy) laterally.
struct OccupancyGrid {
  double cell_size = kCellSize;
  BoolGrid cells{kGridCells, kGridCells};

  bool at(int ix, int iy) const { return cells.at(ix, iy); }
  void set(int ix, int iy, bool v) { cells.set(ix, iy, v); }
  int filled_count() const;
  double fill_fraction() const;
  // One string per ix row, '1' = filled.
  std::vector<std::string> to_strings() const;
  static OccupancyGrid from_strings(const std::vector<std::string>& rows);
  bool operator==(const OccupancyGrid&) const = default;
};

struct CAParams {
  double initial_fill = 0.25;   // one of {0.15, 0.20, 0.25, 0.30}
  int smoothing_iterations = 3; // one of {2, 3, 4}
  int fill_threshold = 5;       // empty cell fills if > this many filled neighbors
  int clear_threshold = 1;      // filled cell empties if < this many filled neighbors
  uint64_t seed = 0;

  void validate() const;
};

// One synchronous cellular-automata smoothing pass over the whole grid.
// Moore 8-neighborhood; cells beyond the border count as filled.
BoolGrid ca_smooth_step(const BoolGrid& grid, int fill_threshold, int clear_threshold);

// True when an inflated-footprint path exists between the start-side and
// goal-side grid edges (4-connected, Chebyshev inflation by
// ceil(robot_radius / cell_size) cells).
bool is_navigable(const OccupancyGrid& grid, double robot_radius);

// Single seeded attempt: scatter round(900 * initial_fill) distinct filled
// cells, smooth, keep only navigable results.
std::optional<OccupancyGrid> generate_static_attempt(const CAParams& params,
                                                     double robot_radius = kDefaultRobotRadius);

struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Retries generate_static_attempt with sub-seeds params.seed + k until one
// attempt is navigable; throws GenerationError when the budget runs out.
OccupancyGrid generate_static(const CAParams& params,
                              double robot_radius = kDefaultRobotRadius,
                              int retry_budget = 1000);

// --------------------------------------------------------- dynamic obstacles

struct BoxObstacle {
  double width = 0.0;   // U[0.1, 0.5] m
  double length = 0.0;  // U[0.1, 0.5] m
  double height = 1.0;  // metadata only, the simulation is planar
  Vec2 start;           // on the +y field edge
  double heading = 0.0; // motion direction, points into the field
  double speed = 0.0;   // U[1.0, 1.5] m/s
  double yaw = 0.0;     // box orientation, U[0, 2pi)
};

struct DynamicBoxEnvSpec {
  double field_size = kBoxFieldSize;
  std::vector<BoxObstacle> boxes;  // 10..15 of them
};

struct MovingWall {
  double length = 0.0;        // U[3.5, 4.5] m
  double tilt = 0.0;          // U[-10deg, 10deg] off the lateral axis
  double speed = 0.0;         // U[1.0, 1.4] m/s
  int direction = 1;          // +1 opens toward +y, -1 toward -y
  double travel_extent = 0.0; // oscillation half-range, default half field
  double axis_x = 0.0;        // wall center x along the path
  double rest_offset = 0.0;   // wall center rest y (= direction * kDoorRestOffset)
};

struct DynamicWallEnvSpec {
  double field_size = kStaticFieldSize;
  std::array<MovingWall, 2> walls;  // opposite directions
  double phase0 = 0.0;              // shared triangle-wave phase, U[0, 4)
};

DynamicBoxEnvSpec generate_dynamic_box(uint64_t seed);
DynamicWallEnvSpec generate_dynamic_wall(uint64_t seed);

// ------------------------------------------------------------------ layout

struct WallSpec {
  Vec2 a, b;
  double thickness = kWallThickness;
};

struct FieldRect {
  double min_x = 0.0;
  double min_y = 0.0;
  double size = 0.0;

  double max_x() const { return min_x + size; }
  double max_y() const { return min_y + size; }
  bool contains(const Vec2& p) const {
    return p.x >= min_x && p.x <= max_x() && p.y >= min_y && p.y <= max_y();
  }
};

// World placement shared by all kinds: the robot starts at the origin facing
// +x, the obstacle field is centered on the x axis starting 2.25 m ahead,
// and three boundary walls (two sides plus one behind the goal) leave only
// the start-side edge open.
struct LayoutSpec {
  FieldRect field;
  Pose start;
  Vec2 goal;
  double goal_radius = kGoalRadius;
  double path_length = 0.0;  // start->goal distance
  std::vector<WallSpec> boundary_walls;
};

enum class EnvKind { Static, DynamicBox, DynamicWall };

const char* kind_name(EnvKind kind);
EnvKind kind_from_name(const std::string& name);

LayoutSpec make_layout(EnvKind kind);

// ------------------------------------------------------------- environments

struct StaticEnvData {
  OccupancyGrid grid;
  CAParams params;
};

struct EnvironmentSpec {
  std::string id;
  EnvKind kind = EnvKind::Static;
  uint64_t seed = 0;
  LayoutSpec layout;
  std::variant<StaticEnvData, DynamicBoxEnvSpec, DynamicWallEnvSpec> data;

  const StaticEnvData& static_data() const { return std::get<StaticEnvData>(data); }
  const DynamicBoxEnvSpec& box_data() const { return std::get<DynamicBoxEnvSpec>(data); }
  const DynamicWallEnvSpec& wall_data() const { return std::get<DynamicWallEnvSpec>(data); }
};

EnvironmentSpec make_static_env(const std::string& id, const CAParams& params,
                                double robot_radius = kDefaultRobotRadius);
EnvironmentSpec make_dynamic_box_env(const std::string& id, uint64_t seed);
EnvironmentSpec make_dynamic_wall_env(const std::string& id, uint64_t seed);
// Obstacle-free static field; used by smoke tests and scripted baselines.
EnvironmentSpec make_empty_static_env(const std::string& id = "empty-static");

// ----------------------------------------------------------------- catalog

struct EnvSet {
  std::string name;
  EnvKind kind = EnvKind::Static;
  std::vector<std::string> members;  // environment ids, order matters
};

struct Catalog {
  uint64_t master_seed = 0;
  double robot_radius = kDefaultRobotRadius;
  std::vector<EnvironmentSpec> envs;
  std::vector<EnvSet> sets;

  const EnvironmentSpec& env(const std::string& id) const;
  const EnvSet& set(const std::string& name) const;
  bool has_set(const std::string& name) const;
};

struct CatalogOptions {
  int grids_per_param_set = 25;  // 12 parameter combinations x 25 = 300
  int dynamic_box_count = 100;
  int dynamic_wall_count = 100;
  int test_envs_per_kind = 50;
  std::vector<int> static_train_subsets{5, 10, 50, 100, 250};
  double robot_radius = kDefaultRobotRadius;
};

// Builds the full benchmark: 300 static + 100 box + 100 wall environments,
// a 50-environment test split per kind, and nested static training subsets.
Catalog generate_benchmark_set(uint64_t master_seed, const CatalogOptions& options = {});

}  // namespace navbench::envgen
