#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "navbench/env_io.hpp"
#include "navbench/envgen.hpp"
#include "navbench/rng.hpp"
#include "oracles.hpp"

using namespace navbench;
using namespace navbench::envgen;

namespace {

BoolGrid grid_from_bits(int nx, int ny, unsigned bits) {
  BoolGrid g(nx, ny);
  for (int i = 0; i < nx * ny; ++i)
    g.cells[static_cast<size_t>(i)] = (bits >> i) & 1u;
  return g;
}

std::filesystem::path test_data(const char* name) {
  return std::filesystem::path(NAVBENCH_TEST_DATA_DIR) / name;
}

}  // namespace

TEST_CASE("ca_smooth_step matches the neighbor-count oracle on every 3x3 patch") {
  for (unsigned bits = 0; bits < 512; ++bits) {
    const BoolGrid before = grid_from_bits(3, 3, bits);
    const BoolGrid after = ca_smooth_step(before, 5, 1);
    for (int ix = 0; ix < 3; ++ix)
      for (int iy = 0; iy < 3; ++iy)
        CHECK(after.at(ix, iy) == oracles::ca_cell_oracle(before, ix, iy, 5, 1));
  }
}

TEST_CASE("ca_smooth_step keeps compact blocks and erodes isolated cells") {
  BoolGrid g(kGridCells, kGridCells);
  for (int ix = 10; ix < 13; ++ix)
    for (int iy = 10; iy < 13; ++iy) g.set(ix, iy, true);
  g.set(20, 20, true);  // lone cell, zero filled neighbors

  const BoolGrid next = ca_smooth_step(g, 5, 1);
  for (int ix = 10; ix < 13; ++ix)
    for (int iy = 10; iy < 13; ++iy) CHECK(next.at(ix, iy));
  CHECK_FALSE(next.at(20, 20));
}

TEST_CASE("ca_smooth_step is synchronous: oracle recomputation on random grids") {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    BoolGrid g(kGridCells, kGridCells);
    for (auto& c : g.cells) c = rng.uniform01() < 0.3 ? 1 : 0;
    const BoolGrid next = ca_smooth_step(g, 5, 1);
    // The oracle walks cells in the transposed order; a sequential (in-place)
    // update would disagree somewhere on grids this dense.
    for (int iy = 0; iy < kGridCells; ++iy)
      for (int ix = 0; ix < kGridCells; ++ix)
        REQUIRE(next.at(ix, iy) == oracles::ca_cell_oracle(g, ix, iy, 5, 1));
  }
}

TEST_CASE("initial fill places exactly round(900 * fill) distinct cells") {
  for (double fill : {0.15, 0.20, 0.25, 0.30}) {
    CAParams params;
    params.initial_fill = fill;
    params.smoothing_iterations = 0;  // look at the scatter before smoothing
    params.seed = 7;
    OccupancyGrid grid = generate_static(params, 0.0);
    CHECK(grid.filled_count() == static_cast<int>(std::lround(900 * fill)));
  }
}

TEST_CASE("generate_static is deterministic in its seed") {
  CAParams params;
  params.initial_fill = 0.25;
  params.smoothing_iterations = 3;
  params.seed = 1234;
  const OccupancyGrid a = generate_static(params);
  const OccupancyGrid b = generate_static(params);
  CHECK(a == b);
  params.seed = 1235;
  CHECK_FALSE(generate_static(params) == a);
}

TEST_CASE("generate_static reports failure with the offending parameters") {
  CAParams params;
  params.initial_fill = 1.0;  // solid grid can never be navigable
  params.smoothing_iterations = 1;
  params.seed = 5;
  CHECK_THROWS_AS(generate_static(params, kDefaultRobotRadius, 3), GenerationError);
  try {
    generate_static(params, kDefaultRobotRadius, 3);
  } catch (const GenerationError& e) {
    const std::string what = e.what();
    CHECK(what.find("fill=1.00") != std::string::npos);
    CHECK(what.find("3 attempts") != std::string::npos);
  }
}

TEST_CASE("CAParams validation rejects out-of-range settings") {
  CAParams params;
  params.initial_fill = -0.1;
  CHECK_THROWS_AS(params.validate(), std::invalid_argument);
  params.initial_fill = 0.2;
  params.clear_threshold = 6;
  params.fill_threshold = 5;  // clear > fill
  CHECK_THROWS_AS(params.validate(), std::invalid_argument);
  params.clear_threshold = 1;
  params.fill_threshold = 9;
  CHECK_THROWS_AS(params.validate(), std::invalid_argument);
}

TEST_CASE("is_navigable: single-cell gap passes only a point robot") {
  OccupancyGrid grid;
  for (int iy = 0; iy < kGridCells; ++iy)
    if (iy != 15) grid.set(14, iy, true);  // lateral wall with one opening
  CHECK(is_navigable(grid, 0.0));
  CHECK_FALSE(is_navigable(grid, 0.3));  // inflated footprint seals the gap
}

TEST_CASE("is_navigable: empty and fully blocked grids") {
  OccupancyGrid grid;
  CHECK(is_navigable(grid, kDefaultRobotRadius));
  for (int iy = 0; iy < kGridCells; ++iy) grid.set(14, iy, true);
  CHECK_FALSE(is_navigable(grid, 0.0));
}

TEST_CASE("is_navigable agrees with the brute-force oracle on random grids") {
  Rng rng(4242);
  int navigable = 0;
  for (int trial = 0; trial < 150; ++trial) {
    OccupancyGrid grid;
    const double fill = rng.uniform(0.05, 0.35);
    for (auto& c : grid.cells.cells) c = rng.uniform01() < fill ? 1 : 0;
    for (double radius : {0.0, 0.15, 0.3}) {
      const bool got = is_navigable(grid, radius);
      REQUIRE(got == oracles::navigable_oracle(grid, radius));
      navigable += got ? 1 : 0;
    }
  }
  CHECK(navigable > 0);  // the sample exercises both outcomes
}

TEST_CASE("generated static environments stay navigable at the build radius") {
  for (int i = 0; i < 10; ++i) {
    CAParams params;
    params.initial_fill = 0.30;
    params.smoothing_iterations = 4;
    params.seed = mix_seed(11, {static_cast<uint64_t>(i)});
    OccupancyGrid grid = generate_static(params);
    CHECK(is_navigable(grid, kDefaultRobotRadius));
  }
}

TEST_CASE("golden static grid regression") {
  const EnvironmentSpec golden = load_env(test_data("golden_static_env.json"));
  REQUIRE(golden.kind == EnvKind::Static);
  const StaticEnvData& data = golden.static_data();

  EnvironmentSpec regenerated = make_static_env(golden.id, data.params);
  CHECK(env_equal(regenerated, golden));
  // Fill fraction recorded when the golden file was frozen.
  CHECK(data.grid.fill_fraction() == doctest::Approx(0.21).epsilon(1e-12));
}

TEST_CASE("dynamic-box sampling stays inside the documented ranges") {
  const LayoutSpec layout = make_layout(EnvKind::DynamicBox);
  for (uint64_t seed = 0; seed < 10000; ++seed) {
    const DynamicBoxEnvSpec spec = generate_dynamic_box(seed);
    REQUIRE(spec.boxes.size() >= 10);
    REQUIRE(spec.boxes.size() <= 15);
    for (const BoxObstacle& b : spec.boxes) {
      REQUIRE(b.width >= 0.1);
      REQUIRE(b.width <= 0.5);
      REQUIRE(b.length >= 0.1);
      REQUIRE(b.length <= 0.5);
      REQUIRE(b.speed >= 1.0);
      REQUIRE(b.speed <= 1.5);
      REQUIRE(b.height == 1.0);
      REQUIRE(b.start.y == layout.field.max_y());  // spawns on the +y edge
      REQUIRE(b.start.x >= layout.field.min_x);
      REQUIRE(b.start.x <= layout.field.max_x());
      REQUIRE(std::sin(b.heading) < 0.0);  // points into the field
      REQUIRE(b.yaw >= 0.0);
      REQUIRE(b.yaw < 2.0 * kPi);
    }
  }
}

TEST_CASE("dynamic-wall sampling stays inside the documented ranges") {
  for (uint64_t seed = 0; seed < 10000; ++seed) {
    const DynamicWallEnvSpec spec = generate_dynamic_wall(seed);
    REQUIRE(spec.walls[0].direction == -spec.walls[1].direction);
    REQUIRE(spec.phase0 >= 0.0);
    REQUIRE(spec.phase0 < 4.0);
    for (const MovingWall& w : spec.walls) {
      REQUIRE(w.length >= 3.5);
      REQUIRE(w.length <= 4.5);
      REQUIRE(std::abs(w.tilt) <= deg2rad(10.0));
      REQUIRE(w.speed >= 1.0);
      REQUIRE(w.speed <= 1.4);
      REQUIRE(w.travel_extent == kStaticFieldSize * 0.5);
      REQUIRE(std::abs(w.direction) == 1);
    }
  }
}

TEST_CASE("dynamic generators are deterministic") {
  CHECK(env_to_json(make_dynamic_box_env("b", 77)) == env_to_json(make_dynamic_box_env("b", 77)));
  CHECK(env_to_json(make_dynamic_wall_env("w", 78)) == env_to_json(make_dynamic_wall_env("w", 78)));
}

TEST_CASE("layout geometry per environment kind") {
  const LayoutSpec s = make_layout(EnvKind::Static);
  CHECK(s.field.size == 4.5);
  CHECK(s.field.min_x == 2.25);
  CHECK(s.goal.x == 10.0);
  CHECK(s.path_length == 10.0);
  CHECK(s.boundary_walls.size() == 3);

  const LayoutSpec b = make_layout(EnvKind::DynamicBox);
  CHECK(b.field.size == 13.5);
  CHECK(b.goal.x == 18.0);  // mirrored 2.25 m margin past the far edge

  const LayoutSpec w = make_layout(EnvKind::DynamicWall);
  CHECK(w.field.size == 4.5);
  CHECK(w.goal.x == 10.0);
}

namespace {

CatalogOptions small_catalog_options() {
  CatalogOptions options;
  options.grids_per_param_set = 2;  // 24 static environments
  options.dynamic_box_count = 10;
  options.dynamic_wall_count = 10;
  options.test_envs_per_kind = 4;
  options.static_train_subsets = {2, 5, 20};
  return options;
}

}  // namespace

TEST_CASE("catalog splits are disjoint, exhaustive and nested") {
  const Catalog catalog = generate_benchmark_set(3, small_catalog_options());
  CHECK(catalog.envs.size() == 24 + 10 + 10);

  std::set<std::string> ids;
  for (const EnvironmentSpec& e : catalog.envs) ids.insert(e.id);
  CHECK(ids.size() == catalog.envs.size());

  const EnvSet& test = catalog.set("static-test");
  const EnvSet& train = catalog.set("static-train-20");
  CHECK(test.members.size() == 4);
  CHECK(train.members.size() == 20);
  std::set<std::string> seen(test.members.begin(), test.members.end());
  for (const std::string& id : train.members) CHECK(seen.insert(id).second);
  CHECK(seen.size() == 24);  // disjoint and together exhaustive

  // Smaller training budgets are prefixes of larger ones.
  const EnvSet& train2 = catalog.set("static-train-2");
  const EnvSet& train5 = catalog.set("static-train-5");
  for (size_t i = 0; i < train2.members.size(); ++i)
    CHECK(train2.members[i] == train5.members[i]);
  for (size_t i = 0; i < train5.members.size(); ++i)
    CHECK(train5.members[i] == train.members[i]);

  for (const char* name : {"dynamic-box-test", "dynamic-box-train", "dynamic-wall-test",
                           "dynamic-wall-train"}) {
    CHECK(catalog.set(name).members.size() >= 4);
  }
}

TEST_CASE("catalog content hash is reproducible from the master seed") {
  const CatalogOptions options = small_catalog_options();
  const Catalog a = generate_benchmark_set(21, options);
  const Catalog b = generate_benchmark_set(21, options);
  const Catalog c = generate_benchmark_set(22, options);
  CHECK(catalog_content_hash(a) == catalog_content_hash(b));
  CHECK(catalog_content_hash(a) != catalog_content_hash(c));
}

TEST_CASE("environment JSON round-trips exactly") {
  CAParams params;
  params.initial_fill = 0.2;
  params.smoothing_iterations = 2;
  params.seed = 5150;
  const EnvironmentSpec env = make_static_env("static-rt", params);
  const EnvironmentSpec box = make_dynamic_box_env("box-rt", 6);
  const EnvironmentSpec wall = make_dynamic_wall_env("wall-rt", 7);

  const auto dir = std::filesystem::temp_directory_path() / "navbench-envio-test";
  std::filesystem::create_directories(dir);
  for (const EnvironmentSpec* e : {&env, &box, &wall}) {
    const auto path = dir / (e->id + ".json");
    save_env(*e, path);
    CHECK(env_equal(load_env(path), *e));
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("malformed environment files fail with context") {
  const auto dir = std::filesystem::temp_directory_path() / "navbench-envio-bad";
  std::filesystem::create_directories(dir);

  CAParams params;
  params.seed = 99;
  EnvironmentSpec env = make_static_env("static-bad", params);
  nlohmann::json j = env_to_json(env);
  j["grid"].erase(0);  // 29 rows
  {
    std::ofstream out(dir / "short.json");
    out << j.dump();
  }
  CHECK_THROWS_WITH_AS(load_env(dir / "short.json"),
                       doctest::Contains("grid must have 30 rows"), ParseError);

  j = env_to_json(env);
  j.erase("goal_radius");
  j["layout"].erase("goal");
  {
    std::ofstream out(dir / "missing.json");
    out << j.dump();
  }
  CHECK_THROWS_WITH_AS(load_env(dir / "missing.json"), doctest::Contains("missing field 'goal'"),
                       ParseError);

  {
    std::ofstream out(dir / "broken.json");
    out << "{ not json";
  }
  CHECK_THROWS_AS(load_env(dir / "broken.json"), ParseError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("catalog save/load round-trip verifies the content hash") {
  const Catalog catalog = generate_benchmark_set(51, small_catalog_options());
  const auto dir = std::filesystem::temp_directory_path() / "navbench-catalog-test";
  std::filesystem::remove_all(dir);
  save_catalog(catalog, dir);

  const Catalog loaded = load_catalog(dir);
  CHECK(loaded.master_seed == catalog.master_seed);
  CHECK(loaded.envs.size() == catalog.envs.size());
  CHECK(loaded.sets.size() == catalog.sets.size());
  CHECK(catalog_content_hash(loaded) == catalog_content_hash(catalog));
  for (const EnvironmentSpec& e : catalog.envs) CHECK(env_equal(loaded.env(e.id), e));

  // Tampering with a member file must be caught by the hash check.
  {
    const auto victim = dir / "envs" / (catalog.envs[0].id + ".json");
    std::ifstream in(victim);
    nlohmann::json j;
    in >> j;
    in.close();
    j["layout"]["goal_radius"] = 0.5;
    std::ofstream out(victim);
    out << j.dump(2) << "\n";
  }
  CHECK_THROWS_WITH_AS(load_catalog(dir), doctest::Contains("content hash mismatch"), ParseError);
  std::filesystem::remove_all(dir);
}
