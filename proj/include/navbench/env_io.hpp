#pragma once

// JSON persistence for environments and catalogs. Files are self-contained:
// a loaded environment file carries everything the simulator needs (grid or
// obstacle parameters plus start, goal and boundary walls), and a catalog
// directory carries a manifest with set definitions and a content hash over
// all member files.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "navbench/envgen.hpp"

namespace navbench::envgen {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json env_to_json(const EnvironmentSpec& env);
EnvironmentSpec env_from_json(const nlohmann::json& j, const std::string& context);

void save_env(const EnvironmentSpec& env, const std::filesystem::path& path);
EnvironmentSpec load_env(const std::filesystem::path& path);

// Writes manifest.json plus one envs/<id>.json per environment.
void save_catalog(const Catalog& catalog, const std::filesystem::path& dir);
Catalog load_catalog(const std::filesystem::path& dir);

// FNV-1a over the serialized member files (in id order) and set definitions.
// Regenerating a catalog from the same master seed reproduces this hash.
std::string catalog_content_hash(const Catalog& catalog);

bool env_equal(const EnvironmentSpec& a, const EnvironmentSpec& b);

}  // namespace navbench::envgen
