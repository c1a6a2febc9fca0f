#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "nilalg/construction.hpp"
#include "nilalg/linear.hpp"
#include "nilalg/schedule.hpp"

namespace nilalg {

/// {degree, field, repr, rows | monomials}; dense rows are hex strings.
nlohmann::json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const nlohmann::json& j);

/// {mode, entries: [{i, f?, F?}]}; i is decimal or "2^K[+-C]", polynomials are text.
nlohmann::json schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const nlohmann::json& j, std::uint32_t p);

nlohmann::json level_to_json(const LevelState& s);
LevelState level_from_json(const nlohmann::json& j);

std::string sha256_hex(const std::string& data);
/// Deterministic text form (sorted keys, no whitespace) used for hashing and files.
std::string canonical_text(const nlohmann::json& j);

std::string level_file_name(std::size_t n);

struct StoreManifest {
  nlohmann::json schedule;
  std::string schedule_sha256;
  std::uint32_t field = 2;
  Engine engine = Engine::automatic;
  struct Entry {
    std::size_t n;
    int build_case;
    bool dense;
    std::string file;
    std::string sha256;
  };
  std::vector<Entry> levels;
};

nlohmann::json manifest_to_json(const StoreManifest& m);
StoreManifest manifest_from_json(const nlohmann::json& j);

/// Writes one file per level plus manifest.json; returns the manifest's SHA-256.
std::string save_store(const std::filesystem::path& dir, const Levels& levels);

struct LoadedStore {
  StoreManifest manifest;
  std::vector<LevelState> levels;
  /// Files whose content no longer matches the recorded hash.
  std::vector<std::string> hash_mismatches;
};

/// Throws PreconditionError when the directory holds no store.
LoadedStore load_store(const std::filesystem::path& dir);

}  // namespace nilalg
