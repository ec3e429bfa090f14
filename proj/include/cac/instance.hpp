#pragma once

// Instance files are JSON:
//
//   {
//     "version": 1,
//     "name": "anti19",                      (optional)
//     "description": "...",                (optional)
//     "agents": [
//       {"kind": "anti", "threshold": "1/2", "count": 19},
//       {"kind": "coord", "weight": "-3/2"}
//     ]
//   }
//
// Each agent entry carries exactly one of "weight" or "threshold" as a
// rational string ("3/2", "-1", "0.5") or a JSON integer. "count" repeats
// the entry and defaults to 1. Thresholds become weights once n is known.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cac/core.hpp"

namespace cac {

class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kInstanceVersion = 1;

struct InstanceFile {
  int version = kInstanceVersion;
  std::optional<std::string> name;
  std::optional<std::string> description;
  Population population;
};

// `source` prefixes diagnostics, usually the file path.
InstanceFile parse_instance(std::string_view text, std::string_view source = "<instance>");
InstanceFile load_instance(const std::filesystem::path& path);

// Serializes with exact weights, one entry per agent.
std::string dump_instance(const InstanceFile& instance);

}  // namespace cac
