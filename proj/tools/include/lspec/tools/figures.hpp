#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace lspec::tools {

struct FigureRequest {
  std::string id;                 // fig1 .. fig5
  std::uint64_t limit = 1000000;
  std::string zeros_dir;
  std::string out_dir = ".";
  unsigned threads = 0;
  std::size_t trace_points = 200;
};

const std::vector<std::string>& figure_ids();

// Writes one CSV per panel plus <id>_manifest.json into out_dir and returns the
// manifest.
nlohmann::ordered_json reproduce_figure(const FigureRequest& request);

}  // namespace lspec::tools
