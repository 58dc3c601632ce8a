// Loading designs from files and from the corpus manifest.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "seif/design.hpp"

namespace seif {

/// Reads and elaborates `files`; an empty `top` selects the single
/// uninstantiated module. Unreadable files raise Error(Config).
DesignIR load_design_files(const std::vector<std::string>& files, const std::string& top = "");

struct CorpusEntry {
  std::string name;
  std::vector<std::string> files;  // resolved against the manifest directory
  std::string top;
  std::vector<std::string> sources;
  std::optional<std::string> sink;
};

std::vector<CorpusEntry> load_manifest(const std::string& path);

}  // namespace seif
