#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace citedistill {

/// Which subdirectories of the dump root hold which entity. A directory is
/// matched when its name contains the given substring.
struct LayoutConfig {
  std::string publication_match = "publication";
  std::string relation_match = "relation";
};

struct DumpLayout {
  std::filesystem::path root;
  std::vector<std::filesystem::path> publication_parts;
  std::vector<std::filesystem::path> relation_parts;
};

/// Lists every regular (non-hidden) file below the matching subdirectories,
/// sorted by (folder path, file name) in byte order.
///
/// Throws Error(RootNotFound) when root is not a directory and
/// Error(EmptyLayout) when no publication part exists.
DumpLayout enumerate_dump(const std::filesystem::path& root, const LayoutConfig& config = {});

}  // namespace citedistill
