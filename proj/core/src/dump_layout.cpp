#include "citedistill/dump_layout.hpp"

#include <algorithm>
#include <system_error>

#include "citedistill/error.hpp"

namespace fs = std::filesystem;

namespace citedistill {
namespace {

bool is_hidden(const fs::path& p) {
  const auto name = p.filename().string();
  return !name.empty() && name.front() == '.';
}

void collect_files(const fs::path& dir, std::vector<fs::path>& out) {
  std::error_code ec;
  fs::recursive_directory_iterator it(dir, fs::directory_options::none, ec);
  if (ec) throw Error(Errc::Io, "cannot list " + dir.string() + ": " + ec.message());
  for (const fs::recursive_directory_iterator end; it != end; it.increment(ec)) {
    if (ec) throw Error(Errc::Io, "cannot list " + dir.string() + ": " + ec.message());
    if (is_hidden(it->path())) {
      if (it->is_directory()) it.disable_recursion_pending();
      continue;
    }
    if (it->is_regular_file()) out.push_back(it->path());
  }
}

void sort_parts(std::vector<fs::path>& parts) {
  std::sort(parts.begin(), parts.end(), [](const fs::path& a, const fs::path& b) {
    const auto pa = a.parent_path().string();
    const auto pb = b.parent_path().string();
    if (pa != pb) return pa < pb;
    return a.filename().string() < b.filename().string();
  });
}

}  // namespace

DumpLayout enumerate_dump(const fs::path& root, const LayoutConfig& config) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw Error(Errc::RootNotFound, "dump root " + root.string() + " is not a directory");
  }

  DumpLayout layout;
  layout.root = root;

  std::vector<fs::path> subdirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory() && !is_hidden(entry.path())) subdirs.push_back(entry.path());
  }
  std::sort(subdirs.begin(), subdirs.end());

  for (const auto& dir : subdirs) {
    const auto name = dir.filename().string();
    if (!config.publication_match.empty() && name.find(config.publication_match) != std::string::npos) {
      collect_files(dir, layout.publication_parts);
    } else if (!config.relation_match.empty() &&
               name.find(config.relation_match) != std::string::npos) {
      collect_files(dir, layout.relation_parts);
    }
  }

  if (layout.publication_parts.empty()) {
    throw Error(Errc::EmptyLayout, "no publication parts under " + root.string() +
                                       " (looked for directories containing \"" +
                                       config.publication_match + "\")");
  }
  sort_parts(layout.publication_parts);
  sort_parts(layout.relation_parts);
  return layout;
}

}  // namespace citedistill
