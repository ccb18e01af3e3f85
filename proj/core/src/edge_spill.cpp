#include "citedistill/edge_spill.hpp"

#include <algorithm>
#include <array>
#include <cerrno>
#include <cstring>
#include <memory>
#include <queue>
#include <string>

#include "citedistill/error.hpp"

namespace fs = std::filesystem;

namespace citedistill {
namespace {

std::FILE* open_or_throw(const fs::path& p, const char* mode) {
  std::FILE* f = std::fopen(p.c_str(), mode);
  if (f == nullptr) throw Error(Errc::Io, "cannot open " + p.string() + ": " + std::strerror(errno));
  return f;
}

void put_u32(unsigned char* p, std::uint32_t v) {
  p[0] = static_cast<unsigned char>(v);
  p[1] = static_cast<unsigned char>(v >> 8);
  p[2] = static_cast<unsigned char>(v >> 16);
  p[3] = static_cast<unsigned char>(v >> 24);
}

std::uint32_t get_u32(const unsigned char* p) {
  return std::uint32_t{p[0]} | std::uint32_t{p[1]} << 8 | std::uint32_t{p[2]} << 16 |
         std::uint32_t{p[3]} << 24;
}

// (source, target, position) packed so that plain integer comparison sorts
// by pair first and stream position second.
struct Keyed {
  std::uint64_t pair;
  std::uint64_t pos;
  friend bool operator<(const Keyed& a, const Keyed& b) {
    return a.pair != b.pair ? a.pair < b.pair : a.pos < b.pos;
  }
};

std::uint64_t pack(const CitationEdge& e) {
  return std::uint64_t{static_cast<std::uint32_t>(e.source.value())} << 32 |
         static_cast<std::uint32_t>(e.target.value());
}

class RunFile {
 public:
  explicit RunFile(fs::path path) : path_(std::move(path)) {}
  ~RunFile() {
    if (file_ != nullptr) std::fclose(file_);
    std::error_code ec;
    fs::remove(path_, ec);
  }
  RunFile(const RunFile&) = delete;
  RunFile& operator=(const RunFile&) = delete;

  void write_all(const std::vector<Keyed>& items) {
    file_ = open_or_throw(path_, "wb");
    if (!items.empty() &&
        std::fwrite(items.data(), sizeof(Keyed), items.size(), file_) != items.size()) {
      throw Error(Errc::Io, "short write to " + path_.string());
    }
    if (std::fclose(file_) != 0) {
      file_ = nullptr;
      throw Error(Errc::Io, "cannot close " + path_.string());
    }
    file_ = open_or_throw(path_, "rb");
    buffer_.resize(4096);
  }

  bool next(Keyed& out) {
    if (at_ == filled_) {
      filled_ = std::fread(buffer_.data(), sizeof(Keyed), buffer_.size(), file_);
      at_ = 0;
      if (filled_ == 0) return false;
    }
    out = buffer_[at_++];
    return true;
  }

 private:
  fs::path path_;
  std::FILE* file_ = nullptr;
  std::vector<Keyed> buffer_;
  std::size_t at_ = 0;
  std::size_t filled_ = 0;
};

}  // namespace

EdgeSpillWriter::EdgeSpillWriter(const fs::path& file) : path_(file), file_(open_or_throw(file, "wb")) {}

EdgeSpillWriter::~EdgeSpillWriter() {
  if (file_ != nullptr) std::fclose(file_);
}

void EdgeSpillWriter::write(const CitationEdge& edge) {
  unsigned char rec[8];
  put_u32(rec, static_cast<std::uint32_t>(edge.source.value()));
  put_u32(rec + 4, static_cast<std::uint32_t>(edge.target.value()));
  if (std::fwrite(rec, 1, sizeof rec, file_) != sizeof rec) {
    throw Error(Errc::Io, "short write to " + path_.string());
  }
  ++count_;
}

void EdgeSpillWriter::close() {
  if (file_ == nullptr) return;
  const int rc = std::fclose(file_);
  file_ = nullptr;
  if (rc != 0) throw Error(Errc::Io, "cannot close " + path_.string());
}

EdgeSpillReader::EdgeSpillReader(const fs::path& file) : path_(file), file_(open_or_throw(file, "rb")) {}

EdgeSpillReader::~EdgeSpillReader() {
  if (file_ != nullptr) std::fclose(file_);
}

bool EdgeSpillReader::next(CitationEdge& edge) {
  unsigned char rec[8];
  const std::size_t got = std::fread(rec, 1, sizeof rec, file_);
  if (got == 0) return false;
  if (got != sizeof rec) throw Error(Errc::Format, "truncated edge spill " + path_.string());
  edge.source = NodeId::from(static_cast<std::int32_t>(get_u32(rec)));
  edge.target = NodeId::from(static_cast<std::int32_t>(get_u32(rec + 4)));
  return true;
}

DuplicateScan scan_duplicates(const fs::path& spill, const fs::path& scratch_dir, std::size_t memory_budget,
                              bool collect_positions) {
  DuplicateScan result;
  const std::size_t chunk = std::max<std::size_t>(memory_budget / sizeof(Keyed), 1024);

  std::vector<std::unique_ptr<RunFile>> runs;
  std::vector<Keyed> items;
  // Reserve once so the buffer never reallocates (a doubling step would hold
  // two copies at the same time).
  const auto total = static_cast<std::size_t>(fs::file_size(spill) / 8);
  items.reserve(std::min(chunk, total));

  EdgeSpillReader reader(spill);
  CitationEdge edge;
  std::uint64_t pos = 0;
  bool more = true;
  while (more) {
    items.clear();
    while (items.size() < chunk && (more = reader.next(edge))) items.push_back({pack(edge), pos++});
    if (items.empty()) break;
    std::sort(items.begin(), items.end());
    if (runs.empty() && !more) break;  // whole input fits: merge in memory below
    auto run = std::make_unique<RunFile>(scratch_dir / ("edge-run-" + std::to_string(runs.size()) + ".bin"));
    run->write_all(items);
    runs.push_back(std::move(run));
    items.clear();
  }

  bool have_prev = false;
  std::uint64_t prev = 0;
  auto visit = [&](const Keyed& k) {
    if (have_prev && k.pair == prev) {
      ++result.duplicates;
      if (collect_positions) result.duplicate_positions.push_back(k.pos);
    }
    prev = k.pair;
    have_prev = true;
  };

  if (runs.empty()) {
    for (const auto& k : items) visit(k);
  } else {
    using Head = std::pair<Keyed, std::size_t>;
    auto greater = [](const Head& a, const Head& b) { return b.first < a.first; };
    std::priority_queue<Head, std::vector<Head>, decltype(greater)> heap(greater);
    for (std::size_t i = 0; i < runs.size(); ++i) {
      Keyed k;
      if (runs[i]->next(k)) heap.push({k, i});
    }
    while (!heap.empty()) {
      auto [k, i] = heap.top();
      heap.pop();
      visit(k);
      Keyed nk;
      if (runs[i]->next(nk)) heap.push({nk, i});
    }
  }
  result.runs = runs.size();
  std::sort(result.duplicate_positions.begin(), result.duplicate_positions.end());
  return result;
}

}  // namespace citedistill
