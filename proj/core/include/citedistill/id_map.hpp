#pragma once

#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "citedistill/model.hpp"

namespace citedistill {

/// Translation table from OpenAIRE ids to dense NodeIds.
///
/// Build phase: assign() hands out 0, 1, 2, ... in call order and returns the
/// existing id for repeats. After finalize() the map is read-only and may be
/// shared between threads. Keys live in a deque so the hash index can hold
/// string_views into them; the map is therefore move-only.
class IdMap {
 public:
  explicit IdMap(std::int64_t capacity = NodeId::kLimit);

  IdMap(IdMap&&) noexcept = default;
  IdMap& operator=(IdMap&&) noexcept = default;
  IdMap(const IdMap&) = delete;
  IdMap& operator=(const IdMap&) = delete;

  /// Throws Error(IdSpaceExhausted) when a new id would reach the capacity and
  /// std::logic_error once finalized.
  NodeId assign(std::string_view id);

  /// Like assign(), but also reports whether the id was new.
  std::pair<NodeId, bool> try_assign(std::string_view id);

  std::optional<NodeId> lookup(std::string_view id) const;

  /// Idempotent.
  void finalize() noexcept { finalized_ = true; }
  bool finalized() const noexcept { return finalized_; }

  std::size_t size() const noexcept { return keys_.size(); }
  bool empty() const noexcept { return keys_.empty(); }

  /// The OpenAIRE id that was assigned `id`. Precondition: id < size().
  std::string_view key(NodeId id) const { return keys_.at(static_cast<std::size_t>(id.value())); }

  /// Writes "openaireId,nodeId" CSV, one row per node in id order, LF endings.
  /// Returns the number of bytes written. Throws Error(Io) on stream failure.
  std::uint64_t persist(std::ostream& out) const;
  std::uint64_t persist(const std::filesystem::path& file) const;

  /// Reads a table written by persist(). The result is finalized. Throws
  /// Error(Format) on a bad header, non-dense ids, duplicates or a truncated
  /// last row, and Error(FileNotFound)/Error(Io) for file problems.
  static IdMap load(std::istream& in);
  static IdMap load(const std::filesystem::path& file);

  /// Extensional equality: same size, same key for every id.
  friend bool operator==(const IdMap& a, const IdMap& b);

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::int64_t capacity_;
  std::deque<std::string> keys_;
  std::unordered_map<std::string_view, std::int32_t, Hash, std::equal_to<>> index_;
  bool finalized_ = false;
};

}  // namespace citedistill
