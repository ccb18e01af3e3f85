#include "citedistill/id_map.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include "citedistill/csv.hpp"
#include "citedistill/error.hpp"

namespace citedistill {

namespace {
constexpr std::string_view kHeader = "openaireId,nodeId";
}

IdMap::IdMap(std::int64_t capacity) : capacity_(capacity) {
  if (capacity < 0 || capacity > NodeId::kLimit) {
    throw Error(Errc::InvalidArgument, "IdMap capacity out of range");
  }
}

std::pair<NodeId, bool> IdMap::try_assign(std::string_view id) {
  if (finalized_) throw std::logic_error("IdMap::assign on a finalized map");
  if (auto it = index_.find(id); it != index_.end()) return {NodeId::from(it->second), false};

  const auto next = static_cast<std::int64_t>(keys_.size());
  if (next >= capacity_) {
    throw Error(Errc::IdSpaceExhausted,
                "cannot assign node id " + std::to_string(next) + ": id space holds " +
                    std::to_string(capacity_) + " ids");
  }
  const NodeId node = NodeId::from(next);
  const std::string& stored = keys_.emplace_back(id);
  index_.emplace(std::string_view(stored), node.value());
  return {node, true};
}

NodeId IdMap::assign(std::string_view id) { return try_assign(id).first; }

std::optional<NodeId> IdMap::lookup(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return NodeId::from(it->second);
}

std::uint64_t IdMap::persist(std::ostream& out) const {
  std::string buf;
  buf.reserve(1 << 16);
  buf.append(kHeader);
  buf.push_back('\n');
  std::uint64_t written = 0;
  std::int64_t node = 0;
  for (const auto& key : keys_) {
    append_csv_field(buf, key);
    buf.push_back(',');
    buf.append(std::to_string(node++));
    buf.push_back('\n');
    if (buf.size() >= (1 << 16)) {
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      written += buf.size();
      buf.clear();
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  written += buf.size();
  if (!out) throw Error(Errc::Io, "failed writing id map");
  return written;
}

std::uint64_t IdMap::persist(const std::filesystem::path& file) const {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::Io, "cannot create " + file.string());
  const auto n = persist(out);
  out.close();
  if (!out) throw Error(Errc::Io, "failed writing " + file.string());
  return n;
}

IdMap IdMap::load(std::istream& in) {
  CsvReader reader(in);
  std::vector<std::string> row;
  try {
    if (!reader.next_row(row)) throw Error(Errc::Format, "id map is empty (no header)");
    if (row.size() != 2 || row[0] != "openaireId" || row[1] != "nodeId") {
      throw Error(Errc::Format, "id map header must be \"openaireId,nodeId\"");
    }
    if (!reader.last_row_terminated()) throw Error(Errc::Format, "id map truncated after header");

    IdMap map;
    while (reader.next_row(row)) {
      const auto line = reader.row_number();
      if (!reader.last_row_terminated()) {
        throw Error(Errc::Format, "id map truncated at row " + std::to_string(line));
      }
      if (row.size() != 2) {
        throw Error(Errc::Format, "id map row " + std::to_string(line) + " has " +
                                      std::to_string(row.size()) + " fields");
      }
      std::int64_t node = -1;
      const auto& num = row[1];
      auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), node);
      if (ec != std::errc{} || ptr != num.data() + num.size() || num.empty()) {
        throw Error(Errc::Format, "id map row " + std::to_string(line) + ": bad nodeId \"" + num + "\"");
      }
      if (node != static_cast<std::int64_t>(map.size())) {
        throw Error(Errc::Format, "id map row " + std::to_string(line) + ": expected nodeId " +
                                      std::to_string(map.size()) + ", found " + num);
      }
      if (!OpenAireId::is_valid(row[0])) {
        throw Error(Errc::Format, "id map row " + std::to_string(line) + ": invalid openaireId");
      }
      auto [assigned, fresh] = map.try_assign(row[0]);
      if (!fresh) {
        throw Error(Errc::Format, "id map row " + std::to_string(line) + ": duplicate openaireId \"" +
                                      row[0] + "\"");
      }
    }
    map.finalize();
    return map;
  } catch (const Error& e) {
    if (e.code() == Errc::MalformedCsv) throw Error(Errc::Format, e.what());
    throw;
  }
}

IdMap IdMap::load(const std::filesystem::path& file) {
  std::error_code ec;
  if (!std::filesystem::exists(file, ec)) throw Error(Errc::FileNotFound, file.string());
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + file.string());
  return load(in);
}

bool operator==(const IdMap& a, const IdMap& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.keys_.size(); ++i) {
    if (a.keys_[i] != b.keys_[i]) return false;
  }
  return true;
}

}  // namespace citedistill
