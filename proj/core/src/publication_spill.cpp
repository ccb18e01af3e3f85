#include "citedistill/publication_spill.hpp"

#include <cerrno>
#include <cstring>

#include "citedistill/error.hpp"

namespace citedistill {

namespace {
std::FILE* open_or_throw(const std::filesystem::path& p, const char* mode) {
  std::FILE* f = std::fopen(p.c_str(), mode);
  if (f == nullptr) throw Error(Errc::Io, "cannot open " + p.string() + ": " + std::strerror(errno));
  return f;
}
}  // namespace

PublicationSpillWriter::PublicationSpillWriter(const std::filesystem::path& file)
    : path_(file), file_(open_or_throw(file, "wb")) {}

PublicationSpillWriter::~PublicationSpillWriter() {
  if (file_ != nullptr) std::fclose(file_);
}

void PublicationSpillWriter::put(const std::string* s) {
  unsigned char head[5] = {0, 0, 0, 0, 0};
  if (s != nullptr) {
    const auto n = static_cast<std::uint32_t>(s->size());
    head[0] = 1;
    head[1] = static_cast<unsigned char>(n);
    head[2] = static_cast<unsigned char>(n >> 8);
    head[3] = static_cast<unsigned char>(n >> 16);
    head[4] = static_cast<unsigned char>(n >> 24);
  }
  bool ok = std::fwrite(head, 1, sizeof head, file_) == sizeof head;
  if (ok && s != nullptr && !s->empty()) ok = std::fwrite(s->data(), 1, s->size(), file_) == s->size();
  if (!ok) throw Error(Errc::Io, "short write to " + path_.string());
}

void PublicationSpillWriter::write(const PublicationFragment& f) {
  put(&f.openaire_id.str());
  for (const auto* field : {&f.doi, &f.title, &f.authors, &f.description, &f.date, &f.container, &f.language}) {
    put(*field ? &**field : nullptr);
  }
}

void PublicationSpillWriter::close() {
  if (file_ == nullptr) return;
  const int rc = std::fclose(file_);
  file_ = nullptr;
  if (rc != 0) throw Error(Errc::Io, "cannot close " + path_.string());
}

PublicationSpillReader::PublicationSpillReader(const std::filesystem::path& file)
    : path_(file), file_(open_or_throw(file, "rb")) {}

PublicationSpillReader::~PublicationSpillReader() {
  if (file_ != nullptr) std::fclose(file_);
}

bool PublicationSpillReader::get(std::optional<std::string>& out) {
  unsigned char head[5];
  const std::size_t got = std::fread(head, 1, sizeof head, file_);
  if (got == 0) return false;
  if (got != sizeof head) throw Error(Errc::Format, "truncated publication spill " + path_.string());
  if (head[0] == 0) {
    out.reset();
    return true;
  }
  const std::uint32_t n = std::uint32_t{head[1]} | std::uint32_t{head[2]} << 8 |
                          std::uint32_t{head[3]} << 16 | std::uint32_t{head[4]} << 24;
  std::string s(n, '\0');
  if (n > 0 && std::fread(s.data(), 1, n, file_) != n) {
    throw Error(Errc::Format, "truncated publication spill " + path_.string());
  }
  out = std::move(s);
  return true;
}

std::optional<PublicationFragment> PublicationSpillReader::next() {
  std::optional<std::string> id;
  if (!get(id)) return std::nullopt;
  if (!id) throw Error(Errc::Format, "publication spill record without id in " + path_.string());
  PublicationFragment f{OpenAireId(std::move(*id))};
  for (auto* field : {&f.doi, &f.title, &f.authors, &f.description, &f.date, &f.container, &f.language}) {
    if (!get(*field)) throw Error(Errc::Format, "truncated publication spill " + path_.string());
  }
  return f;
}

}  // namespace citedistill
