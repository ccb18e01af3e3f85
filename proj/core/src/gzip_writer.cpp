#include "citedistill/gzip_writer.hpp"

#include <zlib.h>

#include <cerrno>
#include <cstring>

#include "citedistill/error.hpp"

namespace citedistill {

namespace {
constexpr std::size_t kPendingLimit = 1 << 16;
}

struct GzipWriter::Deflater {
  z_stream zs{};
  explicit Deflater(int level) {
    if (deflateInit2(&zs, level, Z_DEFLATED, 15 + 16, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
      throw Error(Errc::Io, "deflateInit2 failed");
    }
  }
  ~Deflater() { deflateEnd(&zs); }
};

GzipWriter::GzipWriter(const std::filesystem::path& file, int level) : path_(file) {
  file_ = std::fopen(file.c_str(), "wb");
  if (file_ == nullptr) throw Error(Errc::Io, "cannot create " + file.string() + ": " + std::strerror(errno));
  deflater_ = std::make_unique<Deflater>(level);
  out_.resize(1 << 16);
}

GzipWriter::~GzipWriter() {
  try {
    close();
  } catch (...) {
  }
}

void GzipWriter::write(std::string_view data) {
  pending_.append(data);
  bytes_in_ += data.size();
  if (pending_.size() >= kPendingLimit) pump(Z_NO_FLUSH);
}

void GzipWriter::pump(int flush) {
  auto& zs = deflater_->zs;
  zs.next_in = reinterpret_cast<Bytef*>(pending_.data());
  zs.avail_in = static_cast<uInt>(pending_.size());
  int rc = Z_OK;
  do {
    zs.next_out = reinterpret_cast<Bytef*>(out_.data());
    zs.avail_out = static_cast<uInt>(out_.size());
    rc = deflate(&zs, flush);
    if (rc == Z_STREAM_ERROR) throw Error(Errc::Io, "deflate failed for " + path_.string());
    const std::size_t have = out_.size() - zs.avail_out;
    if (have > 0 && std::fwrite(out_.data(), 1, have, file_) != have) {
      throw Error(Errc::Io, "short write to " + path_.string());
    }
    bytes_out_ += have;
  } while (zs.avail_out == 0 || (flush == Z_FINISH && rc != Z_STREAM_END));
  pending_.clear();
}

void GzipWriter::close() {
  if (file_ == nullptr) return;
  pump(Z_FINISH);
  const int rc = std::fclose(file_);
  file_ = nullptr;
  if (rc != 0) throw Error(Errc::Io, "cannot close " + path_.string());
}

}  // namespace citedistill
