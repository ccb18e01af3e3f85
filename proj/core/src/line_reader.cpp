#include "citedistill/line_reader.hpp"

#include <zlib.h>

#include <algorithm>
#include <cerrno>
#include <cstring>

#include "citedistill/error.hpp"

namespace citedistill {

struct LineReader::Inflater {
  z_stream zs{};
  bool finished_member = false;

  Inflater() {
    // 15 window bits + 16: gzip wrapper only.
    if (inflateInit2(&zs, 15 + 16) != Z_OK) throw Error(Errc::Io, "inflateInit2 failed");
  }
  ~Inflater() { inflateEnd(&zs); }
};

LineReader::LineReader(const std::filesystem::path& part, std::size_t chunk_size)
    : path_(part), chunk_size_(std::max<std::size_t>(chunk_size, 64)) {
  file_ = std::fopen(part.c_str(), "rb");
  if (file_ == nullptr) {
    throw Error(Errc::Io, "cannot open " + part.string() + ": " + std::strerror(errno));
  }
  buf_.resize(chunk_size_);

  unsigned char magic[2] = {0, 0};
  const std::size_t got = std::fread(magic, 1, 2, file_);
  gzip_ = got == 2 && magic[0] == 0x1f && magic[1] == 0x8b;
  if (gzip_) {
    inflater_ = std::make_unique<Inflater>();
    in_.resize(chunk_size_);
    in_[0] = static_cast<char>(magic[0]);
    in_[1] = static_cast<char>(magic[1]);
    inflater_->zs.next_in = reinterpret_cast<Bytef*>(in_.data());
    inflater_->zs.avail_in = 2;
  } else {
    std::memcpy(buf_.data(), magic, got);
    end_ = got;
    bytes_produced_ = got;
  }
  bytes_read_ = got;
}

LineReader::~LineReader() {
  if (file_ != nullptr) std::fclose(file_);
}

std::size_t LineReader::read_raw(char* dst, std::size_t n) {
  const std::size_t got = std::fread(dst, 1, n, file_);
  if (got < n && std::ferror(file_)) {
    throw Error(Errc::Io, "read failed on " + path_.string());
  }
  bytes_read_ += got;
  return got;
}

std::size_t LineReader::inflate_some(char* dst, std::size_t n) {
  auto& zs = inflater_->zs;
  zs.next_out = reinterpret_cast<Bytef*>(dst);
  zs.avail_out = static_cast<uInt>(n);

  while (zs.avail_out == n) {
    if (zs.avail_in == 0) {
      const std::size_t got = read_raw(in_.data(), in_.size());
      if (got == 0) {
        if (!inflater_->finished_member) {
          throw Error(Errc::CorruptCompression, "truncated gzip stream in " + path_.string());
        }
        return 0;
      }
      zs.next_in = reinterpret_cast<Bytef*>(in_.data());
      zs.avail_in = static_cast<uInt>(got);
    }
    if (inflater_->finished_member) {
      // Concatenated gzip members are legal; start the next one.
      if (inflateReset(&zs) != Z_OK) throw Error(Errc::Io, "inflateReset failed");
      inflater_->finished_member = false;
    }
    const int rc = inflate(&zs, Z_NO_FLUSH);
    if (rc == Z_STREAM_END) {
      inflater_->finished_member = true;
    } else if (rc != Z_OK && rc != Z_BUF_ERROR) {
      throw Error(Errc::CorruptCompression,
                  "invalid gzip data in " + path_.string() + (zs.msg ? std::string(": ") + zs.msg : ""));
    }
  }
  return n - zs.avail_out;
}

bool LineReader::fill() {
  if (eof_) return false;
  if (begin_ > 0) {
    std::memmove(buf_.data(), buf_.data() + begin_, end_ - begin_);
    end_ -= begin_;
    scan_ -= begin_;
    begin_ = 0;
  }
  if (buf_.size() - end_ < chunk_size_ / 2) buf_.resize(buf_.size() * 2);

  const std::size_t room = buf_.size() - end_;
  const std::size_t got =
      gzip_ ? inflate_some(buf_.data() + end_, room) : read_raw(buf_.data() + end_, room);
  if (got == 0) {
    eof_ = true;
    return false;
  }
  end_ += got;
  bytes_produced_ += got;
  return true;
}

bool LineReader::next(std::string_view& line) {
  for (;;) {
    const char* base = buf_.data();
    const void* nl = std::memchr(base + scan_, '\n', end_ - scan_);
    if (nl != nullptr) {
      const std::size_t pos = static_cast<const char*>(nl) - base;
      const std::size_t start = begin_;
      begin_ = scan_ = pos + 1;
      if (pos == start) continue;
      line = std::string_view(base + start, pos - start);
      ++lines_;
      return true;
    }
    scan_ = end_;
    if (!fill()) {
      if (begin_ == end_) return false;
      line = std::string_view(buf_.data() + begin_, end_ - begin_);
      begin_ = scan_ = end_;
      ++lines_;
      return true;
    }
  }
}

std::uint64_t count_lines(const std::filesystem::path& part) {
  LineReader reader(part);
  std::string_view line;
  while (reader.next(line)) {
  }
  return reader.lines();
}

}  // namespace citedistill
