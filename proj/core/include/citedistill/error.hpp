#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace citedistill {

enum class Errc {
  RootNotFound,
  EmptyLayout,
  Io,
  CorruptCompression,
  IdSpaceExhausted,
  Format,
  EndpointOutOfRange,
  FileNotFound,
  MalformedCsv,
  InvalidArgument,
};

std::string_view to_string(Errc code) noexcept;

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace citedistill
