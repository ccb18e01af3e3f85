#include "citedistill/error.hpp"

namespace citedistill {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::RootNotFound: return "RootNotFound";
    case Errc::EmptyLayout: return "EmptyLayout";
    case Errc::Io: return "IoError";
    case Errc::CorruptCompression: return "CorruptCompression";
    case Errc::IdSpaceExhausted: return "IdSpaceExhausted";
    case Errc::Format: return "FormatError";
    case Errc::EndpointOutOfRange: return "EndpointOutOfRange";
    case Errc::FileNotFound: return "FileNotFound";
    case Errc::MalformedCsv: return "MalformedCsv";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace citedistill
