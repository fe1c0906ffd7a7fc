#pragma once

#include <string>

namespace psnads {

/// Hex-encoded SHA-256 digest of a byte string.
std::string sha256_hex(const std::string& data);

}  // namespace psnads
