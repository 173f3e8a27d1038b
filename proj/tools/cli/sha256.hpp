#pragma once

#include <cstdint>
#include <string>

namespace quench::cli {

/// SHA-256 (FIPS 180-4) of a byte string, hex-encoded.
std::string sha256_hex(const std::string& data);

}  // namespace quench::cli
