#pragma once

#include <cstdint>
#include <string>

namespace gkdvb {

// Hex digest of a byte string (FIPS 180-4 SHA-256).
std::string sha256_hex(const std::string& data);

// Hex digest of a file's contents; throws on unreadable files.
std::string sha256_file(const std::string& path);

} // namespace gkdvb
