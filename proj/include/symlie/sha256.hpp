#pragma once

#include <string>

namespace symlie {

/// SHA-256 of a byte string, lowercase hex.
std::string sha256_hex(const std::string& data);

}  // namespace symlie
