#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace gog {

/*
 * Command reports print a header naming the command and a digest of every
 * input that influenced the outcome, then the payload. Identical inputs give
 * identical bytes; wall-clock timing goes to stderr only.
 */
inline std::uint64_t fnv1a(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ull) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string digest_hex(std::uint64_t h) {
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

struct Report {
  std::string command;
  std::string digest;
  int exit_code = 0;
  std::string body;

  std::string header() const { return "# gogtool " + command + " digest " + digest + "\n"; }
};

}  // namespace gog
