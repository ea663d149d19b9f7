#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace harmlab::detail {

inline void put_uvarint(std::vector<uint8_t>& out, uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<uint8_t>(v) | 0x80);
    v >>= 7;
  }
  out.push_back(static_cast<uint8_t>(v));
}

inline uint64_t get_uvarint(const uint8_t*& p, const uint8_t* end) {
  uint64_t v = 0;
  int shift = 0;
  while (p < end) {
    const uint8_t b = *p++;
    v |= static_cast<uint64_t>(b & 0x7f) << shift;
    if (!(b & 0x80)) return v;
    shift += 7;
    if (shift >= 64) break;
  }
  throw std::runtime_error("truncated varint");
}

inline uint64_t zigzag(int64_t v) {
  return (static_cast<uint64_t>(v) << 1) ^ static_cast<uint64_t>(v >> 63);
}
inline int64_t unzigzag(uint64_t v) {
  return static_cast<int64_t>(v >> 1) ^ -static_cast<int64_t>(v & 1);
}

inline void put_ivarint(std::vector<uint8_t>& out, int64_t v) { put_uvarint(out, zigzag(v)); }
inline int64_t get_ivarint(const uint8_t*& p, const uint8_t* end) {
  return unzigzag(get_uvarint(p, end));
}

// Sign byte, uvarint byte count, big-endian magnitude.
inline void put_mpz(std::vector<uint8_t>& out, mpz_srcptr z) {
  out.push_back(mpz_sgn(z) < 0 ? 1 : 0);
  const size_t bytes = mpz_sgn(z) == 0 ? 0 : (mpz_sizeinbase(z, 2) + 7) / 8;
  put_uvarint(out, bytes);
  if (bytes == 0) return;
  std::vector<uint8_t> buf(bytes);
  size_t written = 0;
  mpz_export(buf.data(), &written, 1, 1, 1, 0, z);
  out.insert(out.end(), buf.begin(), buf.begin() + written);
}

inline mpz_class get_mpz(const uint8_t*& p, const uint8_t* end) {
  if (p >= end) throw std::runtime_error("truncated mpz");
  const bool neg = *p++ != 0;
  const uint64_t bytes = get_uvarint(p, end);
  if (static_cast<uint64_t>(end - p) < bytes) throw std::runtime_error("truncated mpz");
  mpz_class z;
  if (bytes > 0) mpz_import(z.get_mpz_t(), bytes, 1, 1, 1, 0, p);
  p += bytes;
  if (neg) z = -z;
  return z;
}

}  // namespace harmlab::detail
