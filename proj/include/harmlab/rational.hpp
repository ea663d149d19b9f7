#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace harmlab {

/// Exact arbitrary-precision rational. GMP keeps values canonical
/// (coprime numerator/denominator, positive denominator), so equality
/// and hashing can work on the representation directly.
using Rational = mpq_class;

inline std::string rational_str(const Rational& q) { return q.get_str(); }
inline std::string num_str(const Rational& q) { return q.get_num().get_str(); }
inline std::string den_str(const Rational& q) { return q.get_den().get_str(); }
inline double to_double(const Rational& q) { return q.get_d(); }

/// Parses "3" or "-1/4". Decimal forms are not accepted; probabilities
/// and thresholds stay exact end to end.
inline Rational parse_rational(const std::string& s) {
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0) {
    throw std::invalid_argument("bad rational: '" + s + "'");
  }
  q.canonicalize();
  return q;
}

/// q^e for integer e of either sign (q != 0 required when e < 0).
inline Rational rational_pow(const Rational& q, long e) {
  if (e == 0) return Rational(1);
  const unsigned long k = static_cast<unsigned long>(e >= 0 ? e : -e);
  Rational out;
  mpz_pow_ui(mpq_numref(out.get_mpq_t()), mpq_numref(q.get_mpq_t()), k);
  mpz_pow_ui(mpq_denref(out.get_mpq_t()), mpq_denref(q.get_mpq_t()), k);
  out.canonicalize();
  if (e < 0) {
    if (out == 0) throw std::domain_error("rational_pow: zero to negative power");
    Rational inv;
    mpq_inv(inv.get_mpq_t(), out.get_mpq_t());
    return inv;
  }
  return out;
}

// FNV-1a 64-bit; used for element hashing and cache content addresses.
struct Fnv64 {
  uint64_t state = 0xcbf29ce484222325ull;
  void write(const void* data, size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < n; ++i) {
      state ^= p[i];
      state *= 0x100000001b3ull;
    }
  }
  void write_u8(uint8_t v) { write(&v, 1); }
  void write_u64(uint64_t v) { write(&v, 8); }
  void write_i64(int64_t v) { write(&v, 8); }
};

inline void hash_mpz(Fnv64& h, mpz_srcptr p) {
  const int size = p->_mp_size;  // sign carried by size
  h.write_i64(size);
  const int n = size < 0 ? -size : size;
  for (int i = 0; i < n; ++i) h.write_u64(static_cast<uint64_t>(p->_mp_d[i]));
}

inline void hash_rational(Fnv64& h, const Rational& q) {
  hash_mpz(h, mpq_numref(q.get_mpq_t()));
  hash_mpz(h, mpq_denref(q.get_mpq_t()));
}

/// floor(q * 2^64) clamped to [0, 2^64 - 1]; q must lie in [0, 1].
/// Turns exact step probabilities into integer sampling thresholds.
inline uint64_t floor_scale_2_64(const Rational& q) {
  mpz_class t(q.get_num());
  t <<= 64;
  t /= q.get_den();
  if (t < 0) return 0;
  if (mpz_sizeinbase(t.get_mpz_t(), 2) > 64) return ~0ull;
  return mpz_get_ui(t.get_mpz_t());
}

}  // namespace harmlab
