#pragma once

#include <cstdint>

namespace k1lab {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 add_mod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  return s >= m ? s - m : s;
}

inline u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

inline u64 neg_mod(u64 a, u64 m) { return a == 0 ? 0 : m - a; }

inline u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 pow_mod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Inverse of a modulo m; returns 0 when gcd(a, m) != 1.
inline u64 try_inv_mod(u64 a, u64 m) {
  if (m == 1) return 0;
  __int128 t = 0, nt = 1;
  __int128 r = m, nr = a % m;
  while (nr != 0) {
    __int128 q = r / nr;
    __int128 tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) return 0;
  if (t < 0) t += m;
  return static_cast<u64>(t);
}

// Exponent of p in a (a != 0).
inline int valuation(u64 a, u64 p) {
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

inline u64 ipow(u64 base, unsigned e) {
  u64 r = 1;
  while (e--) r *= base;
  return r;
}

}  // namespace k1lab
