// Copyright 2026 The Themis Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Arithmetic in GF(2^255 - 19) with five 51-bit limbs.

#ifndef THEMIS_CRYPTO_DETAIL_FIELD25519_HPP_
#define THEMIS_CRYPTO_DETAIL_FIELD25519_HPP_

#include <array>
#include <cstdint>
#include <cstring>

namespace themis::crypto::detail {

struct Fe {
  std::uint64_t v[5];
};

inline constexpr std::uint64_t kMask51 = (std::uint64_t{1} << 51) - 1;

inline constexpr Fe fe_zero() { return Fe{{0, 0, 0, 0, 0}}; }
inline constexpr Fe fe_one() { return Fe{{1, 0, 0, 0, 0}}; }
inline Fe fe_small(std::uint64_t x) { return Fe{{x, 0, 0, 0, 0}}; }

inline void fe_carry(Fe& h) {
  std::uint64_t c;
  c = h.v[0] >> 51; h.v[0] &= kMask51; h.v[1] += c;
  c = h.v[1] >> 51; h.v[1] &= kMask51; h.v[2] += c;
  c = h.v[2] >> 51; h.v[2] &= kMask51; h.v[3] += c;
  c = h.v[3] >> 51; h.v[3] &= kMask51; h.v[4] += c;
  c = h.v[4] >> 51; h.v[4] &= kMask51; h.v[0] += 19 * c;
}

inline Fe fe_add(const Fe& f, const Fe& g) {
  Fe h{{f.v[0] + g.v[0], f.v[1] + g.v[1], f.v[2] + g.v[2], f.v[3] + g.v[3],
        f.v[4] + g.v[4]}};
  fe_carry(h);
  return h;
}

// Adds 4p before subtracting so limbs never underflow for carried inputs.
inline Fe fe_sub(const Fe& f, const Fe& g) {
  constexpr std::uint64_t kFourP0 = 0x1FFFFFFFFFFFB4;
  constexpr std::uint64_t kFourPi = 0x1FFFFFFFFFFFFC;
  Fe h{{f.v[0] + kFourP0 - g.v[0], f.v[1] + kFourPi - g.v[1],
        f.v[2] + kFourPi - g.v[2], f.v[3] + kFourPi - g.v[3],
        f.v[4] + kFourPi - g.v[4]}};
  fe_carry(h);
  return h;
}

inline Fe fe_neg(const Fe& f) { return fe_sub(fe_zero(), f); }

inline Fe fe_mul(const Fe& f, const Fe& g) {
  using u128 = unsigned __int128;
  const std::uint64_t f0 = f.v[0], f1 = f.v[1], f2 = f.v[2], f3 = f.v[3], f4 = f.v[4];
  const std::uint64_t g0 = g.v[0], g1 = g.v[1], g2 = g.v[2], g3 = g.v[3], g4 = g.v[4];
  const std::uint64_t g1_19 = 19 * g1, g2_19 = 19 * g2, g3_19 = 19 * g3, g4_19 = 19 * g4;

  u128 r0 = (u128)f0 * g0 + (u128)f1 * g4_19 + (u128)f2 * g3_19 + (u128)f3 * g2_19 +
            (u128)f4 * g1_19;
  u128 r1 = (u128)f0 * g1 + (u128)f1 * g0 + (u128)f2 * g4_19 + (u128)f3 * g3_19 +
            (u128)f4 * g2_19;
  u128 r2 = (u128)f0 * g2 + (u128)f1 * g1 + (u128)f2 * g0 + (u128)f3 * g4_19 +
            (u128)f4 * g3_19;
  u128 r3 = (u128)f0 * g3 + (u128)f1 * g2 + (u128)f2 * g1 + (u128)f3 * g0 +
            (u128)f4 * g4_19;
  u128 r4 = (u128)f0 * g4 + (u128)f1 * g3 + (u128)f2 * g2 + (u128)f3 * g1 +
            (u128)f4 * g0;

  Fe h;
  r1 += static_cast<std::uint64_t>(r0 >> 51);
  h.v[0] = static_cast<std::uint64_t>(r0) & kMask51;
  r2 += static_cast<std::uint64_t>(r1 >> 51);
  h.v[1] = static_cast<std::uint64_t>(r1) & kMask51;
  r3 += static_cast<std::uint64_t>(r2 >> 51);
  h.v[2] = static_cast<std::uint64_t>(r2) & kMask51;
  r4 += static_cast<std::uint64_t>(r3 >> 51);
  h.v[3] = static_cast<std::uint64_t>(r3) & kMask51;
  std::uint64_t c = static_cast<std::uint64_t>(r4 >> 51);
  h.v[4] = static_cast<std::uint64_t>(r4) & kMask51;
  h.v[0] += 19 * c;
  h.v[1] += h.v[0] >> 51;
  h.v[0] &= kMask51;
  return h;
}

inline Fe fe_sq(const Fe& f) {
  using u128 = unsigned __int128;
  const std::uint64_t f0 = f.v[0], f1 = f.v[1], f2 = f.v[2], f3 = f.v[3], f4 = f.v[4];
  const std::uint64_t f0_2 = 2 * f0, f1_2 = 2 * f1;
  const std::uint64_t f1_38 = 38 * f1, f2_38 = 38 * f2, f3_38 = 38 * f3;
  const std::uint64_t f3_19 = 19 * f3, f4_19 = 19 * f4;

  u128 r0 = (u128)f0 * f0 + (u128)f1_38 * f4 + (u128)f2_38 * f3;
  u128 r1 = (u128)f0_2 * f1 + (u128)f2_38 * f4 + (u128)f3_19 * f3;
  u128 r2 = (u128)f0_2 * f2 + (u128)f1 * f1 + (u128)f3_38 * f4;
  u128 r3 = (u128)f0_2 * f3 + (u128)f1_2 * f2 + (u128)f4_19 * f4;
  u128 r4 = (u128)f0_2 * f4 + (u128)f1_2 * f3 + (u128)f2 * f2;

  Fe h;
  r1 += static_cast<std::uint64_t>(r0 >> 51);
  h.v[0] = static_cast<std::uint64_t>(r0) & kMask51;
  r2 += static_cast<std::uint64_t>(r1 >> 51);
  h.v[1] = static_cast<std::uint64_t>(r1) & kMask51;
  r3 += static_cast<std::uint64_t>(r2 >> 51);
  h.v[2] = static_cast<std::uint64_t>(r2) & kMask51;
  r4 += static_cast<std::uint64_t>(r3 >> 51);
  h.v[3] = static_cast<std::uint64_t>(r3) & kMask51;
  std::uint64_t c = static_cast<std::uint64_t>(r4 >> 51);
  h.v[4] = static_cast<std::uint64_t>(r4) & kMask51;
  h.v[0] += 19 * c;
  h.v[1] += h.v[0] >> 51;
  h.v[0] &= kMask51;
  return h;
}

inline Fe fe_sq_n(Fe f, int n) {
  for (int i = 0; i < n; ++i) f = fe_sq(f);
  return f;
}

inline Fe fe_mul_small(const Fe& f, std::uint32_t k) {
  using u128 = unsigned __int128;
  Fe h;
  u128 c = 0;
  for (int i = 0; i < 5; ++i) {
    c += (u128)f.v[i] * k;
    h.v[i] = static_cast<std::uint64_t>(c) & kMask51;
    c >>= 51;
  }
  h.v[0] += 19 * static_cast<std::uint64_t>(c);
  fe_carry(h);
  return h;
}

inline std::uint64_t load64_le(const std::uint8_t* p) {
  std::uint64_t v;
  std::memcpy(&v, p, 8);
  return v;
}

// Ignores the top bit, as is conventional for this field.
inline Fe fe_from_bytes(const std::uint8_t s[32]) {
  Fe h;
  h.v[0] = load64_le(s) & kMask51;
  h.v[1] = (load64_le(s + 6) >> 3) & kMask51;
  h.v[2] = (load64_le(s + 12) >> 6) & kMask51;
  h.v[3] = (load64_le(s + 19) >> 1) & kMask51;
  h.v[4] = (load64_le(s + 24) >> 12) & kMask51;
  return h;
}

inline std::array<std::uint8_t, 32> fe_to_bytes(const Fe& f) {
  Fe h = f;
  fe_carry(h);
  fe_carry(h);
  std::uint64_t q = (h.v[0] + 19) >> 51;
  q = (h.v[1] + q) >> 51;
  q = (h.v[2] + q) >> 51;
  q = (h.v[3] + q) >> 51;
  q = (h.v[4] + q) >> 51;
  h.v[0] += 19 * q;
  h.v[1] += h.v[0] >> 51; h.v[0] &= kMask51;
  h.v[2] += h.v[1] >> 51; h.v[1] &= kMask51;
  h.v[3] += h.v[2] >> 51; h.v[2] &= kMask51;
  h.v[4] += h.v[3] >> 51; h.v[3] &= kMask51;
  h.v[4] &= kMask51;

  std::array<std::uint8_t, 32> out{};
  std::uint64_t w[4];
  w[0] = h.v[0] | (h.v[1] << 51);
  w[1] = (h.v[1] >> 13) | (h.v[2] << 38);
  w[2] = (h.v[2] >> 26) | (h.v[3] << 25);
  w[3] = (h.v[3] >> 39) | (h.v[4] << 12);
  std::memcpy(out.data(), w, 32);
  return out;
}

inline bool fe_is_zero(const Fe& f) {
  auto b = fe_to_bytes(f);
  std::uint8_t acc = 0;
  for (auto x : b) acc |= x;
  return acc == 0;
}

inline bool fe_eq(const Fe& a, const Fe& b) { return fe_to_bytes(a) == fe_to_bytes(b); }

inline bool fe_is_negative(const Fe& f) { return (fe_to_bytes(f)[0] & 1) != 0; }

inline Fe fe_abs(const Fe& f) { return fe_is_negative(f) ? fe_neg(f) : f; }

inline Fe fe_invert(const Fe& z) {
  Fe t0 = fe_sq(z);
  Fe t1 = fe_sq_n(t0, 2);
  t1 = fe_mul(z, t1);
  t0 = fe_mul(t0, t1);
  Fe t2 = fe_sq(t0);
  t1 = fe_mul(t1, t2);
  t2 = fe_sq_n(t1, 5);
  t1 = fe_mul(t2, t1);
  t2 = fe_sq_n(t1, 10);
  t2 = fe_mul(t2, t1);
  Fe t3 = fe_sq_n(t2, 20);
  t2 = fe_mul(t3, t2);
  t2 = fe_sq_n(t2, 10);
  t1 = fe_mul(t2, t1);
  t2 = fe_sq_n(t1, 50);
  t2 = fe_mul(t2, t1);
  t3 = fe_sq_n(t2, 100);
  t2 = fe_mul(t3, t2);
  t2 = fe_sq_n(t2, 50);
  t1 = fe_mul(t2, t1);
  t1 = fe_sq_n(t1, 5);
  return fe_mul(t1, t0);
}

// z^((p - 5) / 8)
inline Fe fe_pow22523(const Fe& z) {
  Fe t0 = fe_sq(z);
  Fe t1 = fe_sq_n(t0, 2);
  t1 = fe_mul(z, t1);
  t0 = fe_mul(t0, t1);
  t0 = fe_sq(t0);
  t0 = fe_mul(t1, t0);
  t1 = fe_sq_n(t0, 5);
  t0 = fe_mul(t1, t0);
  t1 = fe_sq_n(t0, 10);
  t1 = fe_mul(t1, t0);
  Fe t2 = fe_sq_n(t1, 20);
  t1 = fe_mul(t2, t1);
  t1 = fe_sq_n(t1, 10);
  t0 = fe_mul(t1, t0);
  t1 = fe_sq_n(t0, 50);
  t1 = fe_mul(t1, t0);
  t2 = fe_sq_n(t1, 100);
  t1 = fe_mul(t2, t1);
  t1 = fe_sq_n(t1, 50);
  t0 = fe_mul(t1, t0);
  t0 = fe_sq_n(t0, 2);
  return fe_mul(t0, z);
}

}  // namespace themis::crypto::detail

#endif  // THEMIS_CRYPTO_DETAIL_FIELD25519_HPP_
