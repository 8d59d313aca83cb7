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

#include "themis/crypto/detail/edwards.hpp"

#include <cstring>

namespace themis::crypto::detail {

namespace {

Fe fe_pow(const Fe& base, const std::array<std::uint8_t, 32>& exp_le) {
  Fe acc = fe_one();
  for (int i = 255; i >= 0; --i) {
    acc = fe_sq(acc);
    if ((exp_le[i / 8] >> (i % 8)) & 1) acc = fe_mul(acc, base);
  }
  return acc;
}

CurveConstants make_constants() {
  CurveConstants k;
  k.d = fe_neg(fe_mul(fe_small(121665), fe_invert(fe_small(121666))));
  k.d2 = fe_add(k.d, k.d);

  // (p - 1) / 4 = 2^253 - 5
  std::array<std::uint8_t, 32> e{};
  e.fill(0xff);
  e[31] = 0x1f;
  e[0] = 0xfb;
  k.sqrt_m1 = fe_pow(fe_small(2), e);
  return k;
}

}  // namespace

const CurveConstants& curve_constants() {
  static const CurveConstants k = make_constants();
  return k;
}

std::pair<bool, Fe> sqrt_ratio_m1(const Fe& u, const Fe& v) {
  const Fe& sqrt_m1 = curve_constants().sqrt_m1;
  Fe v3 = fe_mul(fe_sq(v), v);
  Fe v7 = fe_mul(fe_sq(v3), v);
  Fe r = fe_mul(fe_mul(u, v3), fe_pow22523(fe_mul(u, v7)));
  Fe check = fe_mul(v, fe_sq(r));

  Fe neg_u = fe_neg(u);
  bool correct = fe_eq(check, u);
  bool flipped = fe_eq(check, neg_u);
  bool flipped_i = fe_eq(check, fe_mul(neg_u, sqrt_m1));
  if (flipped || flipped_i) r = fe_mul(r, sqrt_m1);
  return {correct || flipped, fe_abs(r)};
}

namespace {

const Fe& invsqrt_a_minus_d() {
  static const Fe v = [] {
    const auto& k = curve_constants();
    Fe a_minus_d = fe_sub(fe_neg(fe_one()), k.d);
    return sqrt_ratio_m1(fe_one(), a_minus_d).second;
  }();
  return v;
}

}  // namespace

bool ristretto_eq(const ExtPoint& p, const ExtPoint& q) {
  return fe_eq(fe_mul(p.X, q.Y), fe_mul(p.Y, q.X)) ||
         fe_eq(fe_mul(p.Y, q.Y), fe_mul(p.X, q.X));
}

std::array<std::uint8_t, 32> ristretto_encode(const ExtPoint& p) {
  const auto& k = curve_constants();
  Fe u1 = fe_mul(fe_add(p.Z, p.Y), fe_sub(p.Z, p.Y));
  Fe u2 = fe_mul(p.X, p.Y);
  Fe invsqrt = sqrt_ratio_m1(fe_one(), fe_mul(u1, fe_sq(u2))).second;
  Fe den1 = fe_mul(invsqrt, u1);
  Fe den2 = fe_mul(invsqrt, u2);
  Fe z_inv = fe_mul(fe_mul(den1, den2), p.T);
  Fe ix0 = fe_mul(p.X, k.sqrt_m1);
  Fe iy0 = fe_mul(p.Y, k.sqrt_m1);
  Fe enchanted = fe_mul(den1, invsqrt_a_minus_d());
  bool rotate = fe_is_negative(fe_mul(p.T, z_inv));
  Fe x = rotate ? iy0 : p.X;
  Fe y = rotate ? ix0 : p.Y;
  Fe den_inv = rotate ? enchanted : den2;
  if (fe_is_negative(fe_mul(x, z_inv))) y = fe_neg(y);
  Fe s = fe_abs(fe_mul(den_inv, fe_sub(p.Z, y)));
  return fe_to_bytes(s);
}

std::optional<ExtPoint> ristretto_decode(const std::uint8_t bytes[32]) {
  Fe s = fe_from_bytes(bytes);
  auto canonical = fe_to_bytes(s);
  if (std::memcmp(canonical.data(), bytes, 32) != 0) return std::nullopt;
  if (fe_is_negative(s)) return std::nullopt;

  const auto& k = curve_constants();
  Fe ss = fe_sq(s);
  Fe u1 = fe_sub(fe_one(), ss);
  Fe u2 = fe_add(fe_one(), ss);
  Fe u2_sq = fe_sq(u2);
  Fe v = fe_sub(fe_neg(fe_mul(k.d, fe_sq(u1))), u2_sq);
  auto [was_square, invsqrt] = sqrt_ratio_m1(fe_one(), fe_mul(v, u2_sq));
  Fe den_x = fe_mul(invsqrt, u2);
  Fe den_y = fe_mul(fe_mul(invsqrt, den_x), v);
  Fe x = fe_abs(fe_mul(fe_add(s, s), den_x));
  Fe y = fe_mul(u1, den_y);
  Fe t = fe_mul(x, y);
  if (!was_square || fe_is_negative(t) || fe_is_zero(y)) return std::nullopt;
  return ExtPoint{x, y, fe_one(), t};
}

}  // namespace themis::crypto::detail
