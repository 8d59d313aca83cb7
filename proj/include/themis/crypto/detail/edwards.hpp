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

// Twisted Edwards curve -x^2 + y^2 = 1 + d x^2 y^2 in extended coordinates and
// the ristretto255 quotient encoding on top of it. Implementation detail of
// GroupElement.

#ifndef THEMIS_CRYPTO_DETAIL_EDWARDS_HPP_
#define THEMIS_CRYPTO_DETAIL_EDWARDS_HPP_

#include <array>
#include <cstdint>
#include <optional>

#include "themis/crypto/detail/field25519.hpp"

namespace themis::crypto::detail {

struct ExtPoint {
  Fe X, Y, Z, T;
};

// (Y+X, Y-X, 2Z, 2dT), the precomputed form used on the right of an addition.
struct CachedPoint {
  Fe YpX, YmX, Z2, T2d;
};

struct CurveConstants {
  Fe d;
  Fe d2;
  Fe sqrt_m1;
};

const CurveConstants& curve_constants();

inline ExtPoint ext_identity() { return {fe_zero(), fe_one(), fe_one(), fe_zero()}; }

inline CachedPoint to_cached(const ExtPoint& p) {
  const auto& k = curve_constants();
  return {fe_add(p.Y, p.X), fe_sub(p.Y, p.X), fe_add(p.Z, p.Z), fe_mul(p.T, k.d2)};
}

inline CachedPoint cached_identity() {
  return {fe_one(), fe_one(), fe_small(2), fe_zero()};
}

inline CachedPoint cached_neg(const CachedPoint& c) {
  return {c.YmX, c.YpX, c.Z2, fe_neg(c.T2d)};
}

inline ExtPoint add_cached(const ExtPoint& p, const CachedPoint& q) {
  Fe a = fe_mul(fe_sub(p.Y, p.X), q.YmX);
  Fe b = fe_mul(fe_add(p.Y, p.X), q.YpX);
  Fe c = fe_mul(p.T, q.T2d);
  Fe d = fe_mul(p.Z, q.Z2);
  Fe e = fe_sub(b, a);
  Fe f = fe_sub(d, c);
  Fe g = fe_add(d, c);
  Fe h = fe_add(b, a);
  return {fe_mul(e, f), fe_mul(g, h), fe_mul(f, g), fe_mul(e, h)};
}

inline ExtPoint ext_add(const ExtPoint& p, const ExtPoint& q) {
  return add_cached(p, to_cached(q));
}

inline ExtPoint ext_neg(const ExtPoint& p) { return {fe_neg(p.X), p.Y, p.Z, fe_neg(p.T)}; }

inline ExtPoint ext_sub(const ExtPoint& p, const ExtPoint& q) {
  return add_cached(p, to_cached(ext_neg(q)));
}

inline ExtPoint ext_dbl(const ExtPoint& p) {
  Fe a = fe_sq(p.X);
  Fe b = fe_sq(p.Y);
  Fe zz = fe_sq(p.Z);
  Fe c = fe_add(zz, zz);
  Fe xy = fe_add(p.X, p.Y);
  Fe e = fe_sub(fe_sub(fe_sq(xy), a), b);
  Fe g = fe_sub(b, a);   // D + B with D = -A
  Fe f = fe_sub(g, c);
  Fe h = fe_sub(fe_neg(a), b);
  return {fe_mul(e, f), fe_mul(g, h), fe_mul(f, g), fe_mul(e, h)};
}

// Returns (was_square, sqrt(u/v)) with the non-negative root.
std::pair<bool, Fe> sqrt_ratio_m1(const Fe& u, const Fe& v);

bool ristretto_eq(const ExtPoint& p, const ExtPoint& q);
std::array<std::uint8_t, 32> ristretto_encode(const ExtPoint& p);
std::optional<ExtPoint> ristretto_decode(const std::uint8_t s[32]);

}  // namespace themis::crypto::detail

#endif  // THEMIS_CRYPTO_DETAIL_EDWARDS_HPP_
