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

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "themis/crypto/elgamal.hpp"
#include "themis/error.hpp"

namespace themis::crypto {

namespace {

std::uint64_t prefix_key(const GroupElement::Encoding& enc) {
  std::uint64_t k;
  std::memcpy(&k, enc.data(), sizeof(k));
  return k;
}

// Baby steps j*g for j in [0, width), keyed by an encoding prefix.
struct BabyStepTable {
  explicit BabyStepTable(std::uint64_t w) : width(w) {
    index.reserve(width);
    GroupElement acc;
    const auto& g = GroupElement::generator();
    for (std::uint64_t j = 0; j < width; ++j) {
      index.emplace(prefix_key(acc.to_bytes()), static_cast<std::uint32_t>(j));
      acc += g;
    }
    giant_stride = -(g * width);
  }

  std::uint64_t width;
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  GroupElement giant_stride;
};

// Giant steps cost a point encoding each, baby steps are paid once per
// table, so tables are sized for at most ~256 giant steps up to 2^16 entries.
std::uint64_t table_width(std::uint64_t bound) {
  constexpr std::uint64_t kTargetGiantSteps = 256;
  constexpr std::uint64_t kPreferredMaxWidth = std::uint64_t{1} << 16;
  std::uint64_t w = 16;
  while (w < (std::uint64_t{1} << 32) && w * w <= bound) w <<= 1;
  while (w < kPreferredMaxWidth && bound / w >= kTargetGiantSteps) w <<= 1;
  return w;
}

std::shared_ptr<const BabyStepTable> table_for(std::uint64_t width) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::shared_ptr<const BabyStepTable>> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find(width);
    if (it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const BabyStepTable>(width);
  std::lock_guard lock(mu);
  auto [it, inserted] = cache.emplace(width, std::move(built));
  return it->second;
}

}  // namespace

std::uint64_t recover_plaintext(const GroupElement& elem, std::uint64_t bound) {
  if (bound > (std::uint64_t{1} << 48)) {
    throw Error(Errc::kInvalidConfig, "recovery bound too large");
  }
  auto table = table_for(table_width(bound));
  const std::uint64_t giant_steps = bound / table->width + 1;

  GroupElement gamma = elem;
  for (std::uint64_t i = 0; i < giant_steps; ++i) {
    auto it = table->index.find(prefix_key(gamma.to_bytes()));
    if (it != table->index.end()) {
      std::uint64_t candidate = i * table->width + it->second;
      if (candidate <= bound && GroupElement::base_mul(candidate) == elem) return candidate;
    }
    gamma += table->giant_stride;
  }
  throw Error(Errc::kNotInRange, "no plaintext within bound " + std::to_string(bound));
}

}  // namespace themis::crypto
