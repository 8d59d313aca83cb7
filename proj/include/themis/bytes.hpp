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

#ifndef THEMIS_BYTES_HPP_
#define THEMIS_BYTES_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace themis {

using Bytes = std::vector<std::uint8_t>;
using ByteSpan = std::span<const std::uint8_t>;

std::string to_hex(ByteSpan data);
// Throws Error(kInvalidEncoding) on odd length or non-hex characters.
Bytes from_hex(std::string_view hex);

inline ByteSpan as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

// Length-prefixed binary writer used for canonical call arguments and
// transcripts. Integers are little-endian unless the method says otherwise.
class ByteWriter {
 public:
  ByteWriter& u8(std::uint8_t v);
  ByteWriter& u32(std::uint32_t v);
  ByteWriter& u64(std::uint64_t v);
  ByteWriter& u64_be(std::uint64_t v);
  ByteWriter& raw(ByteSpan data);
  // u32 length followed by the data.
  ByteWriter& var(ByteSpan data);
  ByteWriter& str(std::string_view s) { return var(as_bytes(s)); }

  template <std::size_t N>
  ByteWriter& fixed(const std::array<std::uint8_t, N>& data) {
    return raw(ByteSpan(data.data(), N));
  }

  const Bytes& bytes() const& { return buf_; }
  Bytes bytes() && { return std::move(buf_); }

 private:
  Bytes buf_;
};

// Reader counterpart; every accessor throws Error(kInvalidEncoding) when the
// input is too short.
class ByteReader {
 public:
  explicit ByteReader(ByteSpan data) : data_(data) {}

  std::uint8_t u8();
  std::uint32_t u32();
  std::uint64_t u64();
  std::uint64_t u64_be();
  ByteSpan raw(std::size_t n);
  Bytes var();
  std::string str();

  template <std::size_t N>
  std::array<std::uint8_t, N> fixed() {
    std::array<std::uint8_t, N> out{};
    auto s = raw(N);
    std::copy(s.begin(), s.end(), out.begin());
    return out;
  }

  bool done() const { return pos_ == data_.size(); }
  std::size_t remaining() const { return data_.size() - pos_; }
  // Throws if trailing bytes remain.
  void expect_done() const;

 private:
  ByteSpan data_;
  std::size_t pos_ = 0;
};

}  // namespace themis

#endif  // THEMIS_BYTES_HPP_
