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

#include "themis/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>

namespace themis::log {

namespace {

Level from_env() {
  const char* v = std::getenv("THEMIS_LOG");
  if (v == nullptr) return Level::kWarn;
  std::string s(v);
  if (s == "error") return Level::kError;
  if (s == "info") return Level::kInfo;
  if (s == "debug") return Level::kDebug;
  return Level::kWarn;
}

std::atomic<int>& current() {
  static std::atomic<int> l{static_cast<int>(from_env())};
  return l;
}

constexpr const char* kNames[] = {"error", "warn", "info", "debug"};

}  // namespace

Level level() { return static_cast<Level>(current().load()); }
void set_level(Level l) { current().store(static_cast<int>(l)); }

void write(Level l, std::string_view msg) {
  if (static_cast<int>(l) > current().load()) return;
  static std::mutex mu;
  std::lock_guard lock(mu);
  std::cerr << "[themis " << kNames[static_cast<int>(l)] << "] " << msg << '\n';
}

}  // namespace themis::log
