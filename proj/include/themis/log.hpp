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

#ifndef THEMIS_LOG_HPP_
#define THEMIS_LOG_HPP_

#include <string_view>

namespace themis::log {

enum class Level { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

// Read once from THEMIS_LOG (error, warn, info, debug); defaults to warn.
Level level();
void set_level(Level l);
void write(Level l, std::string_view msg);

inline void error(std::string_view m) { write(Level::kError, m); }
inline void warn(std::string_view m) { write(Level::kWarn, m); }
inline void info(std::string_view m) { write(Level::kInfo, m); }
inline void debug(std::string_view m) { write(Level::kDebug, m); }

}  // namespace themis::log

#endif  // THEMIS_LOG_HPP_
