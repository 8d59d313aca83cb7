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

#ifndef THEMIS_CRYPTO_SODIUM_HPP_
#define THEMIS_CRYPTO_SODIUM_HPP_

namespace themis::crypto {

// Initializes libsodium once per process. Throws std::runtime_error if the
// library cannot be initialized.
void ensure_sodium();

}  // namespace themis::crypto

#endif  // THEMIS_CRYPTO_SODIUM_HPP_
