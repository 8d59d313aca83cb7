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

#ifndef THEMIS_CONTRACTS_REGISTRY_HPP_
#define THEMIS_CONTRACTS_REGISTRY_HPP_

#include <memory>

#include "themis/contracts/fund_contract.hpp"
#include "themis/contracts/note_registry.hpp"
#include "themis/contracts/policy_contract.hpp"

namespace themis::contracts {

void register_contracts(ledger::ContractRegistry& registry);
std::shared_ptr<const ledger::ContractRegistry> default_registry();

}  // namespace themis::contracts

#endif  // THEMIS_CONTRACTS_REGISTRY_HPP_
