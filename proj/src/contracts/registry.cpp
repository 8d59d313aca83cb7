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

#include "themis/contracts/registry.hpp"

namespace themis::contracts {

void register_contracts(ledger::ContractRegistry& registry) {
  registry.add(std::string(kPolicyContractKind), [](ledger::CallContext& ctx, const json& params) {
    return std::make_unique<PolicyContract>(ctx, PolicyContractParams::from_json(params));
  });
  registry.add(std::string(kFundContractKind), [](ledger::CallContext& ctx, const json& params) {
    return std::make_unique<FundContract>(ctx, FundContractParams::from_json(params));
  });
  registry.add(std::string(kNoteRegistryKind), [](ledger::CallContext&, const json&) {
    return std::make_unique<NoteRegistry>();
  });
}

std::shared_ptr<const ledger::ContractRegistry> default_registry() {
  static const auto registry = [] {
    auto r = std::make_shared<ledger::ContractRegistry>();
    register_contracts(*r);
    return r;
  }();
  return registry;
}

}  // namespace themis::contracts
