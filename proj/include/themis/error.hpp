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

#ifndef THEMIS_ERROR_HPP_
#define THEMIS_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace themis {

// Every failure surfaced by the library carries one of these codes. Contract
// reverts reuse the same codes so receipts can name the reason.
enum class Errc {
  kPlaintextTooLarge,
  kNotInRange,
  kAuthFailure,
  kInvalidEncoding,
  kInvalidConfig,
  kNoQualifiedDealers,
  kInsufficientShares,
  kInvalidPartial,
  kBadSignature,
  kBadSequence,
  kInsufficientFunds,
  kUnauthorized,
  kIndexOutOfRange,
  kLengthMismatch,
  kNotFound,
  kProofRejected,
  kDuplicateAddress,
  kAlreadyInitialized,
  kNotInitialized,
  kUnknownAdvertiser,
  kDuplicateAdvertiser,
  kUnknownTxRef,
  kUnknownAddr,
  kCampaignFailed,
  kCampaignNotComplete,
  kBadOpening,
  kNoSuchRequest,
  kComplaintRejected,
  kAmountOutOfRange,
  kTotalMismatch,
  kPolicyMismatch,
  kNoWinners,
  kNotPrivate,
  kUnknownContract,
  kUnknownMethod,
  kMalformedCall,
  kRegistrationClosed,
  kNotSelected,
  kClicksMismatch,
  kInvalidState,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  explicit Error(Errc code, const std::string& detail = {});

  Errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace themis

#endif  // THEMIS_ERROR_HPP_
