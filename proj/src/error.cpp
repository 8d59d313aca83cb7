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

#include "themis/error.hpp"

namespace themis {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::kPlaintextTooLarge: return "PlaintextTooLarge";
    case Errc::kNotInRange: return "NotInRange";
    case Errc::kAuthFailure: return "AuthFailure";
    case Errc::kInvalidEncoding: return "InvalidEncoding";
    case Errc::kInvalidConfig: return "InvalidConfig";
    case Errc::kNoQualifiedDealers: return "NoQualifiedDealers";
    case Errc::kInsufficientShares: return "InsufficientShares";
    case Errc::kInvalidPartial: return "InvalidPartial";
    case Errc::kBadSignature: return "BadSignature";
    case Errc::kBadSequence: return "BadSequence";
    case Errc::kInsufficientFunds: return "InsufficientFunds";
    case Errc::kUnauthorized: return "Unauthorized";
    case Errc::kIndexOutOfRange: return "IndexOutOfRange";
    case Errc::kLengthMismatch: return "LengthMismatch";
    case Errc::kNotFound: return "NotFound";
    case Errc::kProofRejected: return "ProofRejected";
    case Errc::kDuplicateAddress: return "DuplicateAddress";
    case Errc::kAlreadyInitialized: return "AlreadyInitialized";
    case Errc::kNotInitialized: return "NotInitialized";
    case Errc::kUnknownAdvertiser: return "UnknownAdvertiser";
    case Errc::kDuplicateAdvertiser: return "DuplicateAdvertiser";
    case Errc::kUnknownTxRef: return "UnknownTxRef";
    case Errc::kUnknownAddr: return "UnknownAddr";
    case Errc::kCampaignFailed: return "CampaignFailed";
    case Errc::kCampaignNotComplete: return "CampaignNotComplete";
    case Errc::kBadOpening: return "BadOpening";
    case Errc::kNoSuchRequest: return "NoSuchRequest";
    case Errc::kComplaintRejected: return "ComplaintRejected";
    case Errc::kAmountOutOfRange: return "AmountOutOfRange";
    case Errc::kTotalMismatch: return "TotalMismatch";
    case Errc::kPolicyMismatch: return "PolicyMismatch";
    case Errc::kNoWinners: return "NoWinners";
    case Errc::kNotPrivate: return "NotPrivate";
    case Errc::kUnknownContract: return "UnknownContract";
    case Errc::kUnknownMethod: return "UnknownMethod";
    case Errc::kMalformedCall: return "MalformedCall";
    case Errc::kRegistrationClosed: return "RegistrationClosed";
    case Errc::kNotSelected: return "NotSelected";
    case Errc::kClicksMismatch: return "ClicksMismatch";
    case Errc::kInvalidState: return "InvalidState";
  }
  return "Unknown";
}

namespace {

std::string format_message(Errc code, const std::string& detail) {
  std::string msg(to_string(code));
  if (!detail.empty()) {
    msg += ": ";
    msg += detail;
  }
  return msg;
}

}  // namespace

Error::Error(Errc code, const std::string& detail)
    : std::runtime_error(format_message(code, detail)),
      code_(code),
      detail_(detail) {}

}  // namespace themis
