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

#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "themis/actors/bench.hpp"
#include "themis/actors/scenario.hpp"
#include "themis/crypto/elgamal.hpp"
#include "themis/crypto/proofs.hpp"
#include "themis/crypto/signature.hpp"
#include "themis/error.hpp"
#include "themis/vrf/vrf.hpp"

namespace py = pybind11;

namespace {

using themis::actors::json;
using themis::crypto::Ciphertext;
using themis::crypto::GroupElement;
using themis::crypto::Scalar;

py::bytes to_py(themis::ByteSpan b) { return py::bytes(reinterpret_cast<const char*>(b.data()), b.size()); }

themis::Bytes from_py(const py::bytes& b) {
  std::string s = b;
  return themis::Bytes(s.begin(), s.end());
}

Scalar scalar_arg(const py::bytes& b) { return Scalar::from_bytes(from_py(b)); }
GroupElement point_arg(const py::bytes& b) { return GroupElement::from_bytes(from_py(b)); }
Ciphertext ct_arg(const py::bytes& b) { return Ciphertext::from_bytes(from_py(b)); }

std::string run_scenario_json(const std::string& scenario, std::optional<std::uint64_t> seed) {
  auto s = themis::actors::Scenario::from_json(json::parse(scenario), seed);
  return themis::actors::run_scenario(s).report.dump();
}

std::string random_scenario_json(std::uint64_t seed, const std::string& inject) {
  auto rng = themis::crypto::Rng::from_u64(seed);
  auto s = themis::actors::random_scenario(rng);
  s.seed = seed;
  if (inject == "underpay") {
    themis::actors::inject(s, themis::actors::Injection::kUnderpay, rng);
  } else if (inject == "overwithdraw") {
    themis::actors::inject(s, themis::actors::Injection::kOverwithdraw, rng);
  } else if (!inject.empty()) {
    throw themis::Error(themis::Errc::kInvalidConfig, "unknown injection " + inject);
  }
  return s.to_json().dump();
}

}  // namespace

PYBIND11_MODULE(_themis, m) {
  m.doc() = "THEMIS protocol simulator";

  py::register_exception<themis::Error>(m, "ThemisError", PyExc_RuntimeError);

  m.def("run_scenario", &run_scenario_json, py::arg("scenario"), py::arg("seed") = std::nullopt,
        py::call_guard<py::gil_scoped_release>());
  m.def("random_scenario", &random_scenario_json, py::arg("seed"), py::arg("inject") = "");
  m.def(
      "bench_client",
      [](std::vector<std::size_t> sizes, std::size_t runs, std::uint64_t seed) {
        return themis::actors::bench_client(sizes, runs, seed).to_json().dump();
      },
      py::arg("sizes"), py::arg("runs") = 10, py::arg("seed") = 1, py::call_guard<py::gil_scoped_release>());
  m.def(
      "bench_settlement",
      [](std::vector<std::size_t> batches, std::size_t runs, std::uint64_t seed) {
        return themis::actors::bench_settlement(batches, runs, seed).to_json().dump();
      },
      py::arg("batches"), py::arg("runs") = 5, py::arg("seed") = 1, py::call_guard<py::gil_scoped_release>());

  // Group and ElGamal primitives over 32-byte encodings.
  m.def("keygen", [](const py::bytes& seed) {
    auto kp = themis::crypto::keygen(from_py(seed));
    return py::make_tuple(to_py(kp.sk.bytes()), to_py(kp.pk.to_bytes()));
  });
  m.def(
      "encrypt",
      [](const py::bytes& pk, std::uint64_t value, const py::bytes& seed) {
        auto rng = themis::crypto::Rng(themis::ByteSpan(from_py(seed)));
        return to_py(themis::crypto::encrypt(point_arg(pk), value, rng.scalar()).to_bytes());
      },
      py::arg("pk"), py::arg("value"), py::arg("seed"));
  m.def("add", [](const py::bytes& a, const py::bytes& b) { return to_py((ct_arg(a) + ct_arg(b)).to_bytes()); });
  m.def("scale", [](const py::bytes& a, std::uint64_t k) {
    return to_py(themis::crypto::scalar_mul_ciphertext(ct_arg(a), k).to_bytes());
  });
  m.def(
      "decrypt",
      [](const py::bytes& sk, const py::bytes& c, std::uint64_t bound) {
        return themis::crypto::recover_plaintext(themis::crypto::decrypt_to_element(scalar_arg(sk), ct_arg(c)), bound);
      },
      py::arg("sk"), py::arg("ciphertext"), py::arg("bound") = themis::crypto::kDefaultMaxPlaintext);
  m.def("prove_decryption", [](const py::bytes& sk, const py::bytes& c, std::uint64_t value) {
    return to_py(themis::crypto::prove_decryption(scalar_arg(sk), ct_arg(c), value).to_bytes());
  });
  m.def("verify_decryption",
        [](const py::bytes& pk, const py::bytes& c, std::uint64_t value, const py::bytes& proof) {
          try {
            return themis::crypto::verify_decryption(point_arg(pk), ct_arg(c), value,
                                                     themis::crypto::DleqProof::from_bytes(from_py(proof)));
          } catch (const themis::Error&) {
            return false;
          }
        });
  m.def("sign", [](const py::bytes& sk, const py::bytes& msg) {
    return to_py(themis::crypto::sign(scalar_arg(sk), from_py(msg)).to_bytes());
  });
  m.def("verify_signature", [](const py::bytes& pk, const py::bytes& msg, const py::bytes& sig) {
    try {
      return themis::crypto::verify_sig(point_arg(pk), from_py(msg), themis::crypto::Signature::from_bytes(from_py(sig)));
    } catch (const themis::Error&) {
      return false;
    }
  });
  m.def("vrf_prove", [](const py::bytes& sk, const py::bytes& epsilon) {
    auto out = themis::vrf::vrf_rand_gen(scalar_arg(sk), from_py(epsilon));
    return py::make_tuple(out.rand, to_py(out.to_bytes()));
  });
  m.def("vrf_verify", [](const py::bytes& pk, const py::bytes& epsilon, const py::bytes& output) {
    try {
      return themis::vrf::vrf_verify(point_arg(pk), from_py(epsilon), themis::vrf::VrfOutput::from_bytes(from_py(output)));
    } catch (const themis::Error&) {
      return false;
    }
  });
}
