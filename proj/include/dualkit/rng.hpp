// Copyright 2026 The dualkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Deterministic, label-addressed random streams. A run is driven by one
// 64-bit seed; every consumer derives its own substream by hashing a label,
// and every Monte-Carlo sample derives its engine from (substream, index).
// Results therefore do not depend on how samples are split across workers,
// and adding a new consumer never perturbs existing streams.

#include <cstdint>
#include <random>
#include <string_view>

namespace dualkit {

// SplitMix64 finalizer: a bijective 64-bit mixer.
std::uint64_t splitmix64(std::uint64_t x);

// FNV-1a hash of a label, used only to name substreams.
std::uint64_t label_hash(std::string_view label);

class Stream {
 public:
  explicit Stream(std::uint64_t seed) : key_(splitmix64(seed)) {}
  Stream(std::uint64_t seed, std::string_view label)
      : key_(splitmix64(splitmix64(seed) ^ label_hash(label))) {}

  // Named child stream.
  Stream child(std::string_view label) const;
  // Per-sample stream.
  Stream at(std::uint64_t index) const;

  std::uint64_t key() const { return key_; }
  std::mt19937_64 engine() const { return std::mt19937_64(key_); }

 private:
  struct Raw {};
  Stream(Raw, std::uint64_t key) : key_(key) {}
  std::uint64_t key_;
};

}  // namespace dualkit
