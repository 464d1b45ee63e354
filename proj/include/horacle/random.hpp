// Copyright 2026 The Horacle Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace horacle {

using Engine = std::mt19937_64;

/// Named random substreams. Every consumer draws from its own stream so
/// that adding a consumer never shifts the draws seen by another.
enum class Stream : std::uint64_t {
  kPopulation = 1,
  kPositions = 2,
  kBlockage = 3,
  kSubsampling = 4,
  kFolds = 5,
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

std::uint64_t derive_seed(std::uint64_t seed, Stream stream,
                          std::uint64_t index = 0);

Engine make_engine(std::uint64_t seed, Stream stream, std::uint64_t index = 0);

}  // namespace horacle
