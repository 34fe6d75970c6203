// Copyright 2026 The dprank Authors.
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

#ifndef DPRANK_RNG_H_
#define DPRANK_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace dprank {

// Deterministic random source used everywhere in the library.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The distribution helpers below are implemented here rather than
// through <random> distributions, whose algorithms are implementation-defined,
// so that a seed yields the same stream on every toolchain.
//
// Independent substreams are obtained with DeriveSeed: a SplitMix64 chain over
// the parent seed and a list of integer keys (trial index, grid cell ids, ...).
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double Uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on the open interval (0, 1).
  double UniformOpen01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform01(); }

  // Uniform integer in [0, bound). Rejection sampling, so unbiased.
  uint64_t UniformInt(uint64_t bound);

  bool Bernoulli(double p) { return Uniform01() < p; }

  // Laplace(0, scale) by inverse CDF. scale == 0 returns exactly 0.
  double Laplace(double scale);

 private:
  std::mt19937_64 engine_;
};

uint64_t SplitMix64(uint64_t x);

// Mixes `keys` into `seed`. Order-sensitive; distinct key lists give
// (with overwhelming probability) unrelated seeds.
uint64_t DeriveSeed(uint64_t seed, std::initializer_list<uint64_t> keys);

// Stable 64-bit hash of a string (FNV-1a), for use as a DeriveSeed key.
uint64_t HashString(const char* s);

}  // namespace dprank

#endif  // DPRANK_RNG_H_
