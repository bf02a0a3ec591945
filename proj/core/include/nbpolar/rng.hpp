// Copyright 2026 the nbpolar authors
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

#ifndef NBPOLAR_RNG_HPP
#define NBPOLAR_RNG_HPP

#include <cstdint>
#include <thread>

namespace nbpolar {

/// Splitmix-style mixing of a master seed and a stream index.  Every trial
/// draws its own substream seed from (master, trial), which keeps Monte-Carlo
/// results identical no matter how trials are distributed over workers.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d649bb133111ebull;
  return z ^ (z >> 31);
}

inline unsigned resolve_threads(unsigned requested) {
  if (requested) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? hc : 1;
}

}  // namespace nbpolar

#endif
