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

#ifndef NBPOLAR_POLAR_HPP
#define NBPOLAR_POLAR_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "nbpolar/kernel.hpp"

namespace nbpolar {

inline constexpr std::size_t kMaxBlockLength = std::size_t{1} << 22;
inline constexpr std::size_t kMaxDecodeLength = std::size_t{1} << 18;

/// A polar code: kernel, number of recursion levels and the frozen index set
/// (always transmitted as zero).
struct CodeSpec {
  Kernel kernel;
  unsigned levels = 0;
  std::vector<std::size_t> frozen;

  CodeSpec(Kernel k, unsigned n, std::vector<std::size_t> frozen_set);

  std::size_t block_length() const;
  std::size_t dimension() const { return block_length() - frozen.size(); }
  double rate() const;
  std::vector<std::size_t> unfrozen() const;
};

/// perm[i] is i with its base-ell digit string (n digits) reversed.  The
/// permutation is an involution.
std::vector<std::size_t> bit_reversal_perm(std::size_t ell, unsigned n);

/// G^{(x)n}, materialized.  Guarded by kMaxBlockLength.
Matrix kron_power(const Kernel& k, unsigned n);

/// x = u R G^{(x)n} without materializing the matrix; O(N ell n) field ops.
std::vector<Elem> polar_transform(const Kernel& k, std::span<const Elem> u, unsigned n);

/// Scatters the message into the unfrozen positions (zeros elsewhere) and
/// applies polar_transform.
std::vector<Elem> encode(const CodeSpec& spec, std::span<const Elem> message);

/// One channel use worth of output.
struct Observation {
  bool erased = false;
  Elem symbol = 0;              ///< erasure channel, when not erased
  std::vector<double> samples;  ///< biawgn: one sample per bit of the symbol
};

/// Per-symbol channel likelihoods W(y | x), indexed by x.  Any positive
/// scaling is equivalent as far as the decoder is concerned.
using LikelihoodVector = std::vector<double>;

/// Memoryless q-ary channel models.
///
/// erasure: the symbol is delivered intact with probability 1-eps, erased
/// with probability eps.
///
/// biawgn: each of the log2(q) bits of the symbol (base-2 digits of the
/// integer encoding, most significant first) is BPSK modulated (0 -> +1,
/// 1 -> -1) and sent over an AWGN channel with noise deviation sigma.
/// Requires q to be a power of two.
class Channel {
 public:
  enum class Kind { erasure, biawgn };

  static Channel erasure(FieldPtr field, double eps);
  static Channel biawgn(FieldPtr field, double sigma);

  /// Parses "erasure:EPS" or "biawgn:SIGMA".
  static Channel parse(FieldPtr field, const std::string& text);

  Kind kind() const { return kind_; }
  const Field& field() const { return *field_; }
  FieldPtr field_ptr() const { return field_; }
  double param() const { return param_; }
  std::string describe() const;

  std::vector<Observation> transmit(std::span<const Elem> codeword,
                                    std::uint64_t seed) const;
  LikelihoodVector likelihoods(const Observation& obs) const;
  std::vector<LikelihoodVector> likelihoods(std::span<const Observation> obs) const;

  /// Base-2 digits of the integer encoding, most significant first.
  static std::vector<int> symbol_bits(const Field& f, Elem x);

 private:
  Channel(FieldPtr field, Kind kind, double param);

  FieldPtr field_;
  Kind kind_;
  double param_;
};

/// Decision record for one input index.
struct SymbolDecision {
  Elem fed = 0;     ///< value actually propagated (frozen zero, genie truth
                    ///< or the argmax)
  Elem argmax = 0;  ///< smallest-encoding maximizer of the posterior
  bool tie = false; ///< posterior maximum attained by more than one symbol
};

struct ScOptions {
  /// When non-empty (size N), every decision propagates the true input
  /// symbol instead of the decoder guess; decisions still record the argmax.
  std::span<const Elem> genie = {};
  bool record_posteriors = false;
};

struct ScResult {
  std::vector<Elem> u_hat;
  std::vector<SymbolDecision> decisions;
  /// Posterior of each input symbol given the fed prefix, normalized to sum
  /// one; filled only on request.
  std::vector<std::vector<double>> posteriors;
};

/// Exact successive cancellation decoding: the decision at index i maximizes
/// the true posterior of u_i given the observations and the already-fed
/// prefix, with future inputs marginalized uniformly.  Cost per kernel step
/// is at most q^ell, which is required to stay <= 65536.
ScResult sc_decode(const CodeSpec& spec, const std::vector<LikelihoodVector>& obs,
                   const ScOptions& options = {});

/// Three line format: "q ell n", kernel label, sorted frozen indices.
void write_frozen_set(std::ostream& out, const CodeSpec& spec);

/// Accepts leading '#' comment lines; the kernel is rebuilt from its label.
CodeSpec read_frozen_set(std::istream& in);

}  // namespace nbpolar

#endif
