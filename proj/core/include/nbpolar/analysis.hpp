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

#ifndef NBPOLAR_ANALYSIS_HPP
#define NBPOLAR_ANALYSIS_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nbpolar/polar.hpp"

namespace nbpolar {

/// Per-index reliabilities: values[i] estimates (or computes exactly) the
/// probability that successive cancellation decides input i wrongly when all
/// earlier inputs are known, counting unresolved ties as errors.
struct ReliabilityProfile {
  unsigned q = 0;
  std::size_t ell = 0;
  unsigned levels = 0;
  std::string kernel_label;
  std::string channel;     ///< e.g. "erasure:0.5"
  std::string provenance;  ///< "exact-erasure" or "monte-carlo"
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<double> values;
};

/// Exact erasure-probability recursion
///   P^{(a ell + b)}_n = sum_{i=b+1}^{ell} C(ell, i) P^i (1-P)^{ell-i},
/// with P = P^{(a)}_{n-1}.  Valid only for kernels whose trailing row blocks
/// are MDS (mds_nested), hence the recursion refuses anything else.
ReliabilityProfile erasure_evolve(const Kernel& k, double eps, unsigned levels);

/// Genie-aided Monte-Carlo estimate on an arbitrary channel: each trial
/// encodes uniform inputs, transmits, and runs the decoder with every prefix
/// forced to the truth; index i counts as an error when the posterior argmax
/// differs from the truth or the maximum is not unique.  The spec's frozen
/// set must be empty.  Deterministic for a fixed seed regardless of thread
/// count.
ReliabilityProfile estimate_reliabilities_mc(const CodeSpec& spec, const Channel& ch,
                                             std::uint64_t trials, std::uint64_t seed,
                                             unsigned threads = 0);

/// Outcome counts from a plain (non-genie) SC simulation.
struct SimulationResult {
  std::uint64_t blocks = 0;
  std::uint64_t block_errors = 0;
  std::uint64_t symbol_errors = 0;
};

/// Transmits `blocks` uniform random messages and decodes them with SC.  A
/// block counts as an error when any unfrozen decision was a tie or decoded
/// differently from the truth; symbol_errors counts the unfrozen mismatches.
/// Deterministic for a fixed seed regardless of thread count.
SimulationResult simulate_sc(const CodeSpec& spec, const Channel& ch,
                             std::uint64_t blocks, std::uint64_t seed,
                             unsigned threads = 0);

/// Frozen set of size N - dimension: freezes the indices with the largest
/// values, keeping the `dimension` smallest (ties kept at smaller index).
std::vector<std::size_t> select_frozen(const ReliabilityProfile& profile,
                                       std::size_t dimension);

/// Sum of values over an index set (typically the unfrozen set).
double union_bound(const ReliabilityProfile& profile,
                   std::span<const std::size_t> indices);

struct BoundCurvePoint {
  std::size_t k = 0;
  double rate = 0.0;
  double bound = 0.0;
};

/// For every dimension k = 0..N: the union bound of the best-k selection,
/// i.e. the cumulative sum of the sorted values.
std::vector<BoundCurvePoint> bound_curve(const ReliabilityProfile& profile);

/// A selection of rows of G_RS(q,q)^{(x)n} together with the per-row weights
/// the rule is based on.
struct RowSelection {
  unsigned q = 0;
  unsigned levels = 0;
  std::vector<std::uint64_t> weights;
  std::vector<std::size_t> rows;  ///< selected indices, ascending
};

/// Reed-Muller rule: row i carries the monomial whose exponents are the
/// base-q digits of q^n - 1 - i; select total degree <= order.  weights hold
/// the degrees.
RowSelection rm_rows(unsigned q, unsigned levels, unsigned order);

/// Hyperbolic rule: row weight is prod_j (d_j + 1) over the base-q digits
/// d_j of i; select weight >= min_weight.  weights hold the products.
RowSelection hyperbolic_rows(unsigned q, unsigned levels, std::uint64_t min_weight);

/// The `count` rows with smallest total degree (ties toward smaller index);
/// useful for comparing selections of equal size.
std::vector<std::size_t> rm_first_rows(unsigned q, unsigned levels, std::size_t count);

/// Minimum Hamming weight over all nonzero combinations of the given rows.
/// Throws when q^rows exceeds the budget.
unsigned min_distance_bruteforce(const Field& f, const Matrix& rows,
                                 std::uint64_t budget = kDefaultEnumBudget);

/// CSV with "# key: value" comment metadata, an "index,prob" header and one
/// row per index; probabilities keep 17 significant digits so the values
/// round trip exactly.
void write_profile_csv(std::ostream& out, const ReliabilityProfile& profile,
                       const std::vector<std::string>& extra_comments = {});
ReliabilityProfile read_profile_csv(std::istream& in);

/// CSV "k,rate,union_bound", same comment conventions.
void write_curve_csv(std::ostream& out, const std::vector<BoundCurvePoint>& curve,
                     const std::vector<std::string>& extra_comments = {});

}  // namespace nbpolar

#endif
