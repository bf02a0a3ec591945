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

#ifndef NBPOLAR_KERNEL_HPP
#define NBPOLAR_KERNEL_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nbpolar/gf.hpp"

namespace nbpolar {

/// An invertible ell-by-ell polarization kernel over GF(q), plus lazily
/// cached distance data.
///
/// partial_distance[i] is the minimum Hamming distance from row i to the
/// span of rows i+1, ..., ell-1, equivalently the minimum weight over the
/// coset c * row_i + <later rows> with c != 0.  mds_nested means every
/// trailing row block spans an MDS code (true for Reed-Solomon kernels),
/// which is what the exact erasure recursion relies on.
struct Kernel {
  FieldPtr field;
  std::size_t ell = 0;
  Matrix matrix;
  std::string label = "custom";
  std::optional<std::vector<unsigned>> partial_distances;
  std::optional<double> exponent;
  bool mds_nested = false;
};

/// Reed-Solomon kernel: row j holds the evaluations of X^{ell-1-j} at the
/// points q-1, q-2, ..., q-ell (integer encoding).  Requires 2 <= ell <= q.
Kernel rs_kernel(FieldPtr field, std::size_t ell);

/// The 2x2 kernel [[1,0],[1,alpha]] over GF(4).
Kernel rs_kernel_modified_4_2(FieldPtr field);

/// Evaluation data for the curve x1^{r+1} = x2^r + x2 over GF(r^2): the r^3
/// affine rational points and the r^3 smallest-pole-order monomial basis
/// functions X1^a X2^b (a < r^2, b < r), pole order rho = a*r + b*(r+1),
/// listed in decreasing rho.
struct HermitianBasis {
  unsigned r = 0;
  FieldPtr field;
  std::vector<std::pair<Elem, Elem>> points;
  std::vector<std::pair<unsigned, unsigned>> monomials;
  std::vector<unsigned> pole_orders;
};

/// Requires r to be a prime power with r^2 <= 256.
HermitianBasis hermitian_basis(unsigned r);

/// Kernel of size ell = r^3 whose row j evaluates the j-th basis monomial at
/// every rational point.  Requires r^3 <= 512.
Kernel hermitian_kernel(unsigned r);

/// Wraps an arbitrary matrix; throws if it is not square and invertible.
Kernel custom_kernel(FieldPtr field, Matrix m, std::string label = "custom");

inline constexpr std::uint64_t kDefaultEnumBudget = std::uint64_t{1} << 20;

/// Exhaustive partial-distance computation, cost (q-1) * q^{ell-1-i} per
/// index.  Prefer the caching wrapper below.
std::vector<unsigned> brute_force_partial_distances(const Kernel& k);

/// Returns the cached profile, computing (and caching) it by brute force if
/// needed.  Throws std::runtime_error when q^{ell-1} exceeds the budget.
const std::vector<unsigned>& partial_distances(Kernel& k,
                                               std::uint64_t budget = kDefaultEnumBudget);

/// (1/ell) * sum_i log_ell D_i.
double exponent_from_distances(std::span<const unsigned> distances, std::size_t ell);

/// Exponent of the kernel, cached; computes partial distances if needed.
double exponent(Kernel& k, std::uint64_t budget = kDefaultEnumBudget);

/// Closed form log(ell!) / (ell * log ell) for full-size RS kernels.
double rs_exponent_formula(std::size_t ell);

/// Gilbert-Varshamov style lower bound on the i-th partial distance over
/// GF(q): the largest D with sum_{j<D} C(ell,j) (q-1)^j < q^{i+1}.
unsigned gv_partial_distance(unsigned q, unsigned ell, unsigned i);
std::vector<unsigned> gv_partial_distances(unsigned q, unsigned ell);

/// Exponent lower bound obtained by feeding the GV profile through
/// exponent_from_distances.
double gv_lower_bound(unsigned q, unsigned ell);

/// Text form: header line "q ell label", then ell rows of ell integers.
std::string kernel_to_text(const Kernel& k);
Kernel kernel_from_text(std::istream& in);

/// Rebuilds a named kernel ("rs", "modified-rs42", "hermitian") from its
/// label and dimensions.  Throws std::invalid_argument for unknown labels.
Kernel kernel_by_label(const std::string& label, unsigned q, std::size_t ell);

/// Factors q into (p, m) with p prime; throws if q is not a prime power.
std::pair<unsigned, unsigned> factor_prime_power(unsigned q);

}  // namespace nbpolar

#endif
