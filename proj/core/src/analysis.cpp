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

#include "nbpolar/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "nbpolar/rng.hpp"

namespace nbpolar {
namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> binomials(std::size_t ell) {
  std::vector<double> c(ell + 1);
  c[0] = 1.0;
  for (std::size_t i = 1; i <= ell; ++i)
    c[i] = c[i - 1] * static_cast<double>(ell - i + 1) / static_cast<double>(i);
  return c;
}

std::vector<std::size_t> digits_base_q(std::size_t value, unsigned q, unsigned n) {
  std::vector<std::size_t> d(n);
  for (unsigned j = 0; j < n; ++j) {
    d[j] = value % q;
    value /= q;
  }
  return d;
}

std::size_t checked_block(unsigned q, unsigned n) {
  std::size_t v = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (v > kMaxBlockLength / q) throw std::invalid_argument("block length over limit");
    v *= q;
  }
  return v;
}

}  // namespace

ReliabilityProfile erasure_evolve(const Kernel& k, double eps, unsigned levels) {
  if (!(eps >= 0.0 && eps <= 1.0))
    throw std::invalid_argument("erasure probability must be in [0, 1]");
  if (levels < 1) throw std::invalid_argument("erasure recursion needs levels >= 1");
  if (!k.mds_nested)
    throw std::invalid_argument(
        "exact erasure recursion requires an MDS-nested kernel (compute partial "
        "distances first, or use Monte-Carlo estimation)");
  const std::size_t ell = k.ell;
  {
    std::size_t v = 1;
    for (unsigned i = 0; i < levels; ++i) {
      if (v > kMaxBlockLength / ell)
        throw std::invalid_argument("block length over limit");
      v *= ell;
    }
  }

  const auto binom = binomials(ell);
  std::vector<double> cur{eps};
  std::vector<double> next;
  std::vector<double> ppow(ell + 1), qpow(ell + 1);
  for (unsigned lvl = 0; lvl < levels; ++lvl) {
    next.assign(cur.size() * ell, 0.0);
    for (std::size_t a = 0; a < cur.size(); ++a) {
      const double p = cur[a];
      const double oneminus = 1.0 - p;
      ppow[0] = 1.0;
      qpow[0] = 1.0;
      for (std::size_t i = 1; i <= ell; ++i) {
        ppow[i] = ppow[i - 1] * p;
        qpow[i] = qpow[i - 1] * oneminus;
      }
      // after the step for index b, tail = sum_{i=b+1}^{ell} pmf(i)
      double tail = 0.0;
      for (std::size_t b = ell; b-- > 0;) {
        tail += binom[b + 1] * ppow[b + 1] * qpow[ell - b - 1];
        next[a * ell + b] = std::min(tail, 1.0);
      }
    }
    std::swap(cur, next);
  }

  ReliabilityProfile profile;
  profile.q = k.field->size();
  profile.ell = ell;
  profile.levels = levels;
  profile.kernel_label = k.label;
  profile.channel = "erasure:" + format_double(eps);
  profile.provenance = "exact-erasure";
  profile.values = std::move(cur);
  return profile;
}

ReliabilityProfile estimate_reliabilities_mc(const CodeSpec& spec, const Channel& ch,
                                             std::uint64_t trials, std::uint64_t seed,
                                             unsigned threads) {
  if (!spec.frozen.empty())
    throw std::invalid_argument("reliability estimation expects an empty frozen set");
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  if (ch.field().size() != spec.kernel.field->size())
    throw std::invalid_argument("channel and kernel field sizes differ");
  const std::size_t n_len = spec.block_length();
  if (n_len > kMaxDecodeLength)
    throw std::invalid_argument("block length exceeds decoder limit");
  const unsigned q = spec.kernel.field->size();

  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(threads), trials));
  std::vector<std::vector<std::uint64_t>> counts(workers,
                                                 std::vector<std::uint64_t>(n_len, 0));

  auto run_range = [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    auto& local = counts[w];
    std::vector<Elem> u(n_len);
    for (std::uint64_t t = begin; t < end; ++t) {
      std::mt19937_64 rng(derive_seed(seed, 2 * t));
      for (auto& e : u) e = static_cast<Elem>(rng() % q);
      auto x = polar_transform(spec.kernel, u, spec.levels);
      auto obs = ch.likelihoods(ch.transmit(x, derive_seed(seed, 2 * t + 1)));
      ScOptions opt;
      opt.genie = u;
      auto res = sc_decode(spec, obs, opt);
      for (std::size_t i = 0; i < n_len; ++i) {
        const auto& d = res.decisions[i];
        if (d.tie || d.argmax != u[i]) ++local[i];
      }
    }
  };

  if (workers <= 1) {
    run_range(0, 0, trials);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::uint64_t chunk = (trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = w * chunk;
      const std::uint64_t end = std::min<std::uint64_t>(begin + chunk, trials);
      pool.emplace_back([&, w, begin, end] {
        try {
          run_range(w, begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& err : errors)
      if (err) std::rethrow_exception(err);
  }

  ReliabilityProfile profile;
  profile.q = q;
  profile.ell = spec.kernel.ell;
  profile.levels = spec.levels;
  profile.kernel_label = spec.kernel.label;
  profile.channel = ch.describe();
  profile.provenance = "monte-carlo";
  profile.trials = trials;
  profile.seed = seed;
  profile.values.resize(n_len);
  for (std::size_t i = 0; i < n_len; ++i) {
    std::uint64_t total = 0;
    for (unsigned w = 0; w < workers; ++w) total += counts[w][i];
    profile.values[i] = static_cast<double>(total) / static_cast<double>(trials);
  }
  return profile;
}

SimulationResult simulate_sc(const CodeSpec& spec, const Channel& ch,
                             std::uint64_t blocks, std::uint64_t seed,
                             unsigned threads) {
  if (blocks < 1) throw std::invalid_argument("need at least one block");
  if (ch.field().size() != spec.kernel.field->size())
    throw std::invalid_argument("channel and kernel field sizes differ");
  const std::size_t n_len = spec.block_length();
  if (n_len > kMaxDecodeLength)
    throw std::invalid_argument("block length exceeds decoder limit");
  const unsigned q = spec.kernel.field->size();
  const auto info = spec.unfrozen();

  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(threads), blocks));
  std::vector<SimulationResult> partial(workers);

  auto run_range = [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    auto& local = partial[w];
    std::vector<Elem> msg(info.size());
    for (std::uint64_t b = begin; b < end; ++b) {
      std::mt19937_64 rng(derive_seed(seed, 2 * b));
      for (auto& e : msg) e = static_cast<Elem>(rng() % q);
      auto x = encode(spec, msg);
      auto obs = ch.likelihoods(ch.transmit(x, derive_seed(seed, 2 * b + 1)));
      auto res = sc_decode(spec, obs);
      bool block_bad = false;
      for (std::size_t j = 0; j < info.size(); ++j) {
        const auto& d = res.decisions[info[j]];
        if (d.tie) block_bad = true;
        if (res.u_hat[info[j]] != msg[j]) {
          block_bad = true;
          ++local.symbol_errors;
        }
      }
      if (block_bad) ++local.block_errors;
      ++local.blocks;
    }
  };

  if (workers <= 1) {
    run_range(0, 0, blocks);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::uint64_t chunk = (blocks + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = w * chunk;
      const std::uint64_t end = std::min<std::uint64_t>(begin + chunk, blocks);
      pool.emplace_back([&, w, begin, end] {
        try {
          run_range(w, begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& err : errors)
      if (err) std::rethrow_exception(err);
  }

  SimulationResult total;
  for (const auto& part : partial) {
    total.blocks += part.blocks;
    total.block_errors += part.block_errors;
    total.symbol_errors += part.symbol_errors;
  }
  return total;
}

std::vector<std::size_t> select_frozen(const ReliabilityProfile& profile,
                                       std::size_t dimension) {
  const std::size_t n_len = profile.values.size();
  if (dimension > n_len)
    throw std::invalid_argument("dimension exceeds block length");
  std::vector<std::size_t> order(n_len);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return profile.values[a] < profile.values[b];
  });
  std::vector<std::size_t> frozen(order.begin() + static_cast<std::ptrdiff_t>(dimension),
                                  order.end());
  std::sort(frozen.begin(), frozen.end());
  return frozen;
}

double union_bound(const ReliabilityProfile& profile,
                   std::span<const std::size_t> indices) {
  double sum = 0.0;
  for (std::size_t idx : indices) {
    if (idx >= profile.values.size())
      throw std::invalid_argument("index out of profile range");
    sum += profile.values[idx];
  }
  return sum;
}

std::vector<BoundCurvePoint> bound_curve(const ReliabilityProfile& profile) {
  std::vector<double> sorted = profile.values;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n_len = sorted.size();
  std::vector<BoundCurvePoint> curve(n_len + 1);
  double acc = 0.0;
  curve[0] = {0, 0.0, 0.0};
  for (std::size_t k = 1; k <= n_len; ++k) {
    acc += sorted[k - 1];
    curve[k] = {k, static_cast<double>(k) / static_cast<double>(n_len), acc};
  }
  return curve;
}

RowSelection rm_rows(unsigned q, unsigned levels, unsigned order) {
  if (q < 2 || levels < 1) throw std::invalid_argument("rm rows needs q >= 2, n >= 1");
  if (order > (q - 1) * levels)
    throw std::invalid_argument("rm order exceeds (q-1) * n");
  const std::size_t n_len = checked_block(q, levels);
  RowSelection sel;
  sel.q = q;
  sel.levels = levels;
  sel.weights.resize(n_len);
  for (std::size_t i = 0; i < n_len; ++i) {
    auto d = digits_base_q(n_len - 1 - i, q, levels);
    std::uint64_t degree = std::accumulate(d.begin(), d.end(), std::uint64_t{0});
    sel.weights[i] = degree;
    if (degree <= order) sel.rows.push_back(i);
  }
  return sel;
}

RowSelection hyperbolic_rows(unsigned q, unsigned levels, std::uint64_t min_weight) {
  if (q < 2 || levels < 1)
    throw std::invalid_argument("hyperbolic rows needs q >= 2, n >= 1");
  if (min_weight < 1) throw std::invalid_argument("hyperbolic weight threshold >= 1");
  const std::size_t n_len = checked_block(q, levels);
  RowSelection sel;
  sel.q = q;
  sel.levels = levels;
  sel.weights.resize(n_len);
  for (std::size_t i = 0; i < n_len; ++i) {
    std::uint64_t w = 1;
    for (std::size_t d : digits_base_q(i, q, levels)) w *= d + 1;
    sel.weights[i] = w;
    if (w >= min_weight) sel.rows.push_back(i);
  }
  return sel;
}

std::vector<std::size_t> rm_first_rows(unsigned q, unsigned levels, std::size_t count) {
  const std::size_t n_len = checked_block(q, levels);
  if (count > n_len) throw std::invalid_argument("count exceeds block length");
  RowSelection all = rm_rows(q, levels, (q - 1) * levels);
  std::vector<std::size_t> order(n_len);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return all.weights[a] < all.weights[b];
  });
  order.resize(count);
  return order;
}

unsigned min_distance_bruteforce(const Field& f, const Matrix& rows,
                                 std::uint64_t budget) {
  if (rows.rows == 0) throw std::invalid_argument("need at least one row");
  const unsigned q = f.size();
  {
    std::uint64_t combos = 1;
    for (std::size_t i = 0; i < rows.rows; ++i) {
      if (combos > budget / q)
        throw std::runtime_error("minimum distance enumeration over budget");
      combos *= q;
    }
  }
  const std::size_t n = rows.cols;
  unsigned best = std::numeric_limits<unsigned>::max();
  std::vector<Elem> acc((rows.rows + 1) * n, 0);
  auto dfs = [&](auto&& self, std::size_t row, bool nonzero) -> void {
    const Elem* prev = acc.data() + row * n;
    Elem* cur = acc.data() + (row + 1) * n;
    for (unsigned c = 0; c < q; ++c) {
      for (std::size_t t = 0; t < n; ++t)
        cur[t] = c ? f.add(prev[t], f.mul(static_cast<Elem>(c), rows(row, t))) : prev[t];
      bool nz = nonzero || c != 0;
      if (row + 1 == rows.rows) {
        if (nz) {
          auto w = static_cast<unsigned>(hamming_weight(std::span<const Elem>(cur, n)));
          if (w < best) best = w;
        }
      } else {
        self(self, row + 1, nz);
      }
    }
  };
  dfs(dfs, 0, false);
  return best;
}

void write_profile_csv(std::ostream& out, const ReliabilityProfile& profile,
                       const std::vector<std::string>& extra_comments) {
  out << "# nbpolar profile\n";
  out << "# q: " << profile.q << '\n';
  out << "# ell: " << profile.ell << '\n';
  out << "# levels: " << profile.levels << '\n';
  out << "# kernel: " << profile.kernel_label << '\n';
  out << "# channel: " << profile.channel << '\n';
  out << "# provenance: " << profile.provenance << '\n';
  out << "# trials: " << profile.trials << '\n';
  out << "# seed: " << profile.seed << '\n';
  for (const auto& line : extra_comments) out << "# " << line << '\n';
  out << "index,prob\n";
  for (std::size_t i = 0; i < profile.values.size(); ++i)
    out << i << ',' << format_double(profile.values[i]) << '\n';
}

ReliabilityProfile read_profile_csv(std::istream& in) {
  ReliabilityProfile profile;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      std::size_t start = body.find_first_not_of(' ');
      if (start == std::string::npos) continue;
      body = body.substr(start);
      auto colon = body.find(": ");
      if (colon == std::string::npos) continue;
      std::string key = body.substr(0, colon);
      std::string value = body.substr(colon + 2);
      if (key == "q") profile.q = static_cast<unsigned>(std::stoul(value));
      else if (key == "ell") profile.ell = std::stoul(value);
      else if (key == "levels") profile.levels = static_cast<unsigned>(std::stoul(value));
      else if (key == "kernel") profile.kernel_label = value;
      else if (key == "channel") profile.channel = value;
      else if (key == "provenance") profile.provenance = value;
      else if (key == "trials") profile.trials = std::stoull(value);
      else if (key == "seed") profile.seed = std::stoull(value);
      continue;
    }
    if (line == "index,prob") {
      have_header = true;
      break;
    }
    throw std::runtime_error("profile csv: expected 'index,prob' header");
  }
  if (!have_header) throw std::runtime_error("profile csv: missing header");
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("profile csv: bad row");
    std::size_t idx = std::stoull(line.substr(0, comma));
    if (idx != profile.values.size())
      throw std::runtime_error("profile csv: indices must be consecutive from zero");
    profile.values.push_back(std::stod(line.substr(comma + 1)));
  }
  return profile;
}

void write_curve_csv(std::ostream& out, const std::vector<BoundCurvePoint>& curve,
                     const std::vector<std::string>& extra_comments) {
  for (const auto& line : extra_comments) out << "# " << line << '\n';
  out << "k,rate,union_bound\n";
  for (const auto& pt : curve)
    out << pt.k << ',' << format_double(pt.rate) << ',' << format_double(pt.bound)
        << '\n';
}

}  // namespace nbpolar
