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

#include "nbpolar/polar.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace nbpolar {
namespace {

std::size_t checked_pow(std::size_t base, unsigned e, std::size_t cap, const char* what) {
  std::size_t v = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (v > cap / base) throw std::invalid_argument(what);
    v *= base;
  }
  return v;
}

void check_symbols(const Field& f, std::span<const Elem> v, const char* what) {
  for (Elem e : v)
    if (e >= f.size()) throw std::invalid_argument(what);
}

// Recursive encoder step: multiply consecutive ell-blocks by G, regroup by
// output coordinate, then recurse into each of the ell sub-ranges.  Together
// with the natural-order input this realizes u R G^{(x)n}.
void transform_step(const Field& f, const Matrix& g, std::span<Elem> x,
                    std::span<Elem> scratch) {
  const std::size_t ell = g.rows;
  if (x.size() == 1) return;
  const std::size_t m = x.size() / ell;
  for (std::size_t t = 0; t < m; ++t) {
    for (std::size_t j = 0; j < ell; ++j) {
      Elem acc = 0;
      for (std::size_t i = 0; i < ell; ++i) {
        Elem ui = x[t * ell + i];
        if (ui) acc = f.add(acc, f.mul(ui, g(i, j)));
      }
      scratch[j * m + t] = acc;
    }
  }
  std::copy(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(x.size()),
            x.begin());
  for (std::size_t j = 0; j < ell; ++j)
    transform_step(f, g, x.subspan(j * m, m), scratch.subspan(0, m));
}

// Successive cancellation over the kernel tree.  Each internal node consumes
// ell input symbols per block; when a block completes, the products
// prefix * G are pushed down as the children's next inputs.  next() returns
// the exact likelihood vector of the upcoming input symbol given everything
// fed so far, with the remaining symbols of the current block marginalized
// uniformly.
class ScTree {
 public:
  ScTree(const Field& f, const Matrix& g, unsigned levels,
         const std::vector<LikelihoodVector>& obs)
      : f_(f), ell_(g.rows), q_(f.size()), obs_(obs) {
    srow_.resize(ell_ * q_ * ell_);
    for (std::size_t r = 0; r < ell_; ++r)
      for (unsigned c = 0; c < q_; ++c)
        for (std::size_t t = 0; t < ell_; ++t)
          srow_[(r * q_ + c) * ell_ + t] = f_.mul(static_cast<Elem>(c), g(r, t));
    wbuf_.resize((ell_ + 1) * ell_);
    scratch_.assign(levels + 1, std::vector<double>(q_));
    out_.resize(q_);
    root_ = build(levels, 0);
  }

  const std::vector<double>& next() {
    compute(root_, out_);
    return out_;
  }

  void feed(Elem u) { feed_node(root_, u); }

 private:
  struct Node {
    unsigned level = 0;
    std::size_t obs_begin = 0;
    unsigned fed = 0;
    std::vector<Elem> base;          // running prefix * G for the open block
    std::vector<double> child_like;  // ell x q, filled at block start
    std::vector<Node> children;
  };

  Node build(unsigned level, std::size_t obs_begin) {
    Node node;
    node.level = level;
    node.obs_begin = obs_begin;
    if (level > 0) {
      node.base.assign(ell_, 0);
      node.child_like.assign(ell_ * q_, 0.0);
      std::size_t stride = 1;
      for (unsigned v = 1; v < level; ++v) stride *= ell_;
      node.children.reserve(ell_);
      for (std::size_t j = 0; j < ell_; ++j)
        node.children.push_back(build(level - 1, obs_begin + j * stride));
    }
    return node;
  }

  void compute(Node& node, std::vector<double>& out) {
    if (node.level == 0) {
      const auto& l = obs_[node.obs_begin];
      double mx = 0.0;
      for (double v : l) mx = std::max(mx, v);
      if (!(mx > 0.0))
        throw std::invalid_argument("likelihood vector needs a positive entry");
      for (unsigned v = 0; v < q_; ++v) out[v] = l[v] / mx;
      return;
    }
    if (node.fed == 0) {
      auto& tmp = scratch_[node.level - 1];
      for (std::size_t j = 0; j < ell_; ++j) {
        compute(node.children[j], tmp);
        std::copy(tmp.begin(), tmp.end(), node.child_like.begin() + static_cast<std::ptrdiff_t>(j * q_));
      }
    }
    const unsigned s = node.fed;
    const double* cl = node.child_like.data();
    std::fill(out.begin(), out.end(), 0.0);
    for (unsigned c = 0; c < q_; ++c) {
      Elem* w0 = wbuf_.data();
      const Elem* sr = srow_.data() + (s * q_ + c) * ell_;
      for (std::size_t t = 0; t < ell_; ++t) w0[t] = f_.add(node.base[t], sr[t]);
      if (s + 1 == ell_) {
        double prod = 1.0;
        for (std::size_t j = 0; j < ell_; ++j) prod *= cl[j * q_ + w0[j]];
        out[c] += prod;
      } else {
        auto dfs = [&](auto&& self, std::size_t pos) -> void {
          const Elem* prev = wbuf_.data() + (pos - s - 1) * ell_;
          Elem* cur = wbuf_.data() + (pos - s) * ell_;
          for (unsigned v = 0; v < q_; ++v) {
            const Elem* add = srow_.data() + (pos * q_ + v) * ell_;
            for (std::size_t t = 0; t < ell_; ++t) cur[t] = f_.add(prev[t], add[t]);
            if (pos + 1 == ell_) {
              double prod = 1.0;
              for (std::size_t j = 0; j < ell_; ++j) prod *= cl[j * q_ + cur[j]];
              out[c] += prod;
            } else {
              self(self, pos + 1);
            }
          }
        };
        dfs(dfs, s + 1);
      }
    }
    double mx = *std::max_element(out.begin(), out.end());
    if (!(mx > 0.0)) {
      // A wrong guess earlier in the sequence can contradict the
      // observations outright; report an uninformative posterior so the
      // decision is flagged as a tie and decoding can finish.
      std::fill(out.begin(), out.end(), 1.0);
      return;
    }
    for (auto& v : out) v /= mx;
  }

  void feed_node(Node& node, Elem u) {
    if (node.level == 0) return;
    const Elem* sr = srow_.data() + (node.fed * q_ + u) * ell_;
    for (std::size_t t = 0; t < ell_; ++t) node.base[t] = f_.add(node.base[t], sr[t]);
    if (++node.fed == ell_) {
      for (std::size_t j = 0; j < ell_; ++j) feed_node(node.children[j], node.base[j]);
      node.fed = 0;
      std::fill(node.base.begin(), node.base.end(), 0);
    }
  }

  const Field& f_;
  std::size_t ell_;
  unsigned q_;
  const std::vector<LikelihoodVector>& obs_;
  std::vector<Elem> srow_;
  std::vector<Elem> wbuf_;
  std::vector<std::vector<double>> scratch_;
  std::vector<double> out_;
  Node root_;
};

}  // namespace

CodeSpec::CodeSpec(Kernel k, unsigned n, std::vector<std::size_t> frozen_set)
    : kernel(std::move(k)), levels(n), frozen(std::move(frozen_set)) {
  if (!kernel.field) throw std::invalid_argument("code spec needs a kernel field");
  if (levels < 1) throw std::invalid_argument("code spec needs at least one level");
  std::size_t n_len =
      checked_pow(kernel.ell, levels, kMaxBlockLength, "block length over limit");
  for (std::size_t i = 0; i < frozen.size(); ++i) {
    if (frozen[i] >= n_len) throw std::invalid_argument("frozen index out of range");
    if (i > 0 && frozen[i] <= frozen[i - 1])
      throw std::invalid_argument("frozen set must be strictly increasing");
  }
}

std::size_t CodeSpec::block_length() const {
  std::size_t v = 1;
  for (unsigned i = 0; i < levels; ++i) v *= kernel.ell;
  return v;
}

double CodeSpec::rate() const {
  return static_cast<double>(dimension()) / static_cast<double>(block_length());
}

std::vector<std::size_t> CodeSpec::unfrozen() const {
  std::vector<std::size_t> out;
  out.reserve(dimension());
  std::size_t fi = 0;
  for (std::size_t i = 0; i < block_length(); ++i) {
    if (fi < frozen.size() && frozen[fi] == i) {
      ++fi;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<std::size_t> bit_reversal_perm(std::size_t ell, unsigned n) {
  if (ell < 2) throw std::invalid_argument("bit reversal needs ell >= 2");
  std::size_t n_len = checked_pow(ell, n, kMaxBlockLength, "block length over limit");
  std::vector<std::size_t> perm(n_len);
  for (std::size_t i = 0; i < n_len; ++i) {
    std::size_t x = i, r = 0;
    for (unsigned d = 0; d < n; ++d) {
      r = r * ell + x % ell;
      x /= ell;
    }
    perm[i] = r;
  }
  return perm;
}

Matrix kron_power(const Kernel& k, unsigned n) {
  std::size_t n_len = checked_pow(k.ell, n, std::size_t{4096}, "kron_power limited to 4096");
  (void)n_len;
  Matrix out = identity(1);
  for (unsigned i = 0; i < n; ++i) out = kron(*k.field, out, k.matrix);
  return out;
}

std::vector<Elem> polar_transform(const Kernel& k, std::span<const Elem> u, unsigned n) {
  const Field& f = *k.field;
  if (n < 1) throw std::invalid_argument("polar transform needs n >= 1");
  std::size_t n_len = checked_pow(k.ell, n, kMaxBlockLength, "block length over limit");
  if (u.size() != n_len) throw std::invalid_argument("input length must be ell^n");
  check_symbols(f, u, "input symbol out of field range");
  std::vector<Elem> x(u.begin(), u.end());
  std::vector<Elem> scratch(n_len);
  transform_step(f, k.matrix, x, scratch);
  return x;
}

std::vector<Elem> encode(const CodeSpec& spec, std::span<const Elem> message) {
  if (message.size() != spec.dimension())
    throw std::invalid_argument("message length must equal code dimension");
  check_symbols(*spec.kernel.field, message, "message symbol out of field range");
  std::vector<Elem> u(spec.block_length(), 0);
  auto info = spec.unfrozen();
  for (std::size_t i = 0; i < info.size(); ++i) u[info[i]] = message[i];
  return polar_transform(spec.kernel, u, spec.levels);
}

Channel::Channel(FieldPtr field, Kind kind, double param)
    : field_(std::move(field)), kind_(kind), param_(param) {}

Channel Channel::erasure(FieldPtr field, double eps) {
  if (!(eps >= 0.0 && eps <= 1.0))
    throw std::invalid_argument("erasure probability must be in [0, 1]");
  return Channel(std::move(field), Kind::erasure, eps);
}

Channel Channel::biawgn(FieldPtr field, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw std::invalid_argument("awgn sigma must be positive");
  if (field->characteristic() != 2)
    throw std::invalid_argument("biawgn requires a field of characteristic two");
  return Channel(std::move(field), Kind::biawgn, sigma);
}

Channel Channel::parse(FieldPtr field, const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("channel spec must look like kind:param");
  std::string kind = text.substr(0, colon);
  double param = 0.0;
  try {
    param = std::stod(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("channel spec has a bad parameter: " + text);
  }
  if (kind == "erasure") return erasure(std::move(field), param);
  if (kind == "biawgn") return biawgn(std::move(field), param);
  throw std::invalid_argument("unknown channel kind: " + kind);
}

std::string Channel::describe() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s:%.17g",
                kind_ == Kind::erasure ? "erasure" : "biawgn", param_);
  return buf;
}

std::vector<int> Channel::symbol_bits(const Field& f, Elem x) {
  if (f.characteristic() != 2)
    throw std::invalid_argument("bit map defined for characteristic two only");
  unsigned m = f.extension_degree();
  std::vector<int> bits(m);
  for (unsigned j = 0; j < m; ++j) bits[j] = (x >> (m - 1 - j)) & 1;
  return bits;
}

std::vector<Observation> Channel::transmit(std::span<const Elem> codeword,
                                           std::uint64_t seed) const {
  check_symbols(*field_, codeword, "codeword symbol out of field range");
  std::mt19937_64 rng(seed);
  std::vector<Observation> out(codeword.size());
  if (kind_ == Kind::erasure) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t i = 0; i < codeword.size(); ++i) {
      if (unit(rng) < param_) {
        out[i].erased = true;
      } else {
        out[i].symbol = codeword[i];
      }
    }
  } else {
    std::normal_distribution<double> noise(0.0, param_);
    const unsigned m = field_->extension_degree();
    for (std::size_t i = 0; i < codeword.size(); ++i) {
      auto bits = symbol_bits(*field_, codeword[i]);
      out[i].samples.resize(m);
      for (unsigned j = 0; j < m; ++j)
        out[i].samples[j] = (bits[j] ? -1.0 : 1.0) + noise(rng);
    }
  }
  return out;
}

LikelihoodVector Channel::likelihoods(const Observation& obs) const {
  const unsigned q = field_->size();
  LikelihoodVector l(q, 0.0);
  if (kind_ == Kind::erasure) {
    if (obs.erased) {
      std::fill(l.begin(), l.end(), 1.0);
    } else {
      l[obs.symbol] = 1.0;
    }
    return l;
  }
  const unsigned m = field_->extension_degree();
  if (obs.samples.size() != m)
    throw std::invalid_argument("observation sample count mismatch");
  // per-bit metrics, scaled so the larger of the pair is 1
  std::vector<double> bit_like(2 * m);
  const double inv2s2 = 1.0 / (2.0 * param_ * param_);
  for (unsigned j = 0; j < m; ++j) {
    double y = obs.samples[j];
    double e0 = -(y - 1.0) * (y - 1.0) * inv2s2;
    double e1 = -(y + 1.0) * (y + 1.0) * inv2s2;
    double mx = std::max(e0, e1);
    bit_like[2 * j] = std::exp(e0 - mx);
    bit_like[2 * j + 1] = std::exp(e1 - mx);
  }
  for (unsigned x = 0; x < q; ++x) {
    double prod = 1.0;
    for (unsigned j = 0; j < m; ++j)
      prod *= bit_like[2 * j + ((x >> (m - 1 - j)) & 1)];
    l[x] = prod;
  }
  return l;
}

std::vector<LikelihoodVector> Channel::likelihoods(std::span<const Observation> obs) const {
  std::vector<LikelihoodVector> out;
  out.reserve(obs.size());
  for (const auto& o : obs) out.push_back(likelihoods(o));
  return out;
}

ScResult sc_decode(const CodeSpec& spec, const std::vector<LikelihoodVector>& obs,
                   const ScOptions& options) {
  const Field& f = *spec.kernel.field;
  const unsigned q = f.size();
  const std::size_t n_len = spec.block_length();
  if (n_len > kMaxDecodeLength)
    throw std::invalid_argument("block length exceeds decoder limit");
  checked_pow(q, static_cast<unsigned>(spec.kernel.ell), std::size_t{65536},
              "sc decoding cost q^ell exceeds 65536");
  if (obs.size() != n_len)
    throw std::invalid_argument("observation count must equal block length");
  for (const auto& l : obs)
    if (l.size() != q) throw std::invalid_argument("likelihood vector has wrong size");
  if (!options.genie.empty() && options.genie.size() != n_len)
    throw std::invalid_argument("genie input must cover the whole block");
  if (!options.genie.empty()) check_symbols(f, options.genie, "genie symbol out of range");

  std::vector<char> is_frozen(n_len, 0);
  for (std::size_t idx : spec.frozen) is_frozen[idx] = 1;

  ScTree tree(f, spec.kernel.matrix, spec.levels, obs);
  ScResult res;
  res.u_hat.resize(n_len);
  res.decisions.resize(n_len);
  if (options.record_posteriors) res.posteriors.resize(n_len);

  for (std::size_t i = 0; i < n_len; ++i) {
    const auto& post = tree.next();
    SymbolDecision d;
    double best = -1.0;
    for (unsigned v = 0; v < q; ++v) {
      if (post[v] > best) {
        best = post[v];
        d.argmax = static_cast<Elem>(v);
      }
    }
    for (unsigned v = 0; v < q; ++v) {
      if (v != d.argmax && post[v] == best) {
        d.tie = true;
        break;
      }
    }
    d.fed = !options.genie.empty() ? options.genie[i]
                                   : (is_frozen[i] ? static_cast<Elem>(0) : d.argmax);
    if (options.record_posteriors) {
      double sum = 0.0;
      for (double v : post) sum += v;
      auto& slot = res.posteriors[i];
      slot.assign(post.begin(), post.end());
      for (double& v : slot) v /= sum;
    }
    res.u_hat[i] = d.fed;
    res.decisions[i] = d;
    tree.feed(d.fed);
  }
  return res;
}

void write_frozen_set(std::ostream& out, const CodeSpec& spec) {
  out << spec.kernel.field->size() << ' ' << spec.kernel.ell << ' ' << spec.levels
      << '\n';
  out << spec.kernel.label << '\n';
  for (std::size_t i = 0; i < spec.frozen.size(); ++i) {
    if (i) out << ' ';
    out << spec.frozen[i];
  }
  out << '\n';
}

CodeSpec read_frozen_set(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (lines.size() < 3 && std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    lines.push_back(line);
  }
  if (lines.size() < 2) throw std::runtime_error("truncated frozen set file");
  unsigned q = 0;
  std::size_t ell = 0;
  unsigned levels = 0;
  {
    std::istringstream head(lines[0]);
    if (!(head >> q >> ell >> levels))
      throw std::runtime_error("bad frozen set header");
  }
  std::string label = lines[1];
  while (!label.empty() && (label.back() == '\r' || label.back() == ' '))
    label.pop_back();
  std::vector<std::size_t> frozen;
  if (lines.size() == 3) {
    std::istringstream body(lines[2]);
    std::size_t idx = 0;
    while (body >> idx) frozen.push_back(idx);
  }
  Kernel k = kernel_by_label(label, q, ell);
  return CodeSpec(std::move(k), levels, std::move(frozen));
}

}  // namespace nbpolar
