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

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "nbpolar/analysis.hpp"
#include "nbpolar/gf.hpp"
#include "nbpolar/kernel.hpp"
#include "nbpolar/polar.hpp"

namespace {

using namespace nbpolar;

FieldPtr field_of_size(unsigned q) {
  switch (q) {
    case 2:
      return make_field(2, 1);
    case 4:
      return make_field(2, 2);
    case 16:
      return make_field(2, 4);
    case 256:
      return make_field(2, 8);
    default:
      return make_field(3, 1);
  }
}

void BM_FieldMul(benchmark::State& state) {
  auto f = field_of_size(static_cast<unsigned>(state.range(0)));
  const unsigned q = f->size();
  std::mt19937_64 rng(1);
  std::vector<Elem> a(1024), b(1024);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = static_cast<Elem>(rng() % q);
    b[i] = static_cast<Elem>(1 + rng() % (q - 1));
  }
  for (auto _ : state) {
    Elem acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
      acc = f->add(acc, f->mul(a[i], b[i]));
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.size()));
}
BENCHMARK(BM_FieldMul)->Arg(2)->Arg(4)->Arg(16)->Arg(256);

void BM_PolarTransform(benchmark::State& state) {
  const auto q = static_cast<unsigned>(state.range(0));
  const auto levels = static_cast<unsigned>(state.range(1));
  auto f = field_of_size(q);
  Kernel k = rs_kernel(f, q);
  std::size_t n = 1;
  for (unsigned i = 0; i < levels; ++i) n *= q;
  std::mt19937_64 rng(2);
  std::vector<Elem> u(n);
  for (auto& e : u) e = static_cast<Elem>(rng() % q);
  for (auto _ : state) {
    auto x = polar_transform(k, u, levels);
    benchmark::DoNotOptimize(x.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_PolarTransform)->Args({2, 10})->Args({4, 5})->Args({16, 2});

void BM_ScDecode(benchmark::State& state) {
  const auto q = static_cast<unsigned>(state.range(0));
  const auto levels = static_cast<unsigned>(state.range(1));
  const bool gauss = state.range(2) != 0;
  auto f = field_of_size(q);
  Kernel k = rs_kernel(f, q);
  CodeSpec spec(k, levels, {});
  auto ch = gauss ? Channel::biawgn(f, 0.9) : Channel::erasure(f, 0.3);
  std::mt19937_64 rng(3);
  std::vector<Elem> u(spec.block_length());
  for (auto& e : u) e = static_cast<Elem>(rng() % q);
  auto x = polar_transform(k, u, levels);
  auto obs = ch.likelihoods(ch.transmit(x, 17));
  for (auto _ : state) {
    auto res = sc_decode(spec, obs);
    benchmark::DoNotOptimize(res.decisions.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(spec.block_length()));
}
BENCHMARK(BM_ScDecode)
    ->Args({2, 8, 0})
    ->Args({2, 8, 1})
    ->Args({4, 3, 0})
    ->Args({4, 3, 1});

void BM_ErasureEvolve(benchmark::State& state) {
  const auto levels = static_cast<unsigned>(state.range(0));
  auto f = make_field(2, 2);
  Kernel k = rs_kernel(f, 4);
  for (auto _ : state) {
    auto prof = erasure_evolve(k, 0.5, levels);
    benchmark::DoNotOptimize(prof.values.data());
  }
}
BENCHMARK(BM_ErasureEvolve)->DenseRange(3, 7);

void BM_SimulateSc(benchmark::State& state) {
  auto f = make_field(2, 2);
  Kernel k = rs_kernel(f, 4);
  auto prof = erasure_evolve(k, 0.5, 3);
  auto frozen = select_frozen(prof, prof.values.size() / 4);
  CodeSpec spec(k, 3, frozen);
  auto ch = Channel::erasure(f, 0.5);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    auto res = simulate_sc(spec, ch, 10, seed++);
    benchmark::DoNotOptimize(res.block_errors);
  }
  state.SetItemsProcessed(state.iterations() * 10);
}
BENCHMARK(BM_SimulateSc);

}  // namespace

BENCHMARK_MAIN();
