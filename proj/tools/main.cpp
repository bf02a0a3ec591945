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

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nbpolar/analysis.hpp"
#include "nbpolar/kernel.hpp"
#include "nbpolar/polar.hpp"
#include "nbpolar/version.hpp"

namespace {

using namespace nbpolar;

struct KernelArgs {
  std::string field;
  std::string kind = "rs";
  unsigned ell = 0;
  unsigned r = 0;
};

void add_kernel_options(CLI::App* cmd, KernelArgs& args) {
  cmd->add_option("--field", args.field, "field as p,m (prime and extension degree)")
      ->required();
  cmd->add_option("--kind", args.kind, "kernel family (default rs)")
      ->check(CLI::IsMember({"rs", "hermitian", "modified-rs42"}));
  cmd->add_option("--ell", args.ell, "kernel size, rs kernels only");
  cmd->add_option("--r", args.r, "curve parameter, hermitian kernels only");
}

FieldPtr parse_field(const std::string& text) {
  unsigned p = 0;
  unsigned m = 1;
  try {
    auto comma = text.find(',');
    if (comma == std::string::npos) {
      p = static_cast<unsigned>(std::stoul(text));
    } else {
      p = static_cast<unsigned>(std::stoul(text.substr(0, comma)));
      m = static_cast<unsigned>(std::stoul(text.substr(comma + 1)));
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("--field expects p,m with a prime p");
  }
  return make_field(p, m);
}

Kernel build_kernel(const KernelArgs& a) {
  auto f = parse_field(a.field);
  if (a.kind == "rs") {
    if (a.ell == 0) throw std::invalid_argument("rs kernels need --ell");
    if (a.r != 0) throw std::invalid_argument("--r only applies to hermitian kernels");
    return rs_kernel(f, a.ell);
  }
  if (a.kind == "hermitian") {
    if (a.r == 0) throw std::invalid_argument("hermitian kernels need --r");
    if (a.ell != 0) throw std::invalid_argument("--ell only applies to rs kernels");
    Kernel k = hermitian_kernel(a.r);
    if (k.field->size() != f->size())
      throw std::invalid_argument(
          "hermitian kernels with --r R are defined over GF(R^2); fix --field");
    return k;
  }
  if (f->size() != 4)
    throw std::invalid_argument("modified-rs42 is defined over GF(4), use --field 2,2");
  if (a.ell != 0 && a.ell != 2)
    throw std::invalid_argument("modified-rs42 has fixed size 2");
  return rs_kernel_modified_4_2(f);
}

std::string format_fixed6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string format_val(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string kernel_command_text(const KernelArgs& a, const Field& f) {
  std::ostringstream out;
  out << "--field " << f.characteristic() << ',' << f.extension_degree() << " --kind "
      << a.kind;
  if (a.kind == "rs") out << " --ell " << a.ell;
  if (a.kind == "hermitian") out << " --r " << a.r;
  return out.str();
}

std::vector<std::string> manifest_lines(const std::string& command,
                                        const std::vector<std::string>& outputs) {
  std::vector<std::string> lines;
  lines.push_back(std::string("nbpolar ") + NBPOLAR_VERSION_STRING);
  lines.push_back("command: " + command);
  if (!outputs.empty()) {
    std::string joined = "outputs:";
    for (const auto& path : outputs) joined += " " + path;
    lines.push_back(joined);
  }
  return lines;
}

/// Writes through a temporary file in the same directory so a failure never
/// leaves a partial output behind.
void write_atomic(const std::string& path,
                  const std::function<void(std::ostream&)>& body) {
  const std::string tmp = path + ".tmp";
  try {
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
      body(out);
      out.flush();
      if (!out) throw std::runtime_error("writing " + tmp + " failed");
    }
    std::filesystem::rename(tmp, path);
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
    throw;
  }
}

void emit(const std::string& out_path, const std::function<void(std::ostream&)>& body) {
  if (out_path.empty()) {
    body(std::cout);
  } else {
    write_atomic(out_path, body);
  }
}

int run_kernel(const KernelArgs& args) {
  Kernel k = build_kernel(args);
  std::cout << kernel_to_text(k);
  try {
    const auto& dist = partial_distances(k);
    std::cout << "partial distances:";
    for (auto d : dist) std::cout << ' ' << d;
    std::cout << '\n';
    std::cout << "exponent: " << format_fixed6(exponent(k)) << '\n';
  } catch (const std::exception& e) {
    std::cout << "partial distances: unavailable (" << e.what() << ")\n";
  }
  try {
    std::cout << "gv bound: "
              << format_fixed6(gv_lower_bound(k.field->size(),
                                              static_cast<unsigned>(k.ell)))
              << '\n';
  } catch (const std::exception& e) {
    std::cout << "gv bound: unavailable (" << e.what() << ")\n";
  }
  return 0;
}

struct ProfileArgs {
  KernelArgs kernel;
  unsigned levels = 0;
  std::string channel;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  bool seed_set = false;
  bool trials_set = false;
  bool force_mc = false;
  unsigned threads = 0;
};

void add_profile_options(CLI::App* cmd, ProfileArgs& args) {
  add_kernel_options(cmd, args.kernel);
  cmd->add_option("--n", args.levels, "number of kernel levels")->required();
  cmd->add_option("--channel", args.channel, "erasure:EPS or biawgn:SIGMA")->required();
  cmd->add_option("--seed", args.seed, "master seed for Monte-Carlo estimation");
  cmd->add_option("--trials", args.trials, "Monte-Carlo trials per index");
  cmd->add_flag("--mc", args.force_mc,
                "use Monte-Carlo estimation even when the exact recursion applies");
  cmd->add_option("--threads", args.threads,
                  "worker threads, 0 means the hardware count");
}

struct BuiltProfile {
  Kernel kernel;
  Channel channel;
  ReliabilityProfile profile;
  bool used_mc = false;
};

BuiltProfile build_profile(CLI::App* cmd, const ProfileArgs& a) {
  Kernel k = build_kernel(a.kernel);
  Channel ch = Channel::parse(k.field, a.channel);
  const bool seed_set = cmd->count("--seed") > 0;
  const bool trials_set = cmd->count("--trials") > 0;

  const bool exact = ch.kind() == Channel::Kind::erasure && !a.force_mc && k.mds_nested;
  if (ch.kind() == Channel::Kind::erasure && !a.force_mc && !k.mds_nested)
    throw std::invalid_argument(
        "no exact erasure recursion for this kernel; rerun with --mc plus --trials "
        "and --seed");

  ReliabilityProfile profile;
  if (exact) {
    profile = erasure_evolve(k, ch.param(), a.levels);
  } else {
    if (!trials_set || !seed_set)
      throw std::invalid_argument(
          "Monte-Carlo estimation needs explicit --trials and --seed");
    CodeSpec full(k, a.levels, {});
    profile = estimate_reliabilities_mc(full, ch, a.trials, a.seed, a.threads);
  }
  return BuiltProfile{std::move(k), std::move(ch), std::move(profile), !exact};
}

std::string profile_command_text(const std::string& sub, const ProfileArgs& a,
                                 const BuiltProfile& built) {
  std::ostringstream out;
  out << sub << ' ' << kernel_command_text(a.kernel, *built.kernel.field) << " --n "
      << a.levels << " --channel " << built.channel.describe();
  if (built.used_mc) {
    out << " --trials " << a.trials << " --seed " << a.seed;
    if (built.channel.kind() == Channel::Kind::erasure) out << " --mc";
  }
  return out.str();
}

int run_construct(CLI::App* cmd, const ProfileArgs& pa, double rate, long long dim_opt,
                  const std::string& out_prefix) {
  const bool rate_set = cmd->count("--rate") > 0;
  const bool dim_set = cmd->count("-k") > 0;
  if (rate_set == dim_set)
    throw std::invalid_argument("give exactly one of --rate and -k");

  BuiltProfile built = build_profile(cmd, pa);
  const std::size_t n_len = built.profile.values.size();

  std::size_t dim = 0;
  if (dim_set) {
    if (dim_opt < 0 || static_cast<std::size_t>(dim_opt) > n_len)
      throw std::invalid_argument("-k must be between 0 and the block length");
    dim = static_cast<std::size_t>(dim_opt);
  } else {
    if (!(rate >= 0.0 && rate <= 1.0))
      throw std::invalid_argument("--rate must be in [0, 1]");
    dim = static_cast<std::size_t>(
        std::llround(rate * static_cast<double>(n_len)));
  }

  auto frozen = select_frozen(built.profile, dim);
  CodeSpec spec(built.kernel, pa.levels, frozen);

  const std::string frozen_path = out_prefix + ".frozen.txt";
  const std::string profile_path = out_prefix + ".profile.csv";
  std::string command = profile_command_text("construct", pa, built);
  command += " -k " + std::to_string(dim) + " --out " + out_prefix;
  auto comments = manifest_lines(command, {frozen_path, profile_path});

  const std::string frozen_tmp = frozen_path + ".tmp";
  const std::string profile_tmp = profile_path + ".tmp";
  try {
    {
      std::ofstream out(frozen_tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw std::runtime_error("cannot open " + frozen_tmp + " for writing");
      for (const auto& line : comments) out << "# " << line << '\n';
      write_frozen_set(out, spec);
      out.flush();
      if (!out) throw std::runtime_error("writing " + frozen_tmp + " failed");
    }
    {
      std::ofstream out(profile_tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw std::runtime_error("cannot open " + profile_tmp + " for writing");
      write_profile_csv(out, built.profile, comments);
      out.flush();
      if (!out) throw std::runtime_error("writing " + profile_tmp + " failed");
    }
    std::filesystem::rename(frozen_tmp, frozen_path);
    std::filesystem::rename(profile_tmp, profile_path);
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(frozen_tmp, ec);
    std::filesystem::remove(profile_tmp, ec);
    throw;
  }

  auto info = spec.unfrozen();
  std::cout << "wrote " << frozen_path << '\n';
  std::cout << "wrote " << profile_path << '\n';
  std::cout << "block length " << n_len << ", dimension " << dim << ", union bound "
            << format_val(union_bound(built.profile, info)) << '\n';
  return 0;
}

int run_simulate(const std::string& spec_path, const std::string& channel_text,
                 std::uint64_t blocks, std::uint64_t seed, unsigned threads,
                 const std::string& profile_path, const std::string& out_path) {
  std::ifstream spec_in(spec_path);
  if (!spec_in) throw std::runtime_error("cannot open " + spec_path);
  CodeSpec spec = read_frozen_set(spec_in);
  Channel ch = Channel::parse(spec.kernel.field, channel_text);

  double bound = std::numeric_limits<double>::quiet_NaN();
  if (!profile_path.empty()) {
    std::ifstream prof_in(profile_path);
    if (!prof_in) throw std::runtime_error("cannot open " + profile_path);
    auto profile = read_profile_csv(prof_in);
    if (profile.values.size() != spec.block_length())
      throw std::invalid_argument("profile length does not match the code");
    bound = union_bound(profile, spec.unfrozen());
  }

  auto res = simulate_sc(spec, ch, blocks, seed, threads);
  const double bler =
      static_cast<double>(res.block_errors) / static_cast<double>(res.blocks);
  const std::size_t dim = spec.dimension();
  const double ser = dim == 0
                         ? 0.0
                         : static_cast<double>(res.symbol_errors) /
                               (static_cast<double>(res.blocks) *
                                static_cast<double>(dim));

  std::ostringstream command;
  command << "simulate --spec " << spec_path << " --channel " << ch.describe()
          << " --blocks " << blocks << " --seed " << seed;
  if (!profile_path.empty()) command << " --profile " << profile_path;
  if (!out_path.empty()) command << " --out " << out_path;
  auto comments =
      manifest_lines(command.str(), out_path.empty()
                                        ? std::vector<std::string>{}
                                        : std::vector<std::string>{out_path});

  emit(out_path, [&](std::ostream& out) {
    for (const auto& line : comments) out << "# " << line << '\n';
    out << "# code: q=" << spec.kernel.field->size() << " ell=" << spec.kernel.ell
        << " n=" << spec.levels << " label=" << spec.kernel.label
        << " block_length=" << spec.block_length() << " dimension=" << dim
        << " rate=" << format_val(spec.rate()) << '\n';
    out << "blocks,block_errors,block_error_rate,symbol_errors,symbol_error_rate,"
           "union_bound\n";
    out << res.blocks << ',' << res.block_errors << ',' << format_val(bler) << ','
        << res.symbol_errors << ',' << format_val(ser) << ',' << format_val(bound)
        << '\n';
  });
  if (!out_path.empty()) std::cout << "wrote " << out_path << '\n';
  return 0;
}

int run_curve(CLI::App* cmd, const ProfileArgs& pa, const std::string& out_path) {
  BuiltProfile built = build_profile(cmd, pa);
  auto curve = bound_curve(built.profile);
  std::string command = profile_command_text("curve", pa, built);
  if (!out_path.empty()) command += " --out " + out_path;
  auto comments =
      manifest_lines(command, out_path.empty() ? std::vector<std::string>{}
                                               : std::vector<std::string>{out_path});
  emit(out_path, [&](std::ostream& out) { write_curve_csv(out, curve, comments); });
  if (!out_path.empty()) std::cout << "wrote " << out_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"non-binary polar codes with Reed-Solomon and Hermitian kernels"};
  app.set_version_flag("--version", std::string("nbpolar ") + NBPOLAR_VERSION_STRING);
  app.require_subcommand(1);

  KernelArgs kernel_args;
  auto* kernel_cmd = app.add_subcommand(
      "kernel", "print a kernel matrix, its partial distances, and exponents");
  add_kernel_options(kernel_cmd, kernel_args);
  kernel_cmd->callback([&] { run_kernel(kernel_args); });

  ProfileArgs construct_args;
  double construct_rate = -1.0;
  long long construct_dim = -1;
  std::string construct_out;
  auto* construct_cmd = app.add_subcommand(
      "construct", "build a frozen set and reliability profile for a channel");
  add_profile_options(construct_cmd, construct_args);
  construct_cmd->add_option("--rate", construct_rate, "target code rate in [0, 1]");
  construct_cmd->add_option("-k", construct_dim, "code dimension in symbols");
  construct_cmd
      ->add_option("--out", construct_out,
                   "output prefix, writes PREFIX.frozen.txt and PREFIX.profile.csv")
      ->required();
  construct_cmd->callback([&] {
    run_construct(construct_cmd, construct_args, construct_rate, construct_dim,
                  construct_out);
  });

  std::string sim_spec, sim_channel, sim_profile, sim_out;
  std::uint64_t sim_blocks = 0, sim_seed = 0;
  unsigned sim_threads = 0;
  auto* simulate_cmd =
      app.add_subcommand("simulate", "run the SC decoder over random messages");
  simulate_cmd->add_option("--spec", sim_spec, "frozen-set file from construct")
      ->required();
  simulate_cmd->add_option("--channel", sim_channel, "erasure:EPS or biawgn:SIGMA")
      ->required();
  simulate_cmd->add_option("--blocks", sim_blocks, "number of random blocks")
      ->required();
  simulate_cmd->add_option("--seed", sim_seed, "master seed")->required();
  simulate_cmd->add_option("--threads", sim_threads,
                           "worker threads, 0 means the hardware count");
  simulate_cmd->add_option("--profile", sim_profile,
                           "profile CSV used to report the matching union bound");
  simulate_cmd->add_option("--out", sim_out, "output CSV path, default stdout");
  simulate_cmd->callback([&] {
    run_simulate(sim_spec, sim_channel, sim_blocks, sim_seed, sim_threads, sim_profile,
                 sim_out);
  });

  ProfileArgs curve_args;
  std::string curve_out;
  auto* curve_cmd = app.add_subcommand(
      "curve", "emit the rate versus union bound curve for a construction");
  add_profile_options(curve_cmd, curve_args);
  curve_cmd->add_option("--out", curve_out, "output CSV path, default stdout");
  curve_cmd->callback([&] { run_curve(curve_cmd, curve_args, curve_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
