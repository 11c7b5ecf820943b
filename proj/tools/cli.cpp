// Copyright 2026 The qmonty Authors
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

#include <exception>
#include <ostream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace qmonty::cli {

namespace {

void add_format(CLI::App* cmd, std::optional<std::string>& target) {
  cmd->add_option("--format", target, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum Monty Hall simulator: payoff sweeps, oracle checks, protocol runs",
               "qmonty"};
  app.set_config("--config", "", "Read options from a TOML or INI file (flags win)");
  app.require_subcommand(1);
  app.set_version_flag("--version", "qmonty 1.0.0");

  SweepOptions sweep;
  CLI::App* s = app.add_subcommand("sweep", "Payoff against gamma as CSV or JSON");
  s->add_option("--scenario", sweep.scenario, "Curve family")
      ->required()
      ->check(CLI::IsMember(kScenarios));
  s->add_option("-d,--doors", sweep.d, "Number of doors");
  s->add_option("-m,--opened", sweep.m, "Doors the host opens");
  s->add_option("-k,--displacement", sweep.k, "Displacement (default: every k)");
  s->add_option("--grid", sweep.grid, "Gamma points on [0, pi/2]");
  s->add_option("--alice", sweep.alice, "Host strategy selector");
  s->add_option("--bob", sweep.bob, "Player strategy selector");
  s->add_flag("--family", sweep.family, "One curve per superposition width 1..d");
  s->add_flag("--simulate", sweep.simulate, "Add a simulated column");
  s->add_option("--out", sweep.out, "Output file (one per curve for CSV)");
  s->add_option("--format", sweep.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));

  VerifyOptions verify;
  CLI::App* v = app.add_subcommand("verify", "Simulation against closed forms");
  v->add_option("--d-min", verify.d_min, "Smallest d");
  v->add_option("--d-max", verify.d_max, "Largest d (<= 6)");
  v->add_option("--pairs", verify.pairs, "Random strategy pairs per (d, m)");
  v->add_option("--seed", verify.seed, "Seed for random strategies");
  v->add_option("--grid", verify.grid, "Gamma points (default: 0, pi/6, pi/4, pi/2)");
  v->add_option("--tolerance", verify.tolerance, "Maximum absolute deviation");
  v->add_flag("--corrupt-oracle", verify.corrupt_oracle)->group("");
  v->add_option("--out", verify.out, "Report file");
  add_format(v, verify.format);

  ProtocolOptions proto;
  CLI::App* p = app.add_subcommand("protocol", "Batch of key-distribution rounds");
  p->add_option("--protocol", proto.protocol, "A (direct) or B (GHZ)")
      ->check(CLI::IsMember({"A", "B", "a", "b", "direct", "ghz"}));
  p->add_option("-d,--doors", proto.d, "Dimension");
  p->add_option("--rounds", proto.rounds, "Rounds");
  p->add_option("--seed", proto.seed, "Seed");
  p->add_option("--approve", proto.approve, "Validator mask, e.g. 101, or all");
  p->add_option("--out", proto.out, "Transcript file (JSON Lines)");
  add_format(p, proto.format);

  InfoOptions info;
  CLI::App* i = app.add_subcommand("info", "Build and parameter summary");
  i->add_option("-d,--doors", info.d, "Dimension");
  i->add_option("-m,--opened", info.m, "Doors the host opens (default d - 2)");
  add_format(i, info.format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  }

  try {
    if (s->parsed()) return cmd_sweep(sweep, out, err);
    if (v->parsed()) return cmd_verify(verify, out, err);
    if (p->parsed()) return cmd_protocol(proto, out, err);
    return cmd_info(info, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace qmonty::cli
