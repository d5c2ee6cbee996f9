// Copyright 2026 The ghzdet Authors
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

#include "ghzdet/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  namespace gc = ghzdet::cli;
  CLI::App app{"ghzdet: pure states and their (n-1)-qubit marginals"};
  app.require_subcommand(1);

  double tol = ghzdet::kDefaultTol;
  std::string path;
  std::string out_path;
  std::string reference;
  int budget = 64;
  std::uint64_t seed = 0;
  bool perturb = false;
  gc::MakeStateOptions ms;

  auto* analyze = app.add_subcommand("analyze", "classify a state file (exit 10 = GHZ-class, 0 = determined)");
  analyze->add_option("state", path, "state file")->required();
  analyze->add_option("--tol", tol, "numerical tolerance");

  auto* recon = app.add_subcommand("reconstruct", "recover the pure state(s) behind a panel file");
  recon->add_option("panel", path, "panel file")->required();
  recon->add_option("--tol", tol, "numerical tolerance");
  recon->add_option("--out", out_path, "write the reconstructed state here");
  recon->add_option("--reference", reference, "state file to report fidelity against");

  auto* search = app.add_subcommand("sibling-search", "numerical search for a panel-sharing state");
  search->add_option("state", path, "state file")->required();
  search->add_option("--budget", budget, "number of descents")->check(CLI::NonNegativeNumber);
  search->add_option("--tol", tol, "numerical tolerance");
  search->add_option("--seed", seed, "seed for the random starts");
  search->add_option("--out", out_path, "write the sibling here when found");

  auto* chi = app.add_subcommand("demo-chi", "the chi example: equal marginals on qubits 1-3, not on 4");
  chi->add_flag("--perturb", perturb, "perturb the partner state (self-check)")->group("");

  auto* make = app.add_subcommand("make-state", "write a named or random state file");
  make->add_option("kind", ms.kind, "ghz | w | haar | eta | product | chi | cluster | hybrid | ghz-orbit")
      ->required();
  make->add_option("--qubits,-n", ms.qubits, "qubit count")->check(CLI::Range(1, ghzdet::kMaxQubits));
  make->add_option("--seed", ms.seed, "seed for random kinds");
  make->add_option("--phase", ms.phase, "phase of eta");
  make->add_option("--alpha2", ms.alpha2, "|alpha|^2 for ghz-orbit");
  make->add_option("--out", out_path, "output file")->required();

  auto* mpanel = app.add_subcommand("make-panel", "write the panel of a state file");
  mpanel->add_option("state", path, "state file")->required();
  mpanel->add_option("--out", out_path, "output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return gc::kExitInputError;
  }

  auto& out = std::cout;
  auto& err = std::cerr;
  if (*analyze) return gc::cmd_analyze(path, tol, out, err);
  if (*recon) return gc::cmd_reconstruct(path, tol, out_path, reference, out, err);
  if (*search) return gc::cmd_sibling_search(path, budget, tol, seed, out_path, out, err);
  if (*chi) return gc::cmd_demo_chi(perturb, out, err);
  if (*make) return gc::cmd_make_state(ms, out_path, out, err);
  if (*mpanel) return gc::cmd_make_panel(path, out_path, out, err);
  return gc::kExitInputError;
}
