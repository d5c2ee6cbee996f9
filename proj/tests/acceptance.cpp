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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include "ghzdet/ghzdet.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

namespace {

using namespace ghzdet;
using Clock = std::chrono::steady_clock;

struct Check {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// max-norm distance between a and b after the best global phase
double phase_aligned_distance(const Ket& a, const Ket& b) {
  const Complex ov = inner(b, a);
  const Complex ph = std::abs(ov) > 0.0 ? ov / std::abs(ov) : Complex(1.0);
  return (a.amplitudes() - ph * b.amplitudes()).cwiseAbs().maxCoeff();
}

Check eta_family() {
  const auto t0 = Clock::now();
  double worst_panel = 0.0;
  double worst_overlap = 0.0;
  for (int n = 2; n <= 8; ++n) {
    std::vector<Ket> members;
    std::vector<RdmPanel> panels;
    for (int m = 0; m < 8; ++m) {
      members.push_back(eta_state(n, 2.0 * std::numbers::pi * m / 8.0));
      panels.push_back(panel_of_pure(members.back()));
    }
    for (int a = 0; a < 8; ++a) {
      for (int b = a + 1; b < 8; ++b) {
        worst_panel = std::max(worst_panel, panel_distance(panels[a], panels[b]));
        worst_overlap = std::max(worst_overlap, std::abs(inner(members[a], members[b])));
      }
    }
  }
  const double t = seconds_since(t0);
  std::ostringstream d;
  d << "max panel distance " << worst_panel << ", max overlap " << worst_overlap << ", " << t << " s";
  return {worst_panel <= 1e-10 && worst_overlap < 1.0 - 1e-6 && t < 5.0, d.str()};
}

Check ghz_orbits() {
  int failures = 0;
  double worst_amp = 0.0;
  double worst_sib = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int n = 3 + i % 5;
    const GhzSample s = random_ghz_orbit(n, 900000 + static_cast<std::uint64_t>(i), 0.05, 0.95);
    const Classification c = classify(s.state);
    if (!c.is_ghz()) {
      ++failures;
      continue;
    }
    const auto& cert = *c.certificate;
    const double got_lo = std::min(std::abs(cert.alpha), std::abs(cert.beta));
    const double got_hi = std::max(std::abs(cert.alpha), std::abs(cert.beta));
    const double amp = std::max(std::abs(got_lo - std::min(s.abs_alpha, s.abs_beta)),
                                std::abs(got_hi - std::max(s.abs_alpha, s.abs_beta)));
    const double sib = panel_distance(panel_of_pure(s.state), panel_of_pure(sibling(s.state, cert)));
    worst_amp = std::max(worst_amp, amp);
    worst_sib = std::max(worst_sib, sib);
    if (amp > 1e-7 || sib > 1e-8) ++failures;
  }
  std::ostringstream d;
  d << "50 orbits, " << failures << " failures, max |alpha| error " << worst_amp << ", max sibling panel distance "
    << worst_sib;
  return {failures == 0, d.str()};
}

Check haar_determined() {
  const auto t0 = Clock::now();
  int failures = 0;
  double min_residual = std::numeric_limits<double>::infinity();
  for (int n = 3; n <= 5; ++n) {
    for (int i = 0; i < 200; ++i) {
      const Ket psi = haar_random_ket(n, 1000000 + 1000 * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(i));
      const bool determined = classify(psi).verdict == Verdict::Determined;
      const SearchReport r = search_sibling(psi, kDefaultTol, 64);
      min_residual = std::min(min_residual, r.best_residual);
      if (!determined || r.found || !(r.best_residual > 1e-4)) ++failures;
    }
  }
  const double t = seconds_since(t0);
  std::ostringstream d;
  d << "600 states, " << failures << " failures, min best_residual " << min_residual << ", " << t << " s";
  return {failures == 0 && t < 600.0, d.str()};
}

Check three_way() {
  int failures = 0;
  int total = 0;
  int ghz_count = 0;
  for (int n : {3, 5}) {
    for (int i = 0; i < 60; ++i) {
      const auto seed = 2000000 + 1000 * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(i);
      Ket psi = haar_random_ket(n, seed);
      switch (i % 4) {
        case 0:
          psi = (i % 8 == 0) ? random_lu_orbit(eta_state(n, 0.1 * i), seed) : random_ghz_orbit(n, seed).state;
          break;
        case 1: break;
        case 2: {
          std::mt19937_64 rng(seed);
          std::vector<Vector2c> f;
          for (int q = 0; q < n; ++q) f.push_back(haar_random_unitary2(rng).col(0));
          psi = product_state(f);
          break;
        }
        default: psi = hybrid_ket(n, seed);
      }
      const bool a = classify(psi).is_ghz();
      const bool b = search_sibling(psi).found;
      const bool c = undetermined_by_dimension(psi) == DimensionVerdict::Undetermined;
      ++total;
      ghz_count += a ? 1 : 0;
      if (a != b || a != c) ++failures;
    }
  }
  std::ostringstream d;
  d << total << " states (" << ghz_count << " GHZ-class), " << failures << " disagreements";
  return {failures == 0, d.str()};
}

Check stabilizer_dimensions() {
  bool ok = true;
  std::ostringstream d;
  for (int n = 3; n <= 8; ++n) {
    const int g = stabilizer_subalgebra(ghz(n)).dimension;
    const int z = stabilizer_subalgebra(zero_state(n)).dimension;
    ok = ok && g == n - 1 && z == n;
    if (g != n - 1 || z != n) d << "n=" << n << ": ghz " << g << ", zero " << z << "; ";
  }
  int worst = 100;
  for (int n = 3; n <= 5; ++n) {
    int zeros = 0;
    for (int i = 0; i < 100; ++i) {
      const Ket psi = haar_random_ket(n, 3000000 + 1000 * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(i));
      zeros += stabilizer_subalgebra(psi).dimension == 0 ? 1 : 0;
    }
    worst = std::min(worst, zeros);
    ok = ok && zeros >= 99;
  }
  d << "GHZ_n -> n-1 and |0>^n -> n for n=3..8; Haar dimension 0 in at least " << worst << "/100 per n";
  return {ok, d.str()};
}

Check chi_facts() {
  constexpr double kTol = 1e-10;
  const Ket chi = chi_state();
  const Ket partner = apply_local(SingleQubitUnitary(pauli_z(), 1), chi);
  const bool same = subset_equal(chi, partner, {1, 2, 3}, kTol);
  const bool differs = !subset_equal(chi, partner, {4}, kTol);
  const bool determined = classify(chi, kTol).verdict == Verdict::Determined;
  std::ostringstream d;
  d << "entries 1-3 equal: " << same << ", entry 4 differs: " << differs << ", classify determined: " << determined;
  return {same && differs && determined, d.str()};
}

Check round_trip() {
  const auto t0 = Clock::now();
  int failures = 0;
  double worst = 0.0;
  for (int n = 3; n <= 6; ++n) {
    for (int i = 0; i < 100; ++i) {
      const Ket psi = haar_random_ket(n, 4000000 + 1000 * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(i));
      const ReconstructionResult r = reconstruct(panel_of_pure(psi));
      const double f = r.outcome == ghzdet::Outcome::Unique ? fidelity(*r.state, psi) : 0.0;
      worst = std::max(worst, 1.0 - f);
      if (r.outcome != ghzdet::Outcome::Unique || f < 1.0 - 1e-8) ++failures;
    }
    for (int i = 0; i < 20; ++i) {
      const Ket psi = random_ghz_orbit(n, 5000000 + 1000 * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(i)).state;
      const ReconstructionResult r = reconstruct(panel_of_pure(psi));
      if (r.outcome != ghzdet::Outcome::GhzFamily || !r.certificate) {
        ++failures;
        continue;
      }
      const double f = fidelity(phase_family(*r.certificate, family_phase_of(*r.certificate, psi)), psi);
      worst = std::max(worst, 1.0 - f);
      if (f < 1.0 - 1e-8) ++failures;
    }
  }
  const double t = seconds_since(t0);
  std::ostringstream d;
  d << "480 panels, " << failures << " failures, worst infidelity " << worst << ", " << t << " s";
  return {failures == 0 && t < 600.0, d.str()};
}

Check lu_transport() {
  int failures = 0;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int n = 3 + i % 5;
    const Ket psi = random_ghz_orbit(n, 6000000 + static_cast<std::uint64_t>(i)).state;
    const GhzCertificate cert = *classify(psi).certificate;
    // even: sibling pair; odd: two family members
    const Ket a = (i % 2 == 0) ? psi : phase_family(cert, 0.37 * i);
    const Ket b = (i % 2 == 0) ? sibling(psi, cert) : phase_family(cert, 0.37 * i + 1.0 + 0.05 * i);
    const auto us = lu_equivalence_check(a, b, 1e-8);
    if (!us || static_cast<int>(us->size()) != n) {
      ++failures;
      continue;
    }
    for (const auto& u : *us) {
      const double e = std::max(phase_aligned_distance(apply_local(u, a), b), unitarity_defect(u.matrix()));
      worst = std::max(worst, e);
      if (e > 1e-8) ++failures;
    }
  }
  std::ostringstream d;
  d << "50 pairs, " << failures << " failures, worst transport error " << worst;
  return {failures == 0, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
      {"1 eta family shares panels", eta_family},
      {"2 GHZ LU-orbits certified", ghz_orbits},
      {"3 Haar states determined", haar_determined},
      {"4 classifier, search and dimension agree", three_way},
      {"5 stabilizer dimensions", stabilizer_dimensions},
      {"6 chi example", chi_facts},
      {"7 reconstruction round trip", round_trip},
      {"8 LU transport between panel-sharing states", lu_transport},
  };
  bool all = true;
  for (const auto& [name, fn] : criteria) {
    Check o{false, ""};
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
