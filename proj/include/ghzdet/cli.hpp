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

// Command implementations behind the ghzdet executable. Each writes its
// report to `out`, diagnostics to `err`, and returns the process exit code,
// so tests can drive them without spawning processes.

#pragma once

#include "ghzdet/ghz.hpp"
#include "ghzdet/io.hpp"
#include "ghzdet/oracle.hpp"
#include "ghzdet/reconstruct.hpp"
#include "ghzdet/stabilizer.hpp"
#include "ghzdet/states.hpp"

#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

namespace ghzdet::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitInputError = 2,
  kExitIncompatible = 3,
  kExitUndetermined = 10,
};

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

inline std::string fmt(Complex c) {
  std::ostringstream s;
  s << std::setprecision(12) << c.real() << (std::signbit(c.imag()) ? " - " : " + ") << std::abs(c.imag()) << "i";
  return s.str();
}

inline void print_matrix(std::ostream& out, const std::string& name, const Matrix2c& m) {
  out << "  " << name << " = [[" << fmt(m(0, 0)) << ", " << fmt(m(0, 1)) << "], [" << fmt(m(1, 0)) << ", "
      << fmt(m(1, 1)) << "]]\n";
}

inline void print_certificate(std::ostream& out, const GhzCertificate& c) {
  out << "certificate:\n";
  out << "  support = " << c.support.str() << " / " << c.partner().str() << '\n';
  out << "  alpha = " << fmt(c.alpha) << "  (|alpha| = " << fmt(std::abs(c.alpha)) << ")\n";
  out << "  beta = " << fmt(c.beta) << "  (|beta| = " << fmt(std::abs(c.beta)) << ")\n";
  for (const auto& u : c.locals) print_matrix(out, "U_" + std::to_string(u.target()), u.matrix());
}

// Applies the usual error mapping around a command body.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitInputError;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline int cmd_analyze(const std::string& path, double tol, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const StateFile f = load_state(path);
    if (!f.warning.empty()) err << "warning: " << f.warning << '\n';
    const Ket& psi = f.state;
    const int n = psi.num_qubits();
    if (n < 2) throw std::invalid_argument("analyze needs at least two qubits");
    out << "qubits: " << n << '\n';
    if (!f.label.empty()) out << "label: " << f.label << '\n';
    const Classification c = classify(psi, tol);
    for (int j = 1; j <= n; ++j) {
      const auto& s = c.spectra[static_cast<std::size_t>(j - 1)];
      out << "qubit " << j << " spectrum: " << detail::fmt(s.major) << ' ' << detail::fmt(s.minor)
          << (s.degenerate ? " (degenerate)" : "") << '\n';
    }
    out << "verdict: " << to_string(c.verdict) << '\n';
    out << "reason: " << c.reason << '\n';
    if (c.ill_conditioned) out << "diagnostic: ill-conditioned (branches disagree near the degeneracy threshold)\n";
    if (c.certificate) detail::print_certificate(out, *c.certificate);
    const StabilizerBasis stab = stabilizer_subalgebra(psi);
    out << "stabilizer dimension: " << stab.dimension << '\n';
    out << "dimension criterion: " << to_string(undetermined_by_dimension(psi)) << '\n';
    return c.is_ghz() ? kExitUndetermined : kExitOk;
  });
}

inline int cmd_reconstruct(const std::string& path, double tol, const std::string& out_path,
                           const std::string& reference_path, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const RdmPanel panel = load_panel(path);
    std::optional<StateFile> ref;
    if (!reference_path.empty()) ref = load_state(reference_path);
    const ReconstructionResult r = reconstruct(panel, tol);
    out << "outcome: " << to_string(r.outcome) << '\n';
    out << "residual: " << detail::fmt(r.residual) << '\n';
    if (r.outcome == Outcome::Incompatible) {
      out << "reason: " << r.reason << '\n';
      return kExitIncompatible;
    }
    std::string label = "reconstructed";
    if (r.certificate) {
      detail::print_certificate(out, *r.certificate);
      label = "ghz family phi=0 alpha=" + detail::fmt(r.certificate->alpha) +
              " beta=" + detail::fmt(r.certificate->beta);
    }
    if (ref) {
      double fid = fidelity(ref->state, *r.state);
      if (r.certificate) {
        fid = fidelity(ref->state, phase_family(*r.certificate, family_phase_of(*r.certificate, ref->state)));
      }
      out << "fidelity with reference: " << detail::fmt(fid) << '\n';
    }
    if (!out_path.empty()) {
      save_state(out_path, *r.state, label);
      out << "wrote: " << out_path << '\n';
    }
    return r.outcome == Outcome::GhzFamily ? kExitUndetermined : kExitOk;
  });
}

inline int cmd_sibling_search(const std::string& path, int budget, double tol, std::uint64_t seed,
                              const std::string& out_path, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (budget < 0) throw std::invalid_argument("--budget must be non-negative");
    const StateFile f = load_state(path);
    if (!f.warning.empty()) err << "warning: " << f.warning << '\n';
    const SearchReport rep = search_sibling(f.state, tol, budget, seed);
    out << (rep.found ? "found" : "not found") << '\n';
    out << "trials: " << rep.trials << '\n';
    out << "best residual: " << detail::fmt(rep.best_residual) << '\n';
    if (rep.scalar_rejections > 0) out << "rejected phase-equal minimizers: " << rep.scalar_rejections << '\n';
    if (rep.witness) {
      out << "witness:\n";
      detail::print_matrix(out, "L_1", rep.witness->unitary.matrix());
      out << "sibling overlap |<psi|psi'>|: " << detail::fmt(std::abs(inner(f.state, rep.witness->sibling))) << '\n';
      if (!out_path.empty()) {
        save_state(out_path, rep.witness->sibling, "sibling");
        out << "wrote: " << out_path << '\n';
      }
    }
    return rep.found ? kExitUndetermined : kExitOk;
  });
}

/// The chi example. `perturb` swaps in a slightly rotated partner so the
/// first check must fail.
inline int cmd_demo_chi(bool perturb, std::ostream& out, std::ostream& /*err*/) {
  constexpr double kTol = 1e-10;
  const Ket chi = chi_state();
  Ket partner = apply_local(SingleQubitUnitary(pauli_z(), 1), chi);
  if (perturb) {
    const Matrix2c tilt = (std::cos(1e-3) * Matrix2c::Identity() + kI * std::sin(1e-3) * pauli_x()).eval();
    partner = apply_local(SingleQubitUnitary(tilt, 2), partner);
  }
  out << "|chi> = (1/sqrt(3)) (|0000> + |0001> + |1111>)\n";
  out << "partner = Z_1 |chi>" << (perturb ? " with a 1e-3 rotation on qubit 2 (perturbed run)" : "") << '\n';
  out << "tolerance: " << kTol << '\n';
  bool all = true;
  auto report = [&](bool ok, const std::string& what) {
    out << (ok ? "[PASS] " : "[FAIL] ") << what << '\n';
    all = all && ok;
  };
  report(subset_equal(chi, partner, {1, 2, 3}, kTol),
         "entries tracing out qubits 1, 2, 3 agree for chi and partner");
  report(!subset_equal(chi, partner, {4}, kTol), "entry tracing out qubit 4 differs");
  const Classification c = classify(chi);
  report(c.verdict == Verdict::Determined, std::string("classify(chi) = ") + to_string(c.verdict));
  out << "stabilizer dimension of chi: " << stabilizer_subalgebra(chi).dimension << " (GHZ-type would be 3)\n";
  return all ? kExitOk : kExitFailure;
}

struct MakeStateOptions {
  std::string kind = "ghz";
  int qubits = 3;
  std::uint64_t seed = 0;
  double phase = 0.0;   // eta
  double alpha2 = 0.5;  // ghz-orbit: |alpha|^2
};

inline Ket make_state(const MakeStateOptions& o) {
  const int n = o.qubits;
  if (o.kind == "ghz") return ghz(n);
  if (o.kind == "w") return w_state(n);
  if (o.kind == "haar") return haar_random_ket(n, o.seed);
  if (o.kind == "eta") return eta_state(n, o.phase);
  if (o.kind == "product") return zero_state(n);
  if (o.kind == "chi") return chi_state();
  if (o.kind == "cluster") return cluster4();
  if (o.kind == "hybrid") return hybrid_ket(n, o.seed);
  if (o.kind == "ghz-orbit") {
    if (!(o.alpha2 > 0.0 && o.alpha2 < 1.0)) throw std::invalid_argument("--alpha2 must lie in (0, 1)");
    return random_lu_orbit(generalized_ghz(n, std::sqrt(o.alpha2), std::sqrt(1.0 - o.alpha2)), o.seed);
  }
  throw std::invalid_argument("unknown state kind '" + o.kind + "'");
}

inline int cmd_make_state(const MakeStateOptions& o, const std::string& out_path, std::ostream& out,
                          std::ostream& err) {
  return detail::guarded(err, [&] {
    const Ket psi = make_state(o);
    std::string label = o.kind;
    if (o.kind == "haar" || o.kind == "hybrid" || o.kind == "ghz-orbit") label += " seed=" + std::to_string(o.seed);
    save_state(out_path, psi, label);
    out << "wrote: " << out_path << " (" << psi.num_qubits() << " qubits)\n";
    return kExitOk;
  });
}

inline int cmd_make_panel(const std::string& state_path, const std::string& out_path, std::ostream& out,
                          std::ostream& err) {
  return detail::guarded(err, [&] {
    const StateFile f = load_state(state_path);
    if (f.state.num_qubits() < 2) throw std::invalid_argument("a panel needs at least two qubits");
    save_panel(out_path, panel_of_pure(f.state));
    out << "wrote: " << out_path << '\n';
    return kExitOk;
  });
}

}  // namespace ghzdet::cli
