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

// Small quasi-Newton minimizer and the one-qubit unitary charts it runs on.
// Both the panel reconstructor and the sibling search use it, with the same
// step control.

#pragma once

#include "ghzdet/tensor.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace ghzdet {

struct DescentOptions {
  int max_iterations = 500;
  double gradient_tol = 1e-12;
  /// Stop as soon as the objective drops below this (sum-of-squares zero).
  double value_floor = 1e-30;
  /// Stop after `stall_iterations` consecutive steps that change f by less
  /// than stall_tol * max(1, |f|): the round-off floor.
  double stall_tol = 1e-14;
  int stall_iterations = 3;
};

struct DescentResult {
  Eigen::VectorXd x;
  double value = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Objective: returns f(x) and writes the gradient when `grad` is non-null.
using Objective = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd* grad)>;

/// BFGS with an Armijo backtracking line search.
inline DescentResult bfgs_minimize(const Objective& f, Eigen::VectorXd x,
                                   const DescentOptions& opts = {}) {
  const Eigen::Index d = x.size();
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(d, d);  // inverse Hessian estimate
  Eigen::VectorXd g(d);
  double fx = f(x, &g);
  DescentResult out;
  int it = 0;
  int stalled = 0;
  for (; it < opts.max_iterations; ++it) {
    if (fx <= opts.value_floor || g.norm() < opts.gradient_tol) {
      out.converged = true;
      break;
    }
    Eigen::VectorXd p = -h * g;
    if (p.dot(g) >= 0.0) {  // lost descent direction; restart from steepest descent
      h.setIdentity();
      p = -g;
    }
    constexpr double kArmijo = 1e-4;
    double step = 1.0;
    Eigen::VectorXd x_new(d);
    Eigen::VectorXd g_new(d);
    double f_new = 0.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      x_new = x + step * p;
      f_new = f(x_new, &g_new);
      if (std::isfinite(f_new) && f_new <= fx + kArmijo * step * p.dot(g)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      out.converged = fx <= opts.value_floor;
      break;
    }
    stalled = (fx - f_new <= opts.stall_tol * std::max(1.0, std::abs(fx))) ? stalled + 1 : 0;
    const Eigen::VectorXd s = x_new - x;
    const Eigen::VectorXd y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-300 * std::max(1.0, s.squaredNorm())) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
      h = (id - rho * s * y.transpose()) * h * (id - rho * y * s.transpose()) +
          rho * s * s.transpose();
    }
    x = x_new;
    g = g_new;
    fx = f_new;
    if (stalled >= opts.stall_iterations) {
      out.converged = true;
      ++it;
      break;
    }
  }
  out.x = std::move(x);
  out.value = fx;
  out.gradient_norm = g.norm();
  out.iterations = it;
  return out;
}

// ---------------------------------------------------------------------------
// SU(2) exponential chart: x in R^3 -> exp(i x . sigma)

inline Matrix2c su2_exp(const Eigen::Vector3d& x) {
  const auto sigma = paulis();
  const double r = x.norm();
  const double sinc = (r < 1e-8) ? 1.0 - r * r / 6.0 : std::sin(r) / r;
  Matrix2c gen = x(0) * sigma[0] + x(1) * sigma[1] + x(2) * sigma[2];
  return std::cos(r) * Matrix2c::Identity() + kI * sinc * gen;
}

/// Partial derivatives d/dx_a exp(i x . sigma), a = 0..2.
inline std::array<Matrix2c, 3> su2_exp_derivatives(const Eigen::Vector3d& x) {
  const auto sigma = paulis();
  const double r = x.norm();
  const Matrix2c gen = x(0) * sigma[0] + x(1) * sigma[1] + x(2) * sigma[2];
  double sinc = 0.0;
  double dsinc_over_r = 0.0;  // (d sinc / dr) / r
  if (r < 1e-4) {
    sinc = 1.0 - r * r / 6.0;
    dsinc_over_r = -1.0 / 3.0 + r * r / 30.0;
  } else {
    sinc = std::sin(r) / r;
    dsinc_over_r = (r * std::cos(r) - std::sin(r)) / (r * r * r);
  }
  std::array<Matrix2c, 3> out;
  for (int a = 0; a < 3; ++a) {
    // d cos r / dx_a = -sinc * x_a
    out[static_cast<std::size_t>(a)] = -sinc * x(a) * Matrix2c::Identity() +
                                       kI * (dsinc_over_r * x(a) * gen + sinc * sigma[static_cast<std::size_t>(a)]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Conjugation matching: sum_k || (L on bit p_k) S_k (L on bit p_k)^† - T_k ||_F^2

struct ConjugationTerm {
  CMatrix source;  // S_k
  CMatrix target;  // T_k
  int bitpos = 0;  // where the acted-on qubit sits inside S_k
};

/// Value and gradient of the conjugation-matching objective at L, given
/// dL/dx_a for each chart coordinate.
inline double conjugation_mismatch(const std::vector<ConjugationTerm>& terms, const Matrix2c& l,
                                   const Matrix2c* dl, int n_coords, Eigen::VectorXd* grad) {
  double value = 0.0;
  if (grad) grad->setZero(n_coords);
  for (const auto& t : terms) {
    const CMatrix ls = left_apply_on_bit(l, t.source, t.bitpos);
    const CMatrix a = left_apply_on_bit(l, ls.adjoint(), t.bitpos).adjoint();
    const CMatrix e = a - t.target;
    value += e.squaredNorm();
    if (grad) {
      for (int c = 0; c < n_coords; ++c) {
        // dA = (dL S) L^† + h.c.
        const CMatrix dls = left_apply_on_bit(dl[c], t.source, t.bitpos);
        const CMatrix half = left_apply_on_bit(l, dls.adjoint(), t.bitpos).adjoint();
        // d||E||^2 = 2 Re tr(E^† dA) = 4 Re tr(E^† half) for Hermitian E
        (*grad)(c) += 4.0 * e.conjugate().cwiseProduct(half).sum().real();
      }
    }
  }
  return value;
}

}  // namespace ghzdet
