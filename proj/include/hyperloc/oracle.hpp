// Copyright 2026 The hyperloc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Brute-force cross-checks. Nothing here calls into the principal or frenet
// code; only the small linear-algebra primitives are shared.

#ifndef HYPERLOC_ORACLE_HPP_
#define HYPERLOC_ORACLE_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hyperloc/vec.hpp"

namespace hyperloc {

struct FdStation {
  std::size_t index = 0;
  double s = 0.0;
  /// Central-difference derivatives alpha', ..., alpha''''.
  std::array<Vec4, 4> d{};
  /// Estimated error of each derivative (truncation plus rounding).
  std::array<double, 4> error{};
  Vec4 t, n, b1, b2;
  double k1 = 0.0;
  /// Empty when the quantity they are read from sits below the stencil
  /// noise floor.
  std::optional<double> k2;
  std::optional<double> k3;
};

struct FdFrenetReport {
  double spacing = 0.0;
  std::vector<FdStation> stations;
};

/// Frenet apparatus of a curve from positions sampled at uniform arc-length
/// spacing, by fourth-order central differences. The three samples at each
/// end are not reported. Throws Error(too_few_samples) below nine samples.
FdFrenetReport fd_frenet(std::span<const Vec4> positions, double spacing);

/// Eigenvalues of the pencil (h, g), ascending: Cholesky reduction of g,
/// then cyclic Jacobi on L^-1 h L^-T.
std::array<double, 3> shape_eigenvalues(const Sym3& g, const Sym3& h);

struct DarbouxSample {
  Vec4 T, E, D, N;
  double k_g1 = 0.0;
  double k_g2 = 0.0;
  double k_n = 0.0;
  /// False where E (and so D) is undefined; only the N row is checked there.
  bool has_frame = false;
};

struct DarbouxResiduals {
  /// Max norm of X' - (rhs) for X = T, E, D, N, with zero geodesic torsions.
  std::array<double, 4> row{};
  std::array<std::size_t, 4> count{};
};

/// Frame derivatives by fourth-order centered differences against the frame
/// equations of a line of curvature. The two samples at each end are not
/// checked. Throws Error(too_few_samples) below five samples.
DarbouxResiduals darboux_residuals(std::span<const DarbouxSample> samples,
                                   double spacing);

}  // namespace hyperloc

#endif  // HYPERLOC_ORACLE_HPP_
