// Copyright 2026 The gfair Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Bounded divergences between an achieved distribution p and a target p*.
//
//   JSD   Jensen-Shannon divergence with base-2 logarithms. Nominal scale.
//   NMD   Normalised Match Distance: L1 distance of the cumulative
//         distributions divided by |A|-1. Ordinal scale.
//   RNOD  Root Normalised Order-aware Divergence. For each class i in the
//         target's support, DW(i) = sum_j |i-j| (p(j)-p*(j))^2; RNOD is
//         sqrt(mean DW / (|A|-1)). Ordinal scale, gold-anchored.
//
// All three lie in [0,1]. For a binary set NMD and RNOD coincide. KLD (natural
// log, unbounded) is kept for the NDKL baseline only.
//
// The span overloads do no scale checking and are what the hot loops call.

#ifndef GFAIR_DIVERGENCE_H_
#define GFAIR_DIVERGENCE_H_

#include <span>
#include <string>

#include "gfair/types.h"

namespace gfair {

enum class DivergenceKind { kJsd, kNmd, kRnod };

const char* DivergenceName(DivergenceKind kind);  // "JSD", "NMD", "RNOD"
DivergenceKind ParseDivergence(const std::string& s);  // case-insensitive

/// Whether `kind` may be used with `set`: NMD and RNOD need an ordinal or
/// binary set.
bool DivergenceAllowed(DivergenceKind kind, const AttributeSet& set);

double Jsd(std::span<const double> p, std::span<const double> q);
double Nmd(std::span<const double> p, std::span<const double> q);
double Rnod(std::span<const double> p, std::span<const double> target);
double Divergence(DivergenceKind kind, std::span<const double> p,
                  std::span<const double> target);

double Jsd(const Distribution& p, const Distribution& q);
double Nmd(const Distribution& p, const Distribution& q);
double Rnod(const Distribution& p, const Distribution& target);
double Divergence(DivergenceKind kind, const Distribution& p,
                  const Distribution& target);

/// 1 - Divergence(p || target).
double DistrSim(DivergenceKind kind, const Distribution& p,
                const Distribution& target);

/// Smoothing applied to zero target cells by NDKL and Skew by default.
inline constexpr double kDefaultEpsilon = 1e-6;

/// sum_i p(i) ln(p(i)/target(i)) with 0 ln 0 = 0. A zero target cell under
/// positive p(i) is replaced by `epsilon`; with epsilon == 0 that case throws
/// EvaluationError.
double Kld(std::span<const double> p, std::span<const double> target,
           double epsilon);
double Kld(const Distribution& p, const Distribution& target, double epsilon);

}  // namespace gfair

#endif  // GFAIR_DIVERGENCE_H_
