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

#include "gfair/user_model.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "gfair/membership.h"
#include "gfair/types.h"

namespace gfair {

namespace {

void CheckPhi(double phi) {
  if (!(phi > 0.0 && phi < 1.0)) {
    throw DomainError(fmt::format("patience {} outside (0,1)", phi));
  }
}

}  // namespace

DecayKind DecayKind::Rbp(double phi) {
  CheckPhi(phi);
  return {Type::kRbp, phi};
}

UtilityKind UtilityKind::Irbu(double phi) {
  CheckPhi(phi);
  return {Type::kIrbu, phi};
}

double RelProb(int grade) {
  const int g = std::clamp(grade, 0, kMaxGrade);
  const double denom = std::ldexp(1.0, g);
  return (denom - 1.0) / denom;
}

std::vector<double> CascadeDecay(std::span<const double> stop_probs) {
  std::vector<double> decay(stop_probs.size());
  double reach = 1.0;
  for (std::size_t k = 0; k < stop_probs.size(); ++k) {
    decay[k] = stop_probs[k] * reach;
    reach *= 1.0 - stop_probs[k];
  }
  return decay;
}

std::vector<double> ErrDecaySequence(std::span<const int> grades) {
  std::vector<double> probs(grades.size());
  std::transform(grades.begin(), grades.end(), probs.begin(), RelProb);
  return CascadeDecay(probs);
}

std::vector<double> RbpDecaySequence(std::size_t length, double phi) {
  CheckPhi(phi);
  std::vector<double> decay(length);
  double w = 1.0 - phi;
  for (std::size_t k = 0; k < length; ++k) {
    decay[k] = w;
    w *= phi;
  }
  return decay;
}

std::vector<double> DecaySequence(const DecayKind& kind,
                                  std::span<const int> grades) {
  if (kind.type == DecayKind::Type::kRbp) {
    return RbpDecaySequence(grades.size(), kind.phi);
  }
  return ErrDecaySequence(grades);
}

double Utility(const UtilityKind& kind, std::size_t k) {
  if (k == 0) throw DomainError("ranks are 1-based");
  if (kind.type == UtilityKind::Type::kErr) return 1.0 / static_cast<double>(k);
  return std::pow(kind.phi, static_cast<double>(k));
}

}  // namespace gfair
