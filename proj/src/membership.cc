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

#include "gfair/membership.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace gfair {

Distribution ResolveMembership(const std::string& item,
                               const AttributeSetPtr& set,
                               const MembershipTable& table) {
  if (const Distribution* d = table.find(item, set->name())) return *d;
  return Distribution::Uniform(set);
}

Distribution AchievedDistribution(std::span<const Distribution> memberships) {
  if (memberships.empty()) {
    throw DomainError("achieved distribution of an empty prefix");
  }
  return Distribution::Mean(memberships);
}

Distribution MembershipFromBias(double bias, AttributeSetPtr binary_set) {
  if (!(bias >= -1.0 && bias <= 1.0)) {
    throw DomainError(fmt::format("bias score {} outside [-1,1]", bias));
  }
  if (!binary_set || !binary_set->is_binary()) {
    throw DomainError("bias conversion needs a binary attribute set");
  }
  const double first = (1.0 + bias) / 2.0;
  return Distribution::FromProbs(std::move(binary_set), {first, 1.0 - first});
}

Distribution MembershipFromIntentGains(std::span<const double> gains,
                                       AttributeSetPtr set) {
  if (!set || gains.size() != set->size()) {
    throw DomainError("intent gains do not match the attribute set");
  }
  double sum = 0.0;
  for (double g : gains) {
    if (!(g >= 0.0)) {
      throw DomainError(fmt::format("negative intent gain {}", g));
    }
    sum += g;
  }
  if (sum == 0.0) return Distribution::Uniform(std::move(set));
  std::vector<double> probs(gains.begin(), gains.end());
  for (double& p : probs) p /= sum;
  return Distribution::FromProbs(std::move(set), std::move(probs));
}

double ExponentialGain(int grade) {
  const int g = std::clamp(grade, 0, kMaxGrade);
  return std::ldexp(1.0, g) - 1.0;
}

}  // namespace gfair
