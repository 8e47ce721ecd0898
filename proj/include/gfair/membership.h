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

#ifndef GFAIR_MEMBERSHIP_H_
#define GFAIR_MEMBERSHIP_H_

#include <span>
#include <string>
#include <vector>

#include "gfair/types.h"

namespace gfair {

/// Grades above this are clamped before computing 2^g.
inline constexpr int kMaxGrade = 15;

/// Stored membership of `item`, or the uniform distribution over `set` when
/// the item carries no value of that set.
Distribution ResolveMembership(const std::string& item,
                               const AttributeSetPtr& set,
                               const MembershipTable& table);

/// Mean of the membership vectors of ranks 1..k. Throws DomainError on an
/// empty sequence or mixed attribute sets.
Distribution AchievedDistribution(std::span<const Distribution> memberships);

/// Binary membership ((1+b)/2, (1-b)/2) from a bias score b in [-1,1].
Distribution MembershipFromBias(double bias, AttributeSetPtr binary_set);

/// Per-intent gains normalized to a distribution; all-zero gains give the
/// uniform distribution.
Distribution MembershipFromIntentGains(std::span<const double> gains,
                                       AttributeSetPtr set);

/// 2^g - 1, with g clamped to [0, kMaxGrade].
double ExponentialGain(int grade);

}  // namespace gfair

#endif  // GFAIR_MEMBERSHIP_H_
