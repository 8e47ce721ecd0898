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

// Attention decay and per-rank utility of the cascade user model.

#ifndef GFAIR_USER_MODEL_H_
#define GFAIR_USER_MODEL_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace gfair {

inline constexpr double kDefaultDecayPhi = 0.85;
inline constexpr double kDefaultIrbuPhi = 0.99;

struct DecayKind {
  enum class Type { kErr, kRbp };
  Type type = Type::kErr;
  double phi = kDefaultDecayPhi;  // RBP patience; unused by kErr

  static DecayKind Err() { return {Type::kErr, kDefaultDecayPhi}; }
  static DecayKind Rbp(double phi = kDefaultDecayPhi);
};

struct UtilityKind {
  enum class Type { kErr, kIrbu };
  Type type = Type::kErr;
  double phi = kDefaultIrbuPhi;  // iRBU patience; unused by kErr

  static UtilityKind Err() { return {Type::kErr, kDefaultIrbuPhi}; }
  static UtilityKind Irbu(double phi = kDefaultIrbuPhi);
  const char* name() const { return type == Type::kErr ? "ERR" : "iRBU"; }
};

/// (2^g - 1) / 2^g, the probability that an item of grade g satisfies.
double RelProb(int grade);

/// Cascade decay P@k * prod_{j<k} (1 - P@j) from per-rank stop probabilities.
std::vector<double> CascadeDecay(std::span<const double> stop_probs);

/// Cascade decay with P@k = RelProb(grades[k]).
std::vector<double> ErrDecaySequence(std::span<const int> grades);

/// (1 - phi) phi^(k-1) for k = 1..length.
std::vector<double> RbpDecaySequence(std::size_t length, double phi);

/// Dispatches on `kind`; grades are ignored for RBP.
std::vector<double> DecaySequence(const DecayKind& kind,
                                  std::span<const int> grades);

/// 1/k for ERR, phi^k for iRBU. Rank k is 1-based.
double Utility(const UtilityKind& kind, std::size_t k);

}  // namespace gfair

#endif  // GFAIR_USER_MODEL_H_
