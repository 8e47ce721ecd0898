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

#include "gfair/divergence.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>

#include <fmt/format.h>

namespace gfair {

namespace {

void CheckSizes(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size() || p.empty()) {
    throw DomainError(fmt::format(
        "divergence over distributions of size {} and {}", p.size(), q.size()));
  }
}

void CheckPair(const Distribution& p, const Distribution& q) {
  if (!SameAttributeSet(p, q)) {
    throw DomainError("divergence between distributions over different sets");
  }
}

void CheckOrdinal(DivergenceKind kind, const Distribution& p) {
  if (!DivergenceAllowed(kind, *p.attribute_set())) {
    throw DomainError(fmt::format(
        "{} needs an ordinal or binary attribute set; '{}' is nominal",
        DivergenceName(kind), p.attribute_set()->name()));
  }
}

// x log2(x/m), with 0 log 0 = 0.
inline double Log2Term(double x, double m) {
  return x > 0.0 ? x * std::log2(x / m) : 0.0;
}

}  // namespace

const char* DivergenceName(DivergenceKind kind) {
  switch (kind) {
    case DivergenceKind::kJsd:
      return "JSD";
    case DivergenceKind::kNmd:
      return "NMD";
    case DivergenceKind::kRnod:
      return "RNOD";
  }
  return "?";
}

DivergenceKind ParseDivergence(const std::string& s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "jsd") return DivergenceKind::kJsd;
  if (lower == "nmd") return DivergenceKind::kNmd;
  if (lower == "rnod") return DivergenceKind::kRnod;
  throw DomainError(fmt::format("unknown divergence '{}'", s));
}

bool DivergenceAllowed(DivergenceKind kind, const AttributeSet& set) {
  if (kind == DivergenceKind::kJsd) return true;
  return set.scale() == Scale::kOrdinal || set.is_binary();
}

double Jsd(std::span<const double> p, std::span<const double> q) {
  CheckSizes(p, q);
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double m = 0.5 * (p[i] + q[i]);
    sum += Log2Term(p[i], m) + Log2Term(q[i], m);
  }
  return std::clamp(0.5 * sum, 0.0, 1.0);
}

double Nmd(std::span<const double> p, std::span<const double> q) {
  CheckSizes(p, q);
  const std::size_t n = p.size();
  if (n < 2) return 0.0;
  double cp = 0.0;
  double cq = 0.0;
  double md = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    cp += p[i];
    cq += q[i];
    md += std::abs(cp - cq);
  }
  return std::clamp(md / static_cast<double>(n - 1), 0.0, 1.0);
}

double Rnod(std::span<const double> p, std::span<const double> target) {
  CheckSizes(p, target);
  const std::size_t n = p.size();
  if (n < 2) return 0.0;
  double od = 0.0;
  std::size_t support = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(target[i] > 0.0)) continue;
    double dw = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double d = p[j] - target[j];
      const double dist = i > j ? static_cast<double>(i - j)
                                : static_cast<double>(j - i);
      dw += dist * d * d;
    }
    od += dw;
    ++support;
  }
  if (support == 0) throw DomainError("RNOD target has empty support");
  od /= static_cast<double>(support);
  return std::clamp(std::sqrt(od / static_cast<double>(n - 1)), 0.0, 1.0);
}

double Divergence(DivergenceKind kind, std::span<const double> p,
                  std::span<const double> target) {
  switch (kind) {
    case DivergenceKind::kJsd:
      return Jsd(p, target);
    case DivergenceKind::kNmd:
      return Nmd(p, target);
    case DivergenceKind::kRnod:
      return Rnod(p, target);
  }
  throw DomainError("unknown divergence kind");
}

double Jsd(const Distribution& p, const Distribution& q) {
  CheckPair(p, q);
  return Jsd(p.probs(), q.probs());
}

double Nmd(const Distribution& p, const Distribution& q) {
  CheckPair(p, q);
  CheckOrdinal(DivergenceKind::kNmd, p);
  return Nmd(p.probs(), q.probs());
}

double Rnod(const Distribution& p, const Distribution& target) {
  CheckPair(p, target);
  CheckOrdinal(DivergenceKind::kRnod, p);
  return Rnod(p.probs(), target.probs());
}

double Divergence(DivergenceKind kind, const Distribution& p,
                  const Distribution& target) {
  CheckPair(p, target);
  CheckOrdinal(kind, p);
  return Divergence(kind, p.probs(), target.probs());
}

double DistrSim(DivergenceKind kind, const Distribution& p,
                const Distribution& target) {
  return 1.0 - Divergence(kind, p, target);
}

double Kld(std::span<const double> p, std::span<const double> target,
           double epsilon) {
  CheckSizes(p, target);
  if (!(epsilon >= 0.0)) throw DomainError("negative smoothing epsilon");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] > 0.0)) continue;
    double t = target[i];
    if (!(t > 0.0)) {
      if (epsilon == 0.0) {
        throw EvaluationError(
            "KL divergence undefined: zero target probability under "
            "positive achieved probability");
      }
      t = epsilon;
    }
    sum += p[i] * std::log(p[i] / t);
  }
  return std::max(sum, 0.0);
}

double Kld(const Distribution& p, const Distribution& target, double epsilon) {
  CheckPair(p, target);
  return Kld(p.probs(), target.probs(), epsilon);
}

}  // namespace gfair
