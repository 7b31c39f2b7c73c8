// Copyright 2026 The gda Authors
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

// Seeded synthetic scenarios built from three fixed 2-D Gaussians.
//
//   a  three classes, 200 each            e  three classes, 200/100/10
//   b  two classes, 200 each              f  two classes, 200/10
//   c  three classes, 10 each             g  two classes: 400 (two modes of
//   d  two classes, 10 each                  200 at Gaussians 1 and 2) and
//                                            200 at Gaussian 3
//
// Two-class scenarios use Gaussians 1 and 2 unless another pair is given.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gda/discriminant.hpp"
#include "gda/error.hpp"
#include "gda/estimation.hpp"
#include "gda/gaussian.hpp"
#include "gda/linalg.hpp"
#include "gda/mixture.hpp"

namespace gda {

struct ModeSpec {
  Vector mean;
  SymMatrix cov;
  std::size_t count;
};

struct ClassSpec {
  std::vector<ModeSpec> modes;

  std::size_t count() const {
    std::size_t n = 0;
    for (const auto& m : modes) n += m.count;
    return n;
  }
};

struct ScenarioSpec {
  std::string id;
  std::vector<ClassSpec> classes;
  std::uint64_t seed = 0;

  std::size_t dim() const { return classes.front().modes.front().mean.size(); }
};

struct GaussianSpec {
  Vector mean;
  SymMatrix cov;
};

/// The three generating Gaussians shared by every built-in scenario.
inline std::array<GaussianSpec, 3> reference_gaussians() {
  return {GaussianSpec{{-4.0, 4.0}, SymMatrix{{10.0, 1.0}, {1.0, 5.0}}},
          GaussianSpec{{3.0, -3.0}, SymMatrix{{3.0, 0.0}, {0.0, 4.0}}},
          GaussianSpec{{-3.0, 3.0}, SymMatrix{{6.0, 1.5}, {1.5, 4.0}}}};
}

inline ScenarioSpec builtin_scenario(std::string_view id, std::uint64_t seed,
                                     std::array<int, 2> pair = {0, 1}) {
  const auto g = reference_gaussians();
  for (int p : pair) {
    if (p < 0 || p > 2) throw Error(ErrorCode::kInvalidArgument, "scenario pair index out of range");
  }
  if (pair[0] == pair[1]) throw Error(ErrorCode::kInvalidArgument, "scenario pair must be distinct");

  auto single = [&](int which, std::size_t count) {
    return ClassSpec{{ModeSpec{g[which].mean, g[which].cov, count}}};
  };
  auto three = [&](std::size_t n1, std::size_t n2, std::size_t n3) {
    return std::vector<ClassSpec>{single(0, n1), single(1, n2), single(2, n3)};
  };
  auto two = [&](std::size_t n1, std::size_t n2) {
    return std::vector<ClassSpec>{single(pair[0], n1), single(pair[1], n2)};
  };

  ScenarioSpec spec{std::string(id), {}, seed};
  if (id == "a") {
    spec.classes = three(200, 200, 200);
  } else if (id == "b") {
    spec.classes = two(200, 200);
  } else if (id == "c") {
    spec.classes = three(10, 10, 10);
  } else if (id == "d") {
    spec.classes = two(10, 10);
  } else if (id == "e") {
    spec.classes = three(200, 100, 10);
  } else if (id == "f") {
    spec.classes = two(200, 10);
  } else if (id == "g") {
    spec.classes = {ClassSpec{{ModeSpec{g[0].mean, g[0].cov, 200}, ModeSpec{g[1].mean, g[1].cov, 200}}},
                    single(2, 200)};
  } else {
    throw Error(ErrorCode::kUnknownScenario, "unknown scenario '" + std::string(id) + "' (expected a..g)");
  }
  return spec;
}

/// Draws every mode of every class in order from one stream seeded by
/// spec.seed; class k's rows carry label k.
inline LabeledDataset generate(const ScenarioSpec& spec) {
  if (spec.classes.empty()) throw Error(ErrorCode::kInvalidArgument, "scenario has no classes");
  LabeledDataset ds(spec.dim(), spec.classes.size());
  Rng rng(spec.seed);
  for (std::size_t k = 0; k < spec.classes.size(); ++k) {
    for (const ModeSpec& mode : spec.classes[k].modes) {
      const GaussianParams params(mode.mean, mode.cov);
      for (Vector& x : sample(params, mode.count, rng)) ds.add(std::move(x), static_cast<int>(k));
    }
  }
  return ds;
}

/// The exact class-conditional density of a generated class: a Gaussian for
/// one mode, otherwise a mixture weighted by the mode counts.
inline Likelihood true_likelihood(const ClassSpec& cls) {
  if (cls.modes.size() == 1) return GaussianParams(cls.modes[0].mean, cls.modes[0].cov);
  std::vector<MixtureComponent> components;
  for (const auto& m : cls.modes) {
    components.push_back({static_cast<double>(m.count), GaussianParams(m.mean, m.cov)});
  }
  return MixtureModel(std::move(components));
}

}  // namespace gda
