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

// The four synthetic experiment families and their JSON report.
//
//   equal-sizes      scenarios a, b
//   small-sizes      scenarios c, d
//   different-sizes  scenarios e, f
//   multimodal       scenario g
//
// For each scenario the data is split 80/20 per class, LDA, QDA and naive
// Bayes are fitted on the training part, and a plug-in Bayes classifier is
// built with the training priors and the generating densities. In the
// multimodal run the multi-mode class gets an EM-fitted mixture instead,
// with as many components as the class has modes. All four classifiers
// are rasterized over the same fixed box so that runs with different data
// compare identical regions.
//
// Report schema:
//   {
//     "experiment": name, "seed": s, "resolution": h,
//     "bounds": {"xmin", "xmax", "ymin", "ymax"}, "grid": {"cols", "rows"},
//     "scenarios": [{
//       "id": "a", "data_seed": u64, "class_counts": [...],
//       "train_counts": [...], "test_counts": [...],
//       "classifiers": {"lda": {"accuracy": f, "cell_counts": [...]}, ...},
//       "agreement": {"lda-qda": pct, ...},           (percent of cells)
//       "fitted_mixtures": [{"class": k, "mixture": {...}, "iterations": n,
//                            "converged": b, "log_likelihood": f}]   (multimodal)
//     }]
//   }

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "gda/datagen.hpp"
#include "gda/discriminant.hpp"
#include "gda/error.hpp"
#include "gda/estimation.hpp"
#include "gda/gaussian.hpp"
#include "gda/grid.hpp"
#include "gda/mixture.hpp"
#include "gda/serialize.hpp"

namespace gda {

inline constexpr std::array<std::string_view, 4> kExperimentNames{"equal-sizes", "small-sizes",
                                                                  "different-sizes", "multimodal"};
inline constexpr std::array<Family, 4> kExperimentFamilies{Family::kLDA, Family::kQDA, Family::kGNB,
                                                           Family::kBayes};

inline std::vector<std::string> experiment_scenarios(std::string_view name) {
  if (name == "equal-sizes") return {"a", "b"};
  if (name == "small-sizes") return {"c", "d"};
  if (name == "different-sizes") return {"e", "f"};
  if (name == "multimodal") return {"g"};
  throw Error(ErrorCode::kInvalidArgument,
              "unknown experiment '" + std::string(name) +
                  "' (expected equal-sizes, small-sizes, different-sizes or multimodal)");
}

/// mean +/- 3 sd of every reference Gaussian.
inline Bounds reference_bounds() {
  Bounds b{INFINITY, -INFINITY, INFINITY, -INFINITY};
  for (const auto& g : reference_gaussians()) {
    const double sx = 3.0 * std::sqrt(g.cov(0, 0));
    const double sy = 3.0 * std::sqrt(g.cov(1, 1));
    b.xmin = std::min(b.xmin, g.mean[0] - sx);
    b.xmax = std::max(b.xmax, g.mean[0] + sx);
    b.ymin = std::min(b.ymin, g.mean[1] - sy);
    b.ymax = std::max(b.ymax, g.mean[1] + sy);
  }
  return b;
}

struct Split {
  LabeledDataset train;
  LabeledDataset test;
};

/// Per-class shuffle, then round(test_fraction * n_k) rows go to the test
/// part, capped so at least two rows per class stay in training.
inline Split stratified_split(const LabeledDataset& ds, double test_fraction, Rng& rng) {
  Split s{LabeledDataset(ds.dim(), ds.num_classes()), LabeledDataset(ds.dim(), ds.num_classes())};
  for (std::size_t k = 0; k < ds.num_classes(); ++k) {
    std::vector<Vector> rows = ds.class_rows(k);
    for (std::size_t i = rows.size(); i > 1; --i) std::swap(rows[i - 1], rows[rng.uniform_index(i)]);
    std::size_t n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(rows.size())));
    n_test = rows.size() >= 2 ? std::min(n_test, rows.size() - 2) : 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      (i < n_test ? s.test : s.train).add(std::move(rows[i]), static_cast<int>(k));
    }
  }
  return s;
}

inline double accuracy(const FittedClassifier& clf, const LabeledDataset& ds) {
  if (ds.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) hits += predict(clf, ds.rows()[i]) == ds.labels()[i];
  return static_cast<double>(hits) / static_cast<double>(ds.size());
}

struct ExperimentOptions {
  std::uint64_t seed = 0;
  double resolution = 0.1;
  Bounds bounds = reference_bounds();
  double test_fraction = 0.2;
  EmOptions em;
  std::array<int, 2> pair = {0, 1};
  std::string image_dir;  ///< when set, writes <id>_<family>.ppm and .csv here
};

struct FittedMixtureInfo {
  std::size_t class_index;
  EmResult fit;
};

struct ScenarioResult {
  std::string id;
  std::uint64_t data_seed;
  std::vector<std::size_t> class_counts, train_counts, test_counts;
  std::vector<FittedClassifier> classifiers;  ///< in kExperimentFamilies order
  std::vector<DecisionGrid> grids;
  std::vector<double> accuracies;
  std::vector<FittedMixtureInfo> mixtures;

  std::size_t family_index(Family f) const {
    for (std::size_t i = 0; i < kExperimentFamilies.size(); ++i) {
      if (kExperimentFamilies[i] == f) return i;
    }
    throw Error(ErrorCode::kInvalidArgument, "family not in experiment");
  }

  /// Percent of grid cells on which two classifiers agree.
  double agreement_pct(Family a, Family b) const {
    return 100.0 * agreement(grids[family_index(a)], grids[family_index(b)]);
  }
  double accuracy_of(Family f) const { return accuracies[family_index(f)]; }
  std::vector<std::size_t> cells_of(Family f) const { return grids[family_index(f)].cell_counts(); }
};

struct ExperimentResult {
  std::string name;
  ExperimentOptions options;
  std::vector<ScenarioResult> scenarios;
};

inline ScenarioResult run_scenario(std::string_view id, const ExperimentOptions& opts) {
  ScenarioResult r;
  r.id = std::string(id);
  r.data_seed = mix_seed(opts.seed, static_cast<std::uint64_t>(id.front()));
  const ScenarioSpec spec = builtin_scenario(id, r.data_seed, opts.pair);
  const LabeledDataset data = generate(spec);
  Rng split_rng(mix_seed(r.data_seed, 1));
  const Split split = stratified_split(data, opts.test_fraction, split_rng);
  r.class_counts = data.class_counts();
  r.train_counts = split.train.class_counts();
  r.test_counts = split.test.class_counts();

  for (Family f : kExperimentFamilies) {
    if (f != Family::kBayes) {
      r.classifiers.push_back(fit(split.train, f));
      continue;
    }
    Rng em_rng(mix_seed(r.data_seed, 2));
    std::vector<Likelihood> likelihoods;
    for (std::size_t k = 0; k < spec.classes.size(); ++k) {
      const ClassSpec& cls = spec.classes[k];
      if (cls.modes.size() == 1) {
        likelihoods.push_back(true_likelihood(cls));
        continue;
      }
      const std::vector<Vector> rows = split.train.class_rows(k);
      EmResult em = em_fit(rows, cls.modes.size(), em_rng, opts.em);
      likelihoods.push_back(em.model);
      r.mixtures.push_back({k, std::move(em)});
    }
    r.classifiers.push_back(make_bayes(estimate_priors(split.train), std::move(likelihoods)));
  }

  for (std::size_t i = 0; i < r.classifiers.size(); ++i) {
    r.grids.push_back(compute_grid(r.classifiers[i], opts.bounds, opts.resolution));
    r.accuracies.push_back(accuracy(r.classifiers[i], split.test));
    if (!opts.image_dir.empty()) {
      const std::filesystem::path base =
          std::filesystem::path(opts.image_dir) /
          (r.id + "_" + std::string(family_name(kExperimentFamilies[i])));
      save_ppm(base.string() + ".ppm", r.grids.back());
      save_grid_csv(base.string() + ".csv", r.grids.back());
    }
  }
  return r;
}

inline ExperimentResult run_experiment(std::string_view name, const ExperimentOptions& opts) {
  ExperimentResult result{std::string(name), opts, {}};
  const auto ids = experiment_scenarios(name);
  if (!opts.image_dir.empty()) std::filesystem::create_directories(opts.image_dir);
  for (const auto& id : ids) result.scenarios.push_back(run_scenario(id, opts));
  return result;
}

inline Json to_json(const ExperimentResult& result) {
  const Bounds& b = result.options.bounds;
  Json scenarios = Json::array();
  for (const ScenarioResult& s : result.scenarios) {
    Json classifiers = Json::object();
    Json agree = Json::object();
    for (std::size_t i = 0; i < kExperimentFamilies.size(); ++i) {
      const std::string name(family_name(kExperimentFamilies[i]));
      classifiers[name] = {{"accuracy", s.accuracies[i]}, {"cell_counts", s.grids[i].cell_counts()}};
      for (std::size_t j = i + 1; j < kExperimentFamilies.size(); ++j) {
        agree[name + "-" + std::string(family_name(kExperimentFamilies[j]))] =
            100.0 * agreement(s.grids[i], s.grids[j]);
      }
    }
    Json js{{"id", s.id},
            {"data_seed", s.data_seed},
            {"class_counts", s.class_counts},
            {"train_counts", s.train_counts},
            {"test_counts", s.test_counts},
            {"classifiers", classifiers},
            {"agreement", agree}};
    if (!s.mixtures.empty()) {
      Json mixtures = Json::array();
      for (const auto& m : s.mixtures) {
        mixtures.push_back({{"class", m.class_index},
                            {"mixture", mixture_to_json(m.fit.model)},
                            {"iterations", m.fit.iterations},
                            {"converged", m.fit.converged},
                            {"log_likelihood", m.fit.log_likelihood_trace.back()}});
      }
      js["fitted_mixtures"] = mixtures;
    }
    scenarios.push_back(std::move(js));
  }
  const DecisionGrid& g0 = result.scenarios.front().grids.front();
  return Json{{"experiment", result.name},
              {"seed", result.options.seed},
              {"resolution", result.options.resolution},
              {"bounds", {{"xmin", b.xmin}, {"xmax", b.xmax}, {"ymin", b.ymin}, {"ymax", b.ymax}}},
              {"grid", {{"cols", g0.cols()}, {"rows", g0.rows()}}},
              {"scenarios", scenarios}};
}

}  // namespace gda
