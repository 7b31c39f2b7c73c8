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

// JSON form of a FittedClassifier:
//
//   {
//     "format": "gda-classifier", "version": 1,
//     "family": "lda" | "qda" | "gnb" | "bayes",
//     "dim": d, "labels": [...], "priors": [...],
//     "shared_cov": [[...]],                        (LDA only)
//     "classes": [
//       {"kind": "gaussian", "mean": [...], "cov": [[...]]}
//       {"kind": "diagonal", "feature_params": {"means": [...], "variances": [...]}}
//       {"kind": "mixture", "mixture": {"weights": [...],
//                                       "components": [{"mean": [...], "cov": [[...]]}]}}
//     ]
//   }
//
// Doubles are written in shortest round-trip form, so a reloaded model
// predicts bit-identically.

#pragma once

#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "gda/discriminant.hpp"
#include "gda/error.hpp"
#include "gda/gaussian.hpp"
#include "gda/linalg.hpp"
#include "gda/mixture.hpp"

namespace gda {

using Json = nlohmann::json;

inline Json matrix_to_json(const SymMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline SymMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::kParseError, "matrix must be a non-empty array");
  const std::size_t n = j.size();
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n) {
      throw Error(ErrorCode::kParseError, "matrix must be square");
    }
    for (std::size_t c = 0; c < n; ++c) m(r, c) = j[r][c].get<double>();
  }
  return SymMatrix(m);
}

inline Json gaussian_to_json(const GaussianParams& g) {
  return Json{{"mean", g.mean()}, {"cov", matrix_to_json(g.cov())}};
}

inline GaussianParams gaussian_from_json(const Json& j) {
  return GaussianParams(j.at("mean").get<Vector>(), matrix_from_json(j.at("cov")));
}

inline Json mixture_to_json(const MixtureModel& m) {
  Json weights = Json::array();
  Json components = Json::array();
  for (const auto& c : m.components()) {
    weights.push_back(c.weight);
    components.push_back(gaussian_to_json(c.params));
  }
  return Json{{"weights", weights}, {"components", components}};
}

inline MixtureModel mixture_from_json(const Json& j) {
  const auto weights = j.at("weights").get<Vector>();
  const Json& comps = j.at("components");
  if (weights.size() != comps.size()) {
    throw Error(ErrorCode::kParseError, "mixture weights and components differ in length");
  }
  std::vector<MixtureComponent> out;
  for (std::size_t i = 0; i < weights.size(); ++i) out.push_back({weights[i], gaussian_from_json(comps[i])});
  return MixtureModel(std::move(out));
}

inline Json likelihood_to_json(const Likelihood& l) {
  if (const auto* g = std::get_if<GaussianParams>(&l)) {
    Json j = gaussian_to_json(*g);
    j["kind"] = "gaussian";
    return j;
  }
  if (const auto* d = std::get_if<DiagonalGaussian>(&l)) {
    return Json{{"kind", "diagonal"},
                {"feature_params", {{"means", d->means}, {"variances", d->variances}}}};
  }
  return Json{{"kind", "mixture"}, {"mixture", mixture_to_json(std::get<MixtureModel>(l))}};
}

inline Likelihood likelihood_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "gaussian") return gaussian_from_json(j);
  if (kind == "diagonal") {
    const Json& fp = j.at("feature_params");
    return DiagonalGaussian{fp.at("means").get<Vector>(), fp.at("variances").get<Vector>()};
  }
  if (kind == "mixture") return mixture_from_json(j.at("mixture"));
  throw Error(ErrorCode::kParseError, "unknown class kind '" + kind + "'");
}

inline Json to_json(const FittedClassifier& clf) {
  Json classes = Json::array();
  for (const auto& c : clf.classes()) classes.push_back(likelihood_to_json(c.likelihood));
  Json j{{"format", "gda-classifier"},
         {"version", 1},
         {"family", std::string(family_name(clf.family()))},
         {"dim", clf.dim()},
         {"labels", clf.labels()},
         {"priors", clf.priors()},
         {"classes", classes}};
  if (clf.shared_cov()) j["shared_cov"] = matrix_to_json(*clf.shared_cov());
  return j;
}

inline FittedClassifier classifier_from_json(const Json& j) {
  try {
    const Family family = parse_family(j.at("family").get<std::string>());
    const auto priors = j.at("priors").get<Vector>();
    const Json& classes = j.at("classes");
    if (priors.size() != classes.size()) {
      throw Error(ErrorCode::kParseError, "priors and classes differ in length");
    }
    if (family == Family::kLDA) {
      const SymMatrix shared = matrix_from_json(j.at("shared_cov"));
      std::vector<Vector> means;
      for (const Json& c : classes) means.push_back(c.at("mean").get<Vector>());
      return make_lda(priors, means, shared);
    }
    std::vector<ClassModel> models;
    for (std::size_t k = 0; k < priors.size(); ++k) {
      models.push_back({priors[k], likelihood_from_json(classes[k])});
    }
    return FittedClassifier(family, std::move(models));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("model JSON: ") + e.what());
  }
}

inline void save_classifier(const std::string& path, const FittedClassifier& clf) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open '" + path + "' for writing");
  out << to_json(clf).dump(2) << '\n';
}

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, path + ": " + e.what());
  }
}

inline FittedClassifier load_classifier(const std::string& path) {
  return classifier_from_json(load_json(path));
}

}  // namespace gda
