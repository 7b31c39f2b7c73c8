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

// gda: generate scenarios, fit classifiers, rasterize decision regions and
// run the synthetic experiments.
//
//   gda generate   --scenario a --seed 7 --out a.csv
//   gda fit        --family qda --train a.csv --out qda.json
//   gda grid       --model qda.json --data a.csv --resolution 0.1 --out qda
//   gda experiment equal-sizes --seed 7 --out report.json --images img/
//
// Exit status: 0 success, 2 usage error, 3 data error, 4 numeric degeneracy.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gda/gda.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config;

  std::string scenario;
  std::uint64_t seed = 0;
  std::string out;
  std::string pair = "0,1";

  std::string family;
  std::string train;
  std::string cov_mode = "unbiased";
  double ridge = 0.0;
  std::string bayes_true_params;
  std::string bayes_mixture;

  std::string model;
  std::string data;
  std::string bounds;
  double resolution = 0.1;

  std::string experiment;
  std::string images;
};

struct Cli {
  Options opts;
  CLI::App app{"Gaussian discriminant analysis toolkit", "gda"};
  CLI::App* generate = nullptr;
  CLI::App* fit = nullptr;
  CLI::App* grid = nullptr;
  CLI::App* experiment = nullptr;

  /// With strict == false no option is required; used for the pass that
  /// only locates --config and the subcommand.
  explicit Cli(bool strict) {
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--config", opts.config, "flat key=value file supplying option defaults");

    generate = app.add_subcommand("generate", "write a built-in scenario as CSV");
    generate->add_option("--scenario", opts.scenario, "scenario id a..g")->required(strict);
    generate->add_option("--seed", opts.seed, "random seed");
    generate->add_option("--pair", opts.pair, "generating Gaussians of two-class scenarios, e.g. 0,1");
    generate->add_option("--out", opts.out, "output CSV (stdout if omitted)");

    fit = app.add_subcommand("fit", "fit a classifier and write its JSON model");
    fit->add_option("--family", opts.family, "lda | qda | gnb | bayes")->required(strict);
    fit->add_option("--train", opts.train, "training CSV")->required(strict);
    fit->add_option("--cov-mode", opts.cov_mode, "mle | unbiased");
    fit->add_option("--ridge", opts.ridge, "added to every covariance diagonal");
    fit->add_option("--bayes-true-params", opts.bayes_true_params,
                    "JSON with the exact class densities for the bayes family");
    fit->add_option("--bayes-mixture", opts.bayes_mixture,
                    "components per class for EM-fitted bayes densities (K, or K1,K2,...)");
    fit->add_option("--seed", opts.seed, "EM seed");
    fit->add_option("--out", opts.out, "output JSON (stdout if omitted)");

    grid = app.add_subcommand("grid", "rasterize the decision regions of a 2-D model");
    grid->add_option("--model", opts.model, "model JSON")->required(strict);
    grid->add_option("--data", opts.data, "CSV whose padded bounding box sets default bounds");
    grid->add_option("--bounds", opts.bounds, "xmin,xmax,ymin,ymax");
    grid->add_option("--resolution", opts.resolution, "cell side");
    grid->add_option("--out", opts.out, "output prefix; writes <out>.csv and <out>.ppm")->required(strict);

    experiment = app.add_subcommand("experiment", "run one synthetic experiment family");
    experiment->add_option("name", opts.experiment,
                           "equal-sizes | small-sizes | different-sizes | multimodal")
        ->required(strict);
    experiment->add_option("--seed", opts.seed, "random seed");
    experiment->add_option("--pair", opts.pair, "generating Gaussians of two-class scenarios");
    experiment->add_option("--bounds", opts.bounds, "xmin,xmax,ymin,ymax");
    experiment->add_option("--resolution", opts.resolution, "cell side");
    experiment->add_option("--out", opts.out, "report JSON (stdout if omitted)");
    experiment->add_option("--images", opts.images, "directory for per-classifier PPM and CSV grids");
  }
};

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw gda::Error(gda::ErrorCode::kIoError, "cannot open config '" + path + "'");
  std::map<std::string, std::string> values;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    const std::string_view view = gda::trim(line);
    if (view.empty() || view.front() == '#') continue;
    const std::size_t eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError(path + ":" + std::to_string(line_no) + ": expected key=value");
    }
    values[std::string(gda::trim(view.substr(0, eq)))] = std::string(gda::trim(view.substr(eq + 1)));
  }
  return values;
}

/// Appends `--key value` for every config entry the command line left unset.
std::vector<std::string> with_config(const Cli& cli, std::vector<std::string> args) {
  const auto values = read_config(cli.opts.config);
  const CLI::App* sub = cli.app.get_subcommands().front();
  for (const auto& [key, value] : values) {
    const CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr) opt = cli.app.get_option_no_throw("--" + key);
    if (opt == nullptr) throw UsageError("config key '" + key + "' is not an option of " + sub->get_name());
    if (opt->count() > 0 || key == "config") continue;
    args.push_back("--" + key);
    args.push_back(value);
  }
  return args;
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  for (std::string_view f : gda::split_fields(text)) {
    try {
      out.push_back(gda::parse_number<double>(f, 0));
    } catch (const gda::Error&) {
      throw UsageError(std::string("bad ") + what + " '" + text + "'");
    }
  }
  return out;
}

std::array<int, 2> parse_pair(const std::string& text) {
  const auto v = parse_list(text, "--pair");
  if (v.size() != 2) throw UsageError("--pair takes two indices, e.g. 0,1");
  return {static_cast<int>(v[0]), static_cast<int>(v[1])};
}

gda::Bounds parse_bounds(const std::string& text) {
  const auto v = parse_list(text, "--bounds");
  if (v.size() != 4) throw UsageError("--bounds takes xmin,xmax,ymin,ymax");
  return {v[0], v[1], v[2], v[3]};
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw gda::Error(gda::ErrorCode::kIoError, "cannot open '" + path + "' for writing");
  out << text;
}

int cmd_generate(const Options& o) {
  const auto spec = gda::builtin_scenario(o.scenario, o.seed, parse_pair(o.pair));
  std::ostringstream csv;
  gda::write_csv(csv, gda::generate(spec));
  write_text(o.out, csv.str());
  return kExitOk;
}

gda::FittedClassifier fit_bayes(const Options& o, const gda::LabeledDataset& train) {
  if (o.bayes_true_params.empty() == o.bayes_mixture.empty()) {
    throw UsageError("the bayes family needs exactly one of --bayes-true-params or --bayes-mixture");
  }
  const gda::Vector priors = gda::estimate_priors(train);
  std::vector<gda::Likelihood> likelihoods;
  if (!o.bayes_true_params.empty()) {
    const gda::Json j = gda::load_json(o.bayes_true_params);
    try {
      for (const gda::Json& c : j.at("classes")) likelihoods.push_back(gda::likelihood_from_json(c));
    } catch (const gda::Json::exception& e) {
      throw gda::Error(gda::ErrorCode::kParseError, o.bayes_true_params + ": " + e.what());
    }
    if (likelihoods.size() != priors.size()) {
      throw gda::Error(gda::ErrorCode::kDimensionMismatch,
                       o.bayes_true_params + " describes " + std::to_string(likelihoods.size()) +
                           " classes, the data has " + std::to_string(priors.size()));
    }
    return gda::make_bayes(priors, std::move(likelihoods));
  }

  const auto ks = parse_list(o.bayes_mixture, "--bayes-mixture");
  if (ks.size() != 1 && ks.size() != priors.size()) {
    throw UsageError("--bayes-mixture takes one K or one K per class");
  }
  gda::Rng rng(o.seed);
  for (std::size_t k = 0; k < priors.size(); ++k) {
    const double kk = ks.size() == 1 ? ks[0] : ks[k];
    if (!(kk >= 1.0) || kk != static_cast<double>(static_cast<std::size_t>(kk))) {
      throw UsageError("--bayes-mixture components must be positive integers");
    }
    const auto rows = train.class_rows(k);
    likelihoods.push_back(gda::em_fit(rows, static_cast<std::size_t>(kk), rng).model);
  }
  return gda::make_bayes(priors, std::move(likelihoods));
}

int cmd_fit(const Options& o) {
  gda::Family family;
  try {
    family = gda::parse_family(o.family);
  } catch (const gda::Error& e) {
    throw UsageError(e.what());
  }
  gda::FitOptions fo;
  if (o.cov_mode == "mle") {
    fo.cov_mode = gda::CovarianceMode::kMLE;
  } else if (o.cov_mode != "unbiased") {
    throw UsageError("--cov-mode must be mle or unbiased");
  }
  if (!(o.ridge >= 0.0)) throw UsageError("--ridge must be nonnegative");
  fo.ridge = o.ridge;

  const gda::LabeledDataset train = gda::load_csv(o.train);
  const gda::FittedClassifier clf =
      family == gda::Family::kBayes ? fit_bayes(o, train) : gda::fit(train, family, fo);
  for (const auto& w : clf.warnings()) std::cerr << "warning: " << w << '\n';
  write_text(o.out, gda::to_json(clf).dump(2) + "\n");
  return kExitOk;
}

int cmd_grid(const Options& o) {
  const gda::FittedClassifier clf = gda::load_classifier(o.model);
  gda::Bounds bounds;
  if (!o.bounds.empty()) {
    bounds = parse_bounds(o.bounds);
  } else if (!o.data.empty()) {
    bounds = gda::default_bounds(gda::load_csv(o.data));
  } else {
    bounds = gda::model_bounds(clf);
  }
  const gda::DecisionGrid grid = gda::compute_grid(clf, bounds, o.resolution);
  gda::save_grid_csv(o.out + ".csv", grid);
  gda::save_ppm(o.out + ".ppm", grid);
  return kExitOk;
}

int cmd_experiment(const Options& o) {
  gda::ExperimentOptions eo;
  eo.seed = o.seed;
  eo.resolution = o.resolution;
  eo.pair = parse_pair(o.pair);
  eo.image_dir = o.images;
  if (!o.bounds.empty()) eo.bounds = parse_bounds(o.bounds);
  try {
    gda::experiment_scenarios(o.experiment);
  } catch (const gda::Error& e) {
    throw UsageError(e.what());
  }
  write_text(o.out, gda::to_json(gda::run_experiment(o.experiment, eo)).dump(2) + "\n");
  return kExitOk;
}

int exit_code_for(const gda::Error& e) {
  if (e.is_numeric()) return kExitNumeric;
  switch (e.code()) {
    case gda::ErrorCode::kInvalidArgument:
    case gda::ErrorCode::kUnknownScenario:
      return kExitUsage;
    default:
      return kExitData;
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    auto cli = std::make_unique<Cli>(false);
    try {
      std::vector<std::string> reversed(args.rbegin(), args.rend());
      cli->app.parse(reversed);
      if (!cli->opts.config.empty()) args = with_config(*cli, args);
      cli = std::make_unique<Cli>(true);
      reversed.assign(args.rbegin(), args.rend());
      cli->app.parse(reversed);
    } catch (const CLI::ParseError& e) {
      return cli->app.exit(e) == 0 ? kExitOk : kExitUsage;
    }
    const Options& o = cli->opts;
    if (cli->generate->parsed()) return cmd_generate(o);
    if (cli->fit->parsed()) return cmd_fit(o);
    if (cli->grid->parsed()) return cmd_grid(o);
    return cmd_experiment(o);
  } catch (const UsageError& e) {
    std::cerr << "gda: " << e.what() << '\n';
    return kExitUsage;
  } catch (const gda::Error& e) {
    std::cerr << "gda: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "gda: " << e.what() << '\n';
    return kExitData;
  }
}
