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

// Decision-region rasters for 2-D classifiers.
//
// A grid covers [xmin, xmax] x [ymin, ymax] with square cells of side h:
// cols = ceil((xmax - xmin) / h), rows = ceil((ymax - ymin) / h). Cells are
// stored row-major with row 0 at the top; cell (r, c) is labeled by the
// prediction at its center (xmin + (c + 1/2) h, ymax - (r + 1/2) h).
//
// Grid CSV:
//   xmin,xmax,ymin,ymax,resolution,cols,rows,classes
//   <the eight values>
//   <rows lines of cols comma-separated labels>
//
// PPM: binary P6, one pixel per cell, color = kPalette[label % 8].

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "gda/csv.hpp"
#include "gda/discriminant.hpp"
#include "gda/error.hpp"
#include "gda/estimation.hpp"

namespace gda {

struct Bounds {
  double xmin;
  double xmax;
  double ymin;
  double ymax;

  friend bool operator==(const Bounds&, const Bounds&) = default;
};

struct Rgb {
  std::uint8_t r, g, b;
};

inline constexpr std::array<Rgb, 8> kPalette{{
    {31, 119, 180},   // 0 blue
    {255, 127, 14},   // 1 orange
    {44, 160, 44},    // 2 green
    {214, 39, 40},    // 3 red
    {148, 103, 189},  // 4 purple
    {140, 86, 75},    // 5 brown
    {227, 119, 194},  // 6 pink
    {127, 127, 127},  // 7 gray
}};

class DecisionGrid {
 public:
  DecisionGrid(Bounds bounds, double resolution, std::size_t num_classes)
      : bounds_(bounds), resolution_(resolution), num_classes_(num_classes) {
    if (!(resolution > 0.0)) throw Error(ErrorCode::kInvalidArgument, "grid resolution must be positive");
    if (!(bounds.xmax > bounds.xmin) || !(bounds.ymax > bounds.ymin)) {
      throw Error(ErrorCode::kInvalidArgument, "grid bounds must satisfy min < max");
    }
    cols_ = static_cast<std::size_t>(std::ceil((bounds.xmax - bounds.xmin) / resolution));
    rows_ = static_cast<std::size_t>(std::ceil((bounds.ymax - bounds.ymin) / resolution));
    labels_.assign(rows_ * cols_, 0);
  }

  const Bounds& bounds() const noexcept { return bounds_; }
  double resolution() const noexcept { return resolution_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t num_classes() const noexcept { return num_classes_; }
  const std::vector<int>& labels() const noexcept { return labels_; }

  double x_center(std::size_t c) const {
    return bounds_.xmin + (static_cast<double>(c) + 0.5) * resolution_;
  }
  double y_center(std::size_t r) const {
    return bounds_.ymax - (static_cast<double>(r) + 0.5) * resolution_;
  }

  int at(std::size_t r, std::size_t c) const { return labels_[r * cols_ + c]; }

  void set(std::size_t r, std::size_t c, int label) {
    if (label < 0 || static_cast<std::size_t>(label) >= num_classes_) {
      throw Error(ErrorCode::kInvalidArgument, "grid label out of range");
    }
    labels_[r * cols_ + c] = label;
  }

  /// Number of cells assigned to each class (the region-area proxy).
  std::vector<std::size_t> cell_counts() const {
    std::vector<std::size_t> counts(num_classes_, 0);
    for (int l : labels_) ++counts[static_cast<std::size_t>(l)];
    return counts;
  }

  friend bool operator==(const DecisionGrid&, const DecisionGrid&) = default;

 private:
  Bounds bounds_;
  double resolution_;
  std::size_t num_classes_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<int> labels_;
};

inline DecisionGrid compute_grid(const FittedClassifier& clf, Bounds bounds, double resolution) {
  if (clf.dim() != 2) {
    throw Error(ErrorCode::kNonPlanarModel,
                "decision grids need a 2-D model, got dim " + std::to_string(clf.dim()));
  }
  DecisionGrid grid(bounds, resolution, clf.num_classes());
  Vector x(2);
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    x[1] = grid.y_center(r);
    for (std::size_t c = 0; c < grid.cols(); ++c) {
      x[0] = grid.x_center(c);
      grid.set(r, c, predict(clf, x));
    }
  }
  return grid;
}

/// Fraction of cells on which two same-shaped grids agree, in [0, 1].
inline double agreement(const DecisionGrid& a, const DecisionGrid& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "grids differ in shape");
  }
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.labels().size(); ++i) same += a.labels()[i] == b.labels()[i];
  return static_cast<double>(same) / static_cast<double>(a.labels().size());
}

/// Bounding box of the data padded on each axis by `pad_sd` pooled standard
/// deviations (pooled from the per-class MLE covariances).
inline Bounds default_bounds(const LabeledDataset& ds, double pad_sd = 2.0) {
  if (ds.dim() != 2) throw Error(ErrorCode::kNonPlanarModel, "default bounds need 2-D data");
  if (ds.empty()) throw Error(ErrorCode::kEmptyDataset, "no data to bound");
  Bounds b{ds.rows()[0][0], ds.rows()[0][0], ds.rows()[0][1], ds.rows()[0][1]};
  for (const Vector& x : ds.rows()) {
    b.xmin = std::min(b.xmin, x[0]);
    b.xmax = std::max(b.xmax, x[0]);
    b.ymin = std::min(b.ymin, x[1]);
    b.ymax = std::max(b.ymax, x[1]);
  }
  std::vector<ClassCovariance> covs;
  for (std::size_t k = 0; k < ds.num_classes(); ++k) {
    if (ds.class_count(k) > 0) covs.push_back({ds.class_count(k), estimate_cov(ds, k, CovarianceMode::kMLE)});
  }
  const SymMatrix pooled = pooled_cov(covs);
  double px = pad_sd * std::sqrt(pooled(0, 0));
  double py = pad_sd * std::sqrt(pooled(1, 1));
  if (!(px > 0.0)) px = 1.0;
  if (!(py > 0.0)) py = 1.0;
  return {b.xmin - px, b.xmax + px, b.ymin - py, b.ymax + py};
}

/// Box covering mean +/- pad_sd standard deviations of every Gaussian the
/// model holds; used when no data is available.
inline Bounds model_bounds(const FittedClassifier& clf, double pad_sd = 3.0) {
  if (clf.dim() != 2) throw Error(ErrorCode::kNonPlanarModel, "model bounds need a 2-D model");
  Bounds b{INFINITY, -INFINITY, INFINITY, -INFINITY};
  auto cover = [&](std::span<const double> mean, double vx, double vy) {
    b.xmin = std::min(b.xmin, mean[0] - pad_sd * std::sqrt(vx));
    b.xmax = std::max(b.xmax, mean[0] + pad_sd * std::sqrt(vx));
    b.ymin = std::min(b.ymin, mean[1] - pad_sd * std::sqrt(vy));
    b.ymax = std::max(b.ymax, mean[1] + pad_sd * std::sqrt(vy));
  };
  for (const auto& cls : clf.classes()) {
    if (const auto* g = std::get_if<GaussianParams>(&cls.likelihood)) {
      cover(g->mean(), g->cov()(0, 0), g->cov()(1, 1));
    } else if (const auto* d = std::get_if<DiagonalGaussian>(&cls.likelihood)) {
      cover(d->means, d->variances[0], d->variances[1]);
    } else {
      for (const auto& c : std::get<MixtureModel>(cls.likelihood).components()) {
        cover(c.params.mean(), c.params.cov()(0, 0), c.params.cov()(1, 1));
      }
    }
  }
  return b;
}

inline void write_grid_csv(std::ostream& out, const DecisionGrid& grid) {
  const Bounds& b = grid.bounds();
  out << "xmin,xmax,ymin,ymax,resolution,cols,rows,classes\n"
      << format_double(b.xmin) << ',' << format_double(b.xmax) << ',' << format_double(b.ymin) << ','
      << format_double(b.ymax) << ',' << format_double(grid.resolution()) << ',' << grid.cols() << ','
      << grid.rows() << ',' << grid.num_classes() << '\n';
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    for (std::size_t c = 0; c < grid.cols(); ++c) {
      if (c > 0) out << ',';
      out << grid.at(r, c);
    }
    out << '\n';
  }
}

inline DecisionGrid read_grid_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "xmin,xmax,ymin,ymax,resolution,cols,rows,classes") {
    throw Error(ErrorCode::kParseError, "line 1: not a decision grid header");
  }
  if (!std::getline(in, line)) throw Error(ErrorCode::kParseError, "line 2: missing grid geometry");
  const auto f = split_fields(trim(line));
  if (f.size() != 8) throw Error(ErrorCode::kParseError, "line 2: expected 8 fields");
  const Bounds b{parse_number<double>(f[0], 2), parse_number<double>(f[1], 2),
                 parse_number<double>(f[2], 2), parse_number<double>(f[3], 2)};
  DecisionGrid grid(b, parse_number<double>(f[4], 2), parse_number<std::size_t>(f[7], 2));
  if (grid.cols() != parse_number<std::size_t>(f[5], 2) ||
      grid.rows() != parse_number<std::size_t>(f[6], 2)) {
    throw Error(ErrorCode::kParseError, "line 2: cols/rows inconsistent with bounds and resolution");
  }
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    const std::size_t line_no = r + 3;
    if (!std::getline(in, line)) {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": missing grid row");
    }
    const auto cells = split_fields(trim(line));
    if (cells.size() != grid.cols()) {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": wrong number of cells");
    }
    for (std::size_t c = 0; c < grid.cols(); ++c) grid.set(r, c, parse_number<int>(cells[c], line_no));
  }
  return grid;
}

inline void write_ppm(std::ostream& out, const DecisionGrid& grid) {
  out << "P6\n" << grid.cols() << ' ' << grid.rows() << "\n255\n";
  for (int label : grid.labels()) {
    const Rgb& color = kPalette[static_cast<std::size_t>(label) % kPalette.size()];
    const char px[3] = {static_cast<char>(color.r), static_cast<char>(color.g), static_cast<char>(color.b)};
    out.write(px, 3);
  }
}

inline void save_grid_csv(const std::string& path, const DecisionGrid& grid) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open '" + path + "' for writing");
  write_grid_csv(out, grid);
}

inline DecisionGrid load_grid_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  return read_grid_csv(in);
}

inline void save_ppm(const std::string& path, const DecisionGrid& grid) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open '" + path + "' for writing");
  write_ppm(out, grid);
}

}  // namespace gda
