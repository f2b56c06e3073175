#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isl/jet.hpp"

namespace isl {

enum class ChartId { main, inverse };

std::string to_string(ChartId c);

/// Rectangular chart with a uniform node grid; the inverse chart uses xi' = 1/xi.
struct Chart {
  ChartId id = ChartId::main;
  double x_min = -1.0, x_max = 1.0, y_min = -1.0, y_max = 1.0;
  int nx = 64, ny = 64;

  void validate() const;
  double hx() const { return (x_max - x_min) / (nx - 1); }
  double hy() const { return (y_max - y_min) / (ny - 1); }
  double x(int i) const { return x_min + i * hx(); }
  double y(int j) const { return y_min + j * hy(); }
  int size() const { return nx * ny; }
  int index(int i, int j) const { return j * nx + i; }
  /// Characteristic length used to scale finite-difference steps.
  double scale() const;
  /// Node indices of (x, y) if it lies on a node (to 1e-9 relative to the spacing).
  std::optional<std::pair<int, int>> node(double x, double y) const;
};

template <class T>
struct NodeValues {
  Chart chart;
  std::vector<T> data;

  NodeValues() = default;
  NodeValues(const Chart& c, const T& init) : chart(c), data(static_cast<size_t>(c.size()), init) {}
  T& at(int i, int j) { return data[static_cast<size_t>(chart.index(i, j))]; }
  const T& at(int i, int j) const { return data[static_cast<size_t>(chart.index(i, j))]; }
};

/// Point-wise scalar field on a chart with its supremum over the interior.
struct GridReport {
  Chart chart;
  std::vector<double> values;
  int margin = 1;
  double sup = 0.0;
  int sup_i = -1, sup_j = -1;

  double at(int i, int j) const { return values[static_cast<size_t>(chart.index(i, j))]; }
};

/// Evaluates f at every node (in parallel) and reduces the sup over nodes at least `margin` from the edge.
GridReport sweep(const Chart& chart, const std::function<double(int i, int j)>& f, int margin = 1);

/// Finite-difference weights for the deriv-th derivative at x0 on arbitrary nodes (Fornberg).
std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int deriv);

/// Matrix values on chart nodes with jets from fourth-order finite differences
/// (central in the interior, one-sided windows near the edges). Off-node evaluation is a domain error.
class GridMatrixField {
 public:
  GridMatrixField() = default;
  explicit GridMatrixField(NodeValues<Mat> values);

  const Chart& chart() const { return values_.chart; }
  const NodeValues<Mat>& values() const { return values_; }
  const Mat& at(int i, int j) const { return values_.at(i, j); }

  /// Jet at a node, total order <= 3.
  MatJet jet_at(int i, int j, int order) const;
  MatJet jet(double x, double y, int order) const;

 private:
  Mat derivative(int i, int j, int a, int b) const;
  NodeValues<Mat> values_;
};

/// Stores exact jets per node (for recovered potentials); off-node evaluation is a domain error.
class JetGrid {
 public:
  JetGrid() = default;
  explicit JetGrid(NodeValues<MatJet> jets) : jets_(std::move(jets)) {}
  const Chart& chart() const { return jets_.chart; }
  const MatJet& at(int i, int j) const { return jets_.at(i, j); }
  MatJet jet(double x, double y, int order) const;

 private:
  NodeValues<MatJet> jets_;
};

}  // namespace isl
