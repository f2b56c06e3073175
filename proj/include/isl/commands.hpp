#pragma once

#include <array>
#include <ostream>
#include <string>
#include <vector>

#include "isl/config.hpp"
#include "isl/surface.hpp"

namespace isl {

/// 0 pass, 1 numeric failure, 2 usage or configuration error.
int exit_code(ErrorKind k);

/// Mesh of a surface sampled on the chart nodes.
struct MeshExport {
  std::vector<std::array<double, 3>> vertices;
  /// 0-based vertex indices; two triangles per grid quad.
  std::vector<std::array<int, 3>> faces;
  /// Per node: x, y, then all basis coordinates.
  std::vector<std::vector<double>> table;
  int dim = 0;
};

/// `axes` are 1-based basis indices projected into the OBJ vertices.
MeshExport mesh_export(const NodeValues<Mat>& values, const OrthonormalBasis& basis, const std::vector<int>& axes);
void write_obj(std::ostream& out, const MeshExport& m);
void write_csv(std::ostream& out, const MeshExport& m);

struct CheckItem {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  /// Pass when value <= threshold (or >= for lower bounds).
  bool lower_bound = false;
  std::string note;
  bool pass() const { return lower_bound ? value >= threshold : value <= threshold; }
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckItem> items;
  double seconds = 0.0;
  bool pass() const;
};

/// Suites: cohomology, laxpair, immersion, cpn, geom. Unknown names are usage errors.
SuiteResult run_suite(const std::string& suite, const Config& cfg);
const std::vector<std::string>& suite_names();

int cmd_zcc(const Config& cfg, std::ostream& out);
int cmd_immerse(const Config& cfg, std::ostream& out);
int cmd_invariants(const Config& cfg, std::ostream& out);
/// `all` runs every suite in order.
int cmd_check(const std::string& suite, const Config& cfg, std::ostream& out);

}  // namespace isl
