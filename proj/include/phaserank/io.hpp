#pragma once

// Matrix files (JSON with split real/imaginary arrays), analysis reports,
// boundary CSV and JSON encodings of the library's results.

#include "phaserank/lowprank.hpp"
#include "phaserank/numerical_range.hpp"
#include "phaserank/verify.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace phaserank::io {

using Json = nlohmann::json;

/// Malformed or unreadable input. The message starts with the file and the
/// JSON pointer of the offending element.
class ParseError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// {"n": n, "re": [[...]], "im": [[...]], "label": "..."}
struct MatrixFile {
  Matrix a;
  std::optional<std::string> label;
};

Json to_json(const MatrixFile& f);
inline Json to_json(const Matrix& a) { return to_json(MatrixFile{a, std::nullopt}); }

/// `source` prefixes error messages (usually the file name).
MatrixFile matrix_from_json(const Json& j, const std::string& source = "<json>");
MatrixFile parse_matrix(const std::string& text, const std::string& source = "<string>");
MatrixFile read_matrix_file(const std::filesystem::path& path);
/// Doubles are written in shortest round-trip form, so a read after a write
/// gives back the same bits. Non-finite entries are rejected.
void write_matrix_file(const std::filesystem::path& path, const MatrixFile& f);
std::string dump(const MatrixFile& f);

struct AnalysisReport {
  bool sectorial = false;
  double certificate_theta = 0.0;
  double certificate_lambda_min = 0.0;
  std::vector<double> phases;  ///< empty when not sectorial
  double phase_center = 0.0;
  int prank = 0;
  std::map<std::string, bool> sector_memberships;
};

/// `tol` is the zero-phase tolerance used for prank and sector membership.
AnalysisReport analyze(const Matrix& a, double tol = kZeroPhaseTol);
Json to_json(const AnalysisReport& r);

Json to_json(const FeasibilityReport& r);
Json to_json(const verify::SuiteResult& s);
Json to_json(const verify::Summary& s);

/// Header `theta,re,im`, then one row per point with 17 significant digits.
void write_boundary_csv(std::ostream& os, const BoundaryPointSet& b);

/// {"error": {"kind": ..., "message": ...}} with the failing certificate
/// attached for NotSectorialError.
Json error_json(const std::exception& e);

}  // namespace phaserank::io
