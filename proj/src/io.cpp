#include "phaserank/io.hpp"

#include "phaserank/sectorial.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace phaserank::io {
namespace {

[[noreturn]] void fail(const std::string& source, const std::string& pointer, const std::string& msg) {
  throw ParseError(fmt::format("{}: {}: {}", source, pointer.empty() ? "/" : pointer, msg));
}

Json grid(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd read_grid(const Json& j, Eigen::Index n, const std::string& source,
                          const std::string& key) {
  const std::string at = "/" + key;
  if (!j.contains(key)) fail(source, at, "missing");
  const Json& rows = j.at(key);
  if (!rows.is_array()) fail(source, at, "expected an array of rows");
  if (static_cast<Eigen::Index>(rows.size()) != n) {
    fail(source, at, fmt::format("expected {} rows, found {}", n, rows.size()));
  }
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Json& row = rows[static_cast<std::size_t>(i)];
    const std::string row_at = fmt::format("{}/{}", at, i);
    if (!row.is_array()) fail(source, row_at, "expected an array");
    if (static_cast<Eigen::Index>(row.size()) != n) {
      fail(source, row_at, fmt::format("expected {} entries, found {}", n, row.size()));
    }
    for (Eigen::Index k = 0; k < n; ++k) {
      const Json& v = row[static_cast<std::size_t>(k)];
      if (!v.is_number()) fail(source, fmt::format("{}/{}", row_at, k), "expected a number");
      out(i, k) = v.get<double>();
    }
  }
  return out;
}

Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json number_map(const std::map<std::string, double>& m) {
  Json out = Json::object();
  for (const auto& [k, v] : m) out[k] = finite_or_null(v);
  return out;
}

}  // namespace

Json to_json(const MatrixFile& f) {
  if (!f.a.allFinite()) throw InvalidInput("matrix file: entries must be finite");
  if (f.a.rows() != f.a.cols()) throw InvalidInput("matrix file: matrix must be square");
  Json j;
  j["n"] = f.a.rows();
  j["re"] = grid(f.a.real());
  j["im"] = grid(f.a.imag());
  if (f.label) j["label"] = *f.label;
  return j;
}

MatrixFile matrix_from_json(const Json& j, const std::string& source) {
  if (!j.is_object()) fail(source, "", "expected an object with n, re, im");
  if (!j.contains("n")) fail(source, "/n", "missing");
  const Json& jn = j.at("n");
  if (!jn.is_number_integer() || jn.get<long long>() < 1) fail(source, "/n", "expected a positive integer");
  const auto n = static_cast<Eigen::Index>(jn.get<long long>());
  const Eigen::MatrixXd re = read_grid(j, n, source, "re");
  const Eigen::MatrixXd im = read_grid(j, n, source, "im");
  MatrixFile f;
  f.a.resize(n, n);
  f.a.real() = re;
  f.a.imag() = im;
  if (j.contains("label")) {
    if (!j.at("label").is_string()) fail(source, "/label", "expected a string");
    f.label = j.at("label").get<std::string>();
  }
  if (!f.a.allFinite()) fail(source, "", "entries must be finite");
  return f;
}

MatrixFile parse_matrix(const std::string& text, const std::string& source) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(fmt::format("{}: byte {}: malformed JSON ({})", source, e.byte, e.what()));
  }
  return matrix_from_json(j, source);
}

MatrixFile read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(fmt::format("{}: cannot open file", path.string()));
  std::ostringstream text;
  text << in.rdbuf();
  return parse_matrix(text.str(), path.string());
}

std::string dump(const MatrixFile& f) { return to_json(f).dump(); }

void write_matrix_file(const std::filesystem::path& path, const MatrixFile& f) {
  const std::string text = dump(f);
  std::ofstream out(path);
  if (!out) throw InvalidInput(fmt::format("{}: cannot open file for writing", path.string()));
  out << text << '\n';
}

AnalysisReport analyze(const Matrix& a, double tol) {
  require_square_finite(a, "analyze");
  if (!(tol >= 0.0)) throw InvalidInput("analyze: tolerance must be nonnegative");
  AnalysisReport r;
  const CertificateResult cert = sectoriality_certificate(a);
  if (const auto* c = std::get_if<SectorialityCertificate>(&cert)) {
    r.certificate_theta = c->theta;
    r.certificate_lambda_min = c->lambda_min;
  } else {
    const auto& ns = std::get<NotSectorial>(cert);
    r.certificate_theta = ns.best_theta;
    r.certificate_lambda_min = ns.best_lambda_min;
    for (const char* name : {"positive_real", "strictly_positive_real", "positive_imaginary",
                             "negative_imaginary"}) {
      r.sector_memberships[name] = false;
    }
    return r;
  }
  const PhaseVector ph = sectorial_decomposition(a).phases;
  r.sectorial = true;
  r.phases = ph.values();
  r.phase_center = ph.center();
  r.prank = prank(ph, tol);
  r.sector_memberships["positive_real"] = SectorInterval::positive_real().contains(ph, tol);
  r.sector_memberships["strictly_positive_real"] =
      SectorInterval::strictly_positive_real().contains(ph, tol);
  r.sector_memberships["positive_imaginary"] = SectorInterval::positive_imaginary().contains(ph, tol);
  r.sector_memberships["negative_imaginary"] = SectorInterval::negative_imaginary().contains(ph, tol);
  return r;
}

Json to_json(const AnalysisReport& r) {
  Json j;
  j["sectorial"] = r.sectorial;
  j["certificate_theta"] = r.certificate_theta;
  j["certificate_lambda_min"] = r.certificate_lambda_min;
  j["phases"] = r.phases;
  j["phase_center"] = r.sectorial ? Json(r.phase_center) : Json(nullptr);
  j["prank"] = r.sectorial ? Json(r.prank) : Json(nullptr);
  j["sector_memberships"] = r.sector_memberships;
  return j;
}

Json to_json(const FeasibilityReport& r) {
  Json j;
  j["feasible"] = r.feasible();
  j["e_sectorial"] = r.e_sectorial;
  j["e_prank"] = r.e_prank;
  j["prank_ok"] = r.prank_ok;
  j["conjugate_sectorial"] = r.conjugate_sectorial;
  j["conjugate_in_sector"] = r.conjugate_in_sector;
  j["require_positive_imaginary"] = r.require_positive_imaginary;
  j["objective"] = r.objective ? Json(*r.objective) : Json(nullptr);
  j["conjugate_phases"] = r.conjugate_phases;
  j["diagnostics"] = r.diagnostics;
  return j;
}

Json to_json(const verify::SuiteResult& s) {
  Json j;
  j["name"] = s.name;
  j["passed"] = s.passed;
  j["trials"] = s.trials;
  j["skipped"] = s.skipped;
  j["maxima"] = number_map(s.maxima);
  j["minima"] = number_map(s.minima);
  j["counts"] = number_map(s.counts);
  j["notes"] = s.notes;
  return j;
}

Json to_json(const verify::Summary& s) {
  Json j;
  j["seed"] = s.seed;
  j["passed"] = s.passed();
  Json suites = Json::array();
  for (const auto& suite : s.suites) suites.push_back(to_json(suite));
  j["suites"] = std::move(suites);
  return j;
}

void write_boundary_csv(std::ostream& os, const BoundaryPointSet& b) {
  os << "theta,re,im\n";
  for (std::size_t k = 0; k < b.points.size(); ++k) {
    os << fmt::format("{:.17g},{:.17g},{:.17g}\n", b.thetas[k], b.points[k].real(), b.points[k].imag());
  }
}

Json error_json(const std::exception& e) {
  Json err;
  err["message"] = e.what();
  if (const auto* ns = dynamic_cast<const NotSectorialError*>(&e)) {
    err["kind"] = "not_sectorial";
    err["certificate"] = {{"best_theta", ns->best_theta()}, {"best_lambda_min", ns->best_lambda_min()}};
  } else if (dynamic_cast<const ParseError*>(&e) != nullptr) {
    err["kind"] = "parse";
  } else if (dynamic_cast<const SectorError*>(&e) != nullptr) {
    err["kind"] = "sector";
  } else if (dynamic_cast<const BranchError*>(&e) != nullptr) {
    err["kind"] = "branch";
  } else if (dynamic_cast<const InvalidInput*>(&e) != nullptr) {
    err["kind"] = "invalid_input";
  } else {
    err["kind"] = "internal";
  }
  return Json{{"error", err}};
}

}  // namespace phaserank::io
