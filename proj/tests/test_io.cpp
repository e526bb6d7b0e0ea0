#include "phaserank/io.hpp"
#include "phaserank/randgen.hpp"

#include <gtest/gtest.h>

#include <boost/random/uniform_int_distribution.hpp>

#include <bit>
#include <cstring>
#include <filesystem>
#include <limits>
#include <sstream>

using namespace phaserank;
namespace fs = std::filesystem;

namespace {

bool same_bits(double x, double y) { return std::bit_cast<std::uint64_t>(x) == std::bit_cast<std::uint64_t>(y); }

}  // namespace

TEST(Io, RoundTripIsBitExact) {
  Rng rng(1);
  boost::random::uniform_int_distribution<std::uint64_t> bits;
  Matrix a(4, 4);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    double re, im;
    do re = std::bit_cast<double>(bits(rng)); while (!std::isfinite(re));
    do im = std::bit_cast<double>(bits(rng)); while (!std::isfinite(im));
    a(i) = cplx(re, im);
  }
  a(0) = cplx(-0.0, std::numeric_limits<double>::denorm_min());
  a(1) = cplx(std::numeric_limits<double>::max(), 0.1);
  const fs::path p = fs::temp_directory_path() / "phaserank_io_roundtrip.json";
  io::write_matrix_file(p, {a, "noise"});
  const io::MatrixFile back = io::read_matrix_file(p);
  fs::remove(p);
  ASSERT_EQ(back.a.rows(), 4);
  EXPECT_EQ(back.label, "noise");
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    EXPECT_TRUE(same_bits(a(i).real(), back.a(i).real())) << i;
    EXPECT_TRUE(same_bits(a(i).imag(), back.a(i).imag())) << i;
  }
}

TEST(Io, ParseErrorsCarryLocation) {
  auto message = [](const std::string& text) {
    try {
      io::parse_matrix(text, "m.json");
    } catch (const io::ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message("{\"n\": 2,").find("m.json: byte"), std::string::npos);
  EXPECT_NE(message("{\"re\": [[1]], \"im\": [[0]]}").find("m.json: /n: missing"), std::string::npos);
  EXPECT_NE(message("{\"n\": 0, \"re\": [], \"im\": []}").find("/n"), std::string::npos);
  EXPECT_NE(message("{\"n\": 2, \"re\": [[1, 0], [0, \"x\"]], \"im\": [[0, 0], [0, 0]]}").find("/re/1/1"),
            std::string::npos);
  EXPECT_NE(message("{\"n\": 2, \"re\": [[1, 0], [0, 1]], \"im\": [[0, 0]]}").find("/im: expected 2 rows"),
            std::string::npos);
  EXPECT_NE(message("{\"n\": 1, \"re\": [[1]], \"im\": [[0]], \"label\": 3}").find("/label"), std::string::npos);
  EXPECT_NE(message("[1, 2]").find("expected an object"), std::string::npos);
  EXPECT_THROW(io::read_matrix_file("/nonexistent/phaserank.json"), io::ParseError);
}

TEST(Io, NonFiniteRejectedOnWrite) {
  Matrix a = Matrix::Identity(2, 2);
  a(0, 1) = cplx(std::numeric_limits<double>::infinity(), 0);
  EXPECT_THROW(io::dump({a, std::nullopt}), InvalidInput);
}

TEST(Io, AnalysisReport) {
  Vector d(2);
  d << std::polar(1.0, pi / 3), std::polar(1.0, -pi / 4);
  const io::AnalysisReport r = io::analyze(d.asDiagonal());
  EXPECT_TRUE(r.sectorial);
  EXPECT_EQ(r.prank, 2);
  ASSERT_EQ(r.phases.size(), 2u);
  EXPECT_NEAR(r.phases[0], pi / 3, 1e-12);
  EXPECT_NEAR(r.phases[1], -pi / 4, 1e-12);
  EXPECT_TRUE(r.sector_memberships.at("positive_real"));
  EXPECT_FALSE(r.sector_memberships.at("positive_imaginary"));
  const io::Json j = io::to_json(r);
  EXPECT_EQ(j["prank"], 2);

  Matrix indefinite = Matrix::Identity(2, 2);
  indefinite(1, 1) = -1.0;
  const io::AnalysisReport n = io::analyze(indefinite);
  EXPECT_FALSE(n.sectorial);
  EXPECT_TRUE(io::to_json(n)["prank"].is_null());
}

TEST(Io, BoundaryCsv) {
  BoundaryPointSet b;
  b.thetas = {0.0, 0.1};
  b.points = {cplx(1.0, 0.0), cplx(0.1, 1.0 / 3.0)};
  std::ostringstream os;
  io::write_boundary_csv(os, b);
  EXPECT_EQ(os.str(), "theta,re,im\n0,1,0\n0.10000000000000001,0.10000000000000001,0.33333333333333331\n");
}

TEST(Io, ErrorObjects) {
  const io::Json e = io::error_json(NotSectorialError("not sectorial", 0.5, -1.0));
  EXPECT_EQ(e["error"]["kind"], "not_sectorial");
  EXPECT_DOUBLE_EQ(e["error"]["certificate"]["best_theta"].get<double>(), 0.5);
  EXPECT_EQ(io::error_json(io::ParseError("x"))["error"]["kind"], "parse");
  EXPECT_EQ(io::error_json(SectorError("x"))["error"]["kind"], "sector");
}

TEST(Io, SummaryJsonIsDeterministic) {
  const verify::Summary a = verify::verify_all(7, 1);
  const verify::Summary b = verify::verify_all(7, 1);
  EXPECT_EQ(io::to_json(a).dump(), io::to_json(b).dump());
  EXPECT_EQ(io::to_json(a)["suites"].size(), a.suites.size());
}
