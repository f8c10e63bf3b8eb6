#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gdicke/io.hpp"

using namespace gdicke;

namespace {

std::vector<SweepRecord> sample_records() {
  SweepRecord full;
  full.lambda = 0.5;
  full.branch = Branch::Normal;
  full.frequencies = std::array<cplx, 3>{cplx(1.5, 0.0), cplx(1.0, -0.0), cplx(0.25, 1e-3)};
  full.physical = true;
  full.energy_density = -0.125;

  SweepRecord empty;
  empty.lambda = 0.25;
  empty.branch = Branch::Sr3;
  empty.note = "undefined";
  return {full, empty};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("format_number") {
  CHECK(format_number(0.7071067811865476) == "7.07106781e-01");
  CHECK(format_number(-0.0) == "0.00000000e+00");
  CHECK(format_number(0.0) == "0.00000000e+00");
  CHECK(format_number(-12345.678) == "-1.23456780e+04");
}

TEST_CASE("csv schema") {
  std::ostringstream out;
  write_csv(out, sample_records());
  const auto rows = lines(out.str());
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "lambda,branch,re_w1,im_w1,re_w2,im_w2,re_w3,im_w3,physical,energy_density");
  CHECK(rows[1] ==
        "5.00000000e-01,normal,1.50000000e+00,0.00000000e+00,1.00000000e+00,0.00000000e+00,"
        "2.50000000e-01,1.00000000e-03,1,-1.25000000e-01");
  CHECK(rows[2] == "2.50000000e-01,sr3,,,,,,,0,");
}

TEST_CASE("json mirrors csv") {
  std::ostringstream out;
  write_records(out, sample_records(), OutputFormat::Json);
  const auto doc = nlohmann::json::parse(out.str());
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 2);
  std::vector<std::string> keys;
  for (auto it = doc[0].begin(); it != doc[0].end(); ++it) keys.push_back(it.key());
  CHECK(keys.size() == 10);
  CHECK(doc[0]["branch"] == "normal");
  CHECK(doc[0]["physical"] == 1);
  CHECK(doc[0]["im_w3"].get<double>() == 1e-3);
  CHECK(doc[1]["re_w1"].is_null());
  CHECK(doc[1]["energy_density"].is_null());
  CHECK(out.str().find("-1.25000000e-01") != std::string::npos);

  std::ostringstream none;
  write_json(none, {});
  CHECK(nlohmann::json::parse(none.str()).empty());
}
