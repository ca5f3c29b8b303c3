#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dtl/cli.hpp"

using namespace dtl;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Replaces one CSV column (timings) with `*` so outputs can be compared byte for byte.
std::string mask_column(const std::string& csv, std::size_t col) {
  std::istringstream in(csv);
  std::string line, out;
  bool header = true;
  while (std::getline(in, line)) {
    if (!header) {
      std::vector<std::string> cells;
      std::string cell;
      std::istringstream ls(line);
      while (std::getline(ls, cell, ',')) cells.push_back(cell);
      if (col < cells.size()) cells[col] = "*";
      line.clear();
      for (std::size_t i = 0; i < cells.size(); ++i) line += (i ? "," : "") + cells[i];
    }
    header = false;
    out += line + "\n";
  }
  return out;
}

void check_golden(const std::string& name, const std::string& got) {
  const fs::path p = fs::path(DTL_GOLDEN_DIR) / name;
  if (std::getenv("DTL_UPDATE_GOLDEN") != nullptr) {
    std::ofstream(p, std::ios::binary) << got;
  }
  CAPTURE(name);
  CHECK(got == slurp(p));
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "dtl_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("golden CSV schemas") {
  auto r = run({"census", "--lattice", "square", "--series", "2:4", "--workers", "1"});
  REQUIRE(r.code == 0);
  check_golden("census_square_2_4.csv", mask_column(r.out, 5));

  r = run({"census", "--lattice", "tri", "--n", "3", "--proper-only", "--workers", "1"});
  REQUIRE(r.code == 0);
  check_golden("census_tri_3_proper.csv", mask_column(r.out, 5));

  r = run({"census", "--lattice", "general", "--gram", "1,0,2", "--series", "2:3", "--oracle", "--workers", "1"});
  REQUIRE(r.code == 0);
  check_golden("census_general_oracle.csv", mask_column(r.out, 5));

  r = run({"ngon", "--n", "7"});
  REQUIRE(r.code == 0);
  check_golden("ngon_7.csv", r.out);

  r = run({"ngon", "--series", "3:12"});
  REQUIRE(r.code == 0);
  check_golden("ngon_3_12.csv", r.out);

  r = run({"triples", "--max-r", "30"});
  REQUIRE(r.code == 0);
  check_golden("triples_30.csv", r.out);

  r = run({"verify", "--check", "rotation-bound", "--max-r", "13", "--max-n", "6", "--rows", "--format", "csv"});
  REQUIRE(r.code == 0);
  check_golden("rotation_bound_13_6.csv", r.out);

  r = run({"search", "--ground", "ngon:12", "--k", "3", "--format", "csv", "--workers", "1"});
  REQUIRE(r.code == 0);
  check_golden("search_ngon12_k3.csv", r.out);
}

TEST_CASE("census row example") {
  const auto r = run({"census", "--lattice", "square", "--n", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\nsquare,3,true,10,0.1234567901,") != std::string::npos);
}

TEST_CASE("JSON reports") {
  auto r = run({"constant", "--cutoff", "100000"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["op"] == "constant");
  CHECK(j["total_bound"].get<double>() < 0.0633);
  CHECK(j["pass"] == true);

  r = run({"rotatable", "--n", "5", "--triple", "3,4,5"});
  REQUIRE(r.code == 0);
  j = nlohmann::json::parse(r.out);
  for (const char* key : {"op", "params", "count", "bound", "pass", "elapsed_ms"}) CHECK(j.contains(key));
  CHECK(j["count"] == 5);

  r = run({"rotatable", "--count-triangles", "--n", "5", "--workers", "2"});
  j = nlohmann::json::parse(r.out);
  CHECK(j["count"] == 12);
  CHECK(j["three_vertices_on_box"] == 6);

  r = run({"rotatable", "--point", "2,1"});
  CHECK(nlohmann::json::parse(r.out)["rotatable"] == true);

  r = run({"verify", "--check", "minimality", "--n", "8"});
  j = nlohmann::json::parse(r.out);
  CHECK(j["checked"] == 704);
  CHECK(j["violations"].empty());

  r = run({"verify", "--check", "spot-check", "--m", "5", "--n", "3125"});
  REQUIRE(r.code == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(j["count"].get<int>() <= 625);

  r = run({"verify", "--check", "origin-reduction", "--n", "4"});
  CHECK(nlohmann::json::parse(r.out)["pass"] == true);

  r = run({"search", "--ground", "ngon:12", "--k", "3"});
  j = nlohmann::json::parse(r.out);
  CHECK(j["max_size"] == 6);
  CHECK(j["witnesses"][0]["indices"] == nlohmann::json::array({0, 2, 4, 6, 8, 10}));
  CHECK(j["witnesses"][0]["shape_count"] == 3);
  CHECK(j["witnesses"][0]["verified"] == true);

  r = run({"triples", "--max-r", "100000", "--count"});
  j = nlohmann::json::parse(r.out);
  CHECK(j["count"] == 31838);

  r = run({"census", "--series", "10:30:10", "--format", "json"});
  j = nlohmann::json::parse(r.out);
  CHECK(j["rows"].size() == 3);
  CHECK(j.contains("fit"));
}

TEST_CASE("exit codes") {
  auto r = run({"census", "--n", "3", "--bogus"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--bogus") != std::string::npos);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"census"}).code == 2);
  CHECK(run({"census", "--n", "3", "--series", "2:4"}).code == 2);
  CHECK(run({"census", "--series", "4:2"}).code == 2);
  CHECK(run({"census", "--lattice", "hex", "--n", "3"}).code == 2);
  CHECK(run({"census", "--lattice", "general", "--n", "3"}).code == 2);
  CHECK(run({"census", "--lattice", "general", "--gram", "1,x,1", "--n", "3"}).code == 2);
  CHECK(run({"rotatable", "--n", "5", "--triple", "3,4"}).code == 2);
  CHECK(run({"search", "--ground", "cube:3", "--k", "2"}).code == 2);
  CHECK(run({"verify", "--check", "lemma"}).code == 2);
  CHECK(run({"--help"}).code == 0);

  r = run({"rotatable", "--n", "5", "--triple", "3,4,6"});
  CHECK(r.code == 1);
  r = run({"census", "--lattice", "general", "--gram", "1,2,1", "--n", "3"});
  CHECK(r.code == 1);
  CHECK(r.err.find("positive definite") != std::string::npos);
  r = run({"pointset", "--file", "/nonexistent/points.txt"});
  CHECK(r.code == 1);
  CHECK(r.err.find("/nonexistent/points.txt") != std::string::npos);
  r = run({"verify", "--check", "spot-check", "--m", "5", "--n", "3124"});
  CHECK(r.code == 1);
  CHECK(r.err.find("n >= m^5") != std::string::npos);
  r = run({"verify", "--check", "spot-check", "--m", "4"});
  CHECK(r.code == 1);
  CHECK(r.err.find("m > 4") != std::string::npos);
  CHECK(run({"search", "--ground", "grid:9", "--k", "2"}).code == 1);
  CHECK(run({"census", "--n", "1"}).code == 2);
  CHECK(run({"triples", "--max-r", "4"}).code == 1);
}

TEST_CASE("oracle limit from the environment") {
  ::setenv("DTL_ORACLE_LIMIT", "3", 1);
  CHECK(run({"census", "--n", "4", "--oracle"}).code == 1);
  CHECK(run({"census", "--n", "3", "--oracle"}).code == 0);
  ::setenv("DTL_ORACLE_LIMIT", "many", 1);
  CHECK(run({"census", "--n", "3", "--oracle"}).code == 2);
  ::setenv("DTL_ORACLE_LIMIT", "9", 1);
  CHECK(run({"census", "--n", "9", "--oracle"}).code == 0);
  ::unsetenv("DTL_ORACLE_LIMIT");
  CHECK(run({"census", "--n", "9", "--oracle"}).code == 1);
}

TEST_CASE("point set files and manifests") {
  const auto pts = scratch("hexagon.txt");
  std::ofstream(pts) << "dtl-pointset v1 D=3\n"
                        "p 1 0 0 0\np 1/2 0 0 1/2\np -1/2 0 0 1/2\np -1 0 0 0\np -1/2 0 0 -1/2\np 1/2 0 0 -1/2\n";
  auto r = run({"pointset", "--file", pts.string()});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["count"] == 3);
  CHECK(j["shapes"][0] == nlohmann::json::array({"1", "1", "3"}));
  auto manifest = nlohmann::json::parse(r.err);
  CHECK(manifest["command"] == "pointset");
  CHECK(manifest["input_digest"] == "sha256:" + sha256_file(pts.string()));

  const auto out = scratch("census.csv");
  fs::remove(out.string() + ".manifest.json");
  r = run({"census", "--n", "5", "--workers", "2", "--out", out.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const auto first = slurp(out);
  manifest = nlohmann::json::parse(slurp(out.string() + ".manifest.json"));
  for (const char* key : {"command", "params", "artifact_version", "started_at", "finished_at", "input_digest", "outputs"}) {
    CHECK(manifest.contains(key));
  }
  CHECK(manifest["workers"] == 2);
  CHECK(manifest["outputs"][0] == out.string());
  CHECK(manifest["params"]["n"] == "5");

  r = run({"census", "--n", "5", "--workers", "2", "--out", out.string()});
  CHECK(mask_column(slurp(out), 5) == mask_column(first, 5));

  r = run({"triples", "--max-r", "50"});
  const auto again = run({"triples", "--max-r", "50"});
  CHECK(nlohmann::json::parse(r.err)["payload_sha256"] == nlohmann::json::parse(again.err)["payload_sha256"]);

  CHECK(run({"census", "--n", "3", "--out", "/nonexistent/dir/x.csv"}).code == 1);
}

TEST_CASE("float point sets and distance matrices") {
  const auto fpts = scratch("float.txt");
  std::ofstream(fpts) << "dtl-pointset v1 float\np 0 0\np 1 0\np 0 1\np 1 1\n";
  auto r = run({"pointset", "--file", fpts.string(), "--tolerance", "1e-9"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["count"] == 1);

  const auto dm = scratch("pentagon.txt");
  std::ofstream f(dm);
  f << "dtl-distmatrix v1 D=5 n=5\n";
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) f << (std::min(j - i, 5 - j + i) == 1 ? "5/2 -1/2\n" : "5/2 1/2\n");
  f.close();
  r = run({"pointset", "--file", dm.string(), "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "s1,s2,s3\n5/2-1/2√5,5/2-1/2√5,5/2+1/2√5\n5/2-1/2√5,5/2+1/2√5,5/2+1/2√5\n");

  r = run({"search", "--ground", "file:" + dm.string(), "--k", "2"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["max_size"] == 5);
}
