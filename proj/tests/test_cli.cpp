#include <array>
#include <cstdio>
#include <string>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Run {
  int status = 0;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(CANTORLAB_CLI) + " " + args;
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

}  // namespace

TEST_CASE("intervals and measure emit metadata and exact data") {
  const Run a = run("intervals --word 2,1 --precision 64");
  REQUIRE(a.status == 0);
  const json j = json::parse(a.out);
  CHECK(j["meta"]["command"] == "intervals");
  CHECK(j["meta"]["config"]["precision"] == 64);
  CHECK(j["interval"]["length"]["den"] == "4");

  const Run m = run("measure --word 1,1 --alpha 3/4");
  REQUIRE(m.status == 0);
  const json mj = json::parse(m.out);
  CHECK(mj["consistency"]["holds"] == true);
  CHECK(std::stod(mj["mass_decimal"].get<std::string>()) == doctest::Approx(0.025903226134362827).epsilon(1e-14));
}

TEST_CASE("errors are reported as json with a non-zero status") {
  const Run bad = run("measure --word 1,0,0 --alpha 3/4 2>&1");
  CHECK(bad.status != 0);
  const json e = json::parse(bad.out);
  CHECK(e["kind"] == "domain");
  CHECK(run("measure --word 1 --alpha 0.75 2>/dev/null").status != 0);
  CHECK(run("walk --kind dissipative --alpha 1 --steps 5 2>/dev/null").status != 0);
  CHECK(run("walk --kind dissipative --alpha 1 --steps 5 --allow-boundary >/dev/null 2>&1").status == 0);
  const Run usage = run("frobnicate 2>&1");
  CHECK(usage.status != 0);
  CHECK(json::parse(usage.out)["kind"] == "usage");
}

TEST_CASE("walk and dim outputs are byte-identical across runs") {
  for (const char* args : {"walk --kind folded --steps 300 --paths 4 --seed 9 --format csv",
                           "walk --kind dissipative --steps 2000 --paths 6 --checkpoints 100,1000 --gamma 3",
                           "dim --depth 400 --paths 3 --n0 50 --format json",
                           "lebesgue --depth 5 --cutoff 200"}) {
    CAPTURE(args);
    const Run a = run(args);
    const Run b = run(std::string(args) + " --threads 1");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
  const Run csv = run("walk --steps 3 --paths 1 --format csv");
  CHECK(csv.out.rfind("# cantorlab", 0) == 0);
}

TEST_CASE("pressure and quick verification") {
  const json p = json::parse(run("pressure --cutoff 1 --tol 1e-8").out);
  CHECK(p["s_star"].get<double>() == doctest::Approx(0.279711).epsilon(1e-5));
  const Run v = run("verify --quick");
  CHECK(v.status == 0);
  CHECK(v.out.find("FAIL") == std::string::npos);
}
