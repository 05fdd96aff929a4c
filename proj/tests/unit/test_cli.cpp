#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "lmsr");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = lmsr::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const std::string kFixtures = LMSR_FIXTURE_DIR;

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("fit recovers gravity") {
    const auto r = run({"fit", "--data", kFixtures + "/gravity.csv", "--units", kFixtures + "/gravity.units", "--depth",
                        "1", "--tol", "1e-12", "--tol-relative", "--restart-plan",
                        "add,mul,div,sqrt:1e-12:60"});
    INFO(r.out << r.err);
    CHECK(r.code == 0);
    CHECK(r.out.find("status: solved") != std::string::npos);
    CHECK(r.out.find("m1·m2·r^-2") != std::string::npos);
    CHECK(r.out.find("units: consistent") != std::string::npos);
  }

  TEST_CASE("enumerate with the counting preset") {
    const auto r = run({"enumerate", "--preset", "paper-counts", "--depth", "3"});
    INFO(r.err);
    CHECK(r.code == 0);
    CHECK(r.out.find("cumulative count 107") != std::string::npos);
  }

  TEST_CASE("errors exit with status one") {
    CHECK(run({"fit", "--data", kFixtures + "/missing.csv"}).code == 1);
    const auto ragged = run({"fit", "--data", kFixtures + "/ragged.csv"});
    CHECK(ragged.code == 1);
    CHECK(ragged.err.find("line") != std::string::npos);
    CHECK(run({"bench", "--labels", "NOPE"}).code == 1);
    CHECK(run({"enumerate", "--ops", "log"}).code == 1);
    CHECK(run({"fit"}).code != 0);
  }

  TEST_CASE("bench on a quick problem") {
    const auto r = run({"bench", "--labels", "I.25.13", "--depth", "1"});
    INFO(r.out << r.err);
    CHECK(r.code == 0);
    CHECK(r.out.find("I.25.13") != std::string::npos);
    CHECK(r.out.find("solved") != std::string::npos);
  }
}
