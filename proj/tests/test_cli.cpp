#include <filesystem>

#include "doctest.h"
#include "ponpar/cli.hpp"

using ponpar::runCli;
namespace fs = std::filesystem;

TEST_CASE("list succeeds") { CHECK(runCli({"list"}) == 0); }

TEST_CASE("a passing run exits 0 and writes artifacts") {
  const fs::path dir = fs::temp_directory_path() / "ponpar_test_cli";
  fs::remove_all(dir);
  CHECK(runCli({"run", "E1", "--samples", "48", "--anchors", "4", "--out", dir.string()}) == 0);
  CHECK(fs::exists(dir / "E1.json"));
  CHECK(fs::exists(dir / "E1.svg"));

  const fs::path jdir = fs::temp_directory_path() / "ponpar_test_cli_json";
  fs::remove_all(jdir);
  CHECK(runCli({"run", "E1", "--samples", "48", "--anchors", "4", "--out", jdir.string(),
                "--json-only"}) == 0);
  CHECK(fs::exists(jdir / "E1.json"));
  CHECK(!fs::exists(jdir / "E1.svg"));
}

TEST_CASE("unknown ids exit 2") {
  CHECK(runCli({"run", "E99"}) == 2);
  CHECK(runCli({"dump", "--challenge", "9", "--samples", "48", "--anchors", "4"}) == 2);
}

TEST_CASE("unwritable output directory exits 3") {
  CHECK(runCli({"run", "E1", "--samples", "48", "--anchors", "4", "--out",
                "/proc/ponpar_cannot_write"}) == 3);
}

TEST_CASE("dump prints CSV and exits 0") {
  CHECK(runCli({"dump", "--challenge", "5", "--samples", "48", "--anchors", "4"}) == 0);
  CHECK(runCli({"dump", "--challenge", "1", "--family", "inellipse", "--samples", "48",
                "--anchors", "4"}) == 0);
}
