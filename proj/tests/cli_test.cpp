/**************************************************************************
 * cli_test.cpp
 *
 * Copyright 2026 The rmrc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "rmrc/cli.hpp"
#include "rmrc/share_file.hpp"

using namespace rmrc;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "rmrc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  std::string l;
  while (std::getline(in, l))
    if (l == line) return true;
  return false;
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("rmrc_cli_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

std::vector<std::uint8_t> sample_bytes(std::size_t len) {
  std::vector<std::uint8_t> v(len);
  std::uint32_t x = 12345;
  for (auto& b : v) {
    x = x * 1103515245u + 12345u;
    b = static_cast<std::uint8_t>(x >> 16);
  }
  return v;
}

}  // namespace

TEST_CASE("plan2") {
  auto r = run({"plan2", "--n", "30", "--M", "11", "--P", "0.2", "--pdet", "0.999999"});
  CHECK(r.code == kExitOk);
  CHECK(has_line(r.out, "theta_L: 73"));
  CHECK(has_line(r.out, "d: 18"));
  CHECK(has_line(r.out, "x: 7/18"));
  CHECK(has_line(r.out, "B_H: 90"));
  CHECK(has_line(r.out, "B_L: 28"));
  CHECK(run({"plan2", "--n", "10", "--M", "6"}).code == kExitInfeasible);
  CHECK(run({"plan2", "--P", "1.5"}).code == kExitInfeasible);
}

TEST_CASE("planm") {
  auto r = run({"planm", "--n", "30", "--m", "3", "--d0", "50"});
  CHECK(r.code == kExitOk);
  CHECK(has_line(r.out, "d: 16,17,17"));
  CHECK(has_line(r.out, "d_tilde: 17"));
  auto bad = run({"planm", "--n", "10", "--m", "5", "--d0", "49"});
  CHECK(bad.code == kExitInfeasible);
  CHECK(!bad.err.empty());
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"plan2", "--n", "abc"}).code == kExitUsage);
  CHECK(run({"bogus"}).code == kExitUsage);
}

TEST_CASE("store, repair and read round trip") {
  auto base = scratch("roundtrip");
  auto input = base / "input.bin";
  auto bytes = sample_bytes(2001);
  write_bytes(input, bytes);

  SUBCASE("m-layer") {
    auto dir = base / "m";
    auto s = run({"store", "--input", input.string(), "--out", dir.string(), "--scheme", "m_layer", "--n", "30",
                  "--d", "16", "--m", "3"});
    REQUIRE(s.code == kExitOk);
    auto r = run({"read", "--dir", dir.string(), "--out", (base / "m.out").string()});
    CHECK(r.code == kExitOk);
    CHECK(read_bytes(base / "m.out") == bytes);
    auto rep = run({"repair", "--dir", dir.string(), "--node", "4", "--compromised", "1,2,3", "--P", "1"});
    CHECK(rep.code == kExitOk);
    CHECK(has_line(rep.out, "flagged: 1,2,3"));

    // Twenty nodes at P = 1 exceed every block's radius.
    std::string many;
    for (int i = 0; i < 20; ++i) many += (i ? "," : "") + std::to_string(i);
    auto fail = run({"read", "--dir", dir.string(), "--out", (base / "bad.out").string(), "--compromised", many});
    CHECK(fail.code == kExitDecodeFailure);
    CHECK(!std::filesystem::exists(base / "bad.out"));
  }

  SUBCASE("two-layer") {
    auto dir = base / "two";
    auto s = run({"store", "--input", input.string(), "--out", dir.string(), "--scheme", "two_layer", "--n", "10",
                  "--M", "3", "--P", "0.2", "--pdet", "0.99", "--seed", "9"});
    REQUIRE(s.code == kExitOk);
    CHECK(std::filesystem::exists(record_file(dir)));
    auto trace = base / "trace.jsonl";
    auto rep = run({"repair", "--dir", dir.string(), "--node", "0", "--compromised", "1,2,3", "--P", "1", "--trace",
                    trace.string()});
    CHECK(rep.code == kExitOk);
    CHECK(has_line(rep.out, "flagged: 1,2,3"));
    CHECK(has_line(rep.out, "detection_event: true"));
    CHECK(std::filesystem::file_size(trace) > 0);
    auto r = run({"read", "--dir", dir.string(), "--out", (base / "two.out").string(), "--compromised", "4,5,6"});
    CHECK(r.code == kExitOk);
    CHECK(read_bytes(base / "two.out") == bytes);
    auto plain = run({"repair", "--dir", dir.string(), "--node", "0", "--compromised", "1,2,3", "--decoder", "plain"});
    CHECK(plain.code == kExitDecodeFailure);
  }
  std::filesystem::remove_all(base);
}

TEST_CASE("figures and montecarlo") {
  auto f = run({"figures", "--which", "fig7"});
  CHECK(f.code == kExitOk);
  CHECK(f.out.rfind("m,delta_c_d5,delta_c_d10,limit_d5,limit_d10\n", 0) == 0);
  CHECK(run({"figures", "--which", "fig5"}).code == kExitInfeasible);
  auto mc = run({"montecarlo", "--n", "10", "--M", "3", "--P", "0.2", "--pdet", "0.99", "--bf", "600", "--trials",
                 "2000", "--seed", "4"});
  CHECK(mc.code == kExitOk);
  CHECK(has_line(mc.out, "theta_L: 26"));
  CHECK(has_line(mc.out, "within_3sigma: true"));
  CHECK(run({"montecarlo", "--trials", "0"}).code == kExitInfeasible);
}

TEST_CASE("io errors") {
  auto base = scratch("io");
  CHECK(run({"read", "--dir", (base / "nope").string(), "--out", (base / "x").string()}).code == kExitIo);
  CHECK(run({"store", "--input", (base / "missing").string(), "--out", (base / "d").string()}).code == kExitIo);
  std::filesystem::remove_all(base);
}

TEST_CASE("the installed binary reports exit codes") {
  const std::string cli = RMRC_CLI_PATH;
  auto status = [](const std::string& cmd) {
    const int raw = std::system((cmd + " > /dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status(cli + " plan2") == kExitOk);
  CHECK(status(cli + " plan2 --n 10 --M 6") == kExitInfeasible);
  CHECK(status(cli) == kExitUsage);
}
