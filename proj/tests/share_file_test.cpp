/**************************************************************************
 * share_file_test.cpp
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

#include <filesystem>

#include "rmrc/share_file.hpp"
#include "test_support.hpp"

using namespace rmrc;
using rmrc::testing::random_symbols;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("rmrc_share_file_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("byte packing round-trips for every payload width") {
  Rng rng(1);
  for (std::uint32_t q : {2u, 5u, 23u, 257u, 65536u, 65537u}) {
    auto f = Field::make(q);
    for (std::size_t len : {0, 1, 2, 3, 7, 100}) {
      std::vector<std::uint8_t> bytes(len);
      for (auto& b : bytes) b = static_cast<std::uint8_t>(rng.below(256));
      auto syms = bytes_to_symbols(f, bytes);
      CHECK(syms.size() == (len * 8 + f.payload_bits() - 1) / f.payload_bits());
      for (Element s : syms) CHECK(f.contains(s));
      CHECK(symbols_to_bytes(f, syms, len) == bytes);
    }
  }
  auto f = Field::make(65536);
  CHECK(bytes_to_symbols(f, std::vector<std::uint8_t>{0x34, 0x12}) == std::vector<Element>{0x1234});
  auto nib = Field::make(23);
  CHECK(bytes_to_symbols(nib, std::vector<std::uint8_t>{0xa5}) == std::vector<Element>{0x5, 0xa});
  CHECK_THROWS_AS(symbols_to_bytes(f, std::vector<Element>{1}, 3), std::invalid_argument);
}

TEST_CASE("share file header round-trips bit-exactly") {
  ShareFile file;
  auto& h = file.header;
  h.scheme = Scheme::two_layer;
  h.order = 23;
  h.generator = 5;
  h.n = 10;
  h.node = 4;
  h.d = 6;
  h.blocks = 2;
  h.byte_length = 77;
  h.data_symbols = 154;
  h.max_malicious = 3;
  h.tamper_probability = 0.2;
  h.detection_target = 0.99;
  h.theta_l = 1;
  h.theta_h = 1;
  file.body = {1, 2, 3, 4, 5, 22};
  auto bytes = serialize_share_file(file);
  // 88-byte header plus one byte per F_23 symbol.
  CHECK(bytes.size() == 88 + 6);
  auto back = parse_share_file(bytes);
  CHECK(back.header == h);
  CHECK(back.body == file.body);
  CHECK(serialize_share_file(back) == bytes);

  auto bad = bytes;
  bad.back() = 23;
  CHECK_THROWS_AS(parse_share_file(bad), IoError);
  bad = bytes;
  bad[1] = 'X';
  CHECK_THROWS_AS(parse_share_file(bad), IoError);
  bad = bytes;
  bad.pop_back();
  CHECK_THROWS_AS(parse_share_file(bad), IoError);
  CHECK_THROWS_AS(parse_share_file(std::vector<std::uint8_t>(3, 0)), IoError);
}

TEST_CASE("deployments survive save and load") {
  auto f = Field::make(23);
  Rng rng(2);
  auto plan = plan_parameters(10, 3, 0.2, 0.99, 300);
  auto dep = deploy_two_layer(f, plan, random_symbols(f, rng, 300), 77);
  auto dir = scratch("two");
  save_deployment(dir, dep, 150);
  for (int i = 0; i < 10; ++i) {
    auto size = std::filesystem::file_size(node_file(dir, i));
    CHECK(size == 88 + dep.shares.node(i).size());
  }
  auto loaded = load_deployment(dir);
  CHECK(loaded.byte_length == 150);
  CHECK(loaded.deployment.shares == dep.shares);
  CHECK(loaded.deployment.data == dep.data);
  CHECK(*loaded.deployment.record == *dep.record);

  auto mdep = deploy_m_layer(Field::make(65536), 8, 4, 2, random_symbols(Field::make(65536), rng, 40), 4);
  auto mdir = scratch("m");
  save_deployment(mdir, mdep, 80);
  auto mloaded = load_deployment(mdir);
  CHECK(mloaded.deployment.shares == mdep.shares);
  CHECK(mloaded.deployment.data == mdep.data);
  CHECK(mloaded.deployment.lattice.rho == 4);
  CHECK(!std::filesystem::exists(record_file(mdir)));

  std::filesystem::remove(record_file(dir));
  CHECK_THROWS_AS(load_deployment(dir), IoError);
  CHECK_THROWS_AS(load_deployment(scratch("missing")), IoError);
  std::filesystem::remove_all(dir);
  std::filesystem::remove_all(mdir);
}
