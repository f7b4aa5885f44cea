/**************************************************************************
 * share_file.hpp
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

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

#include "rmrc/galois.hpp"
#include "rmrc/hostile_net.hpp"

namespace rmrc {

/// Raised for unreadable, unwritable or malformed files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Packs bytes into symbols of field.payload_bits() bits, least significant
/// bits first.
std::vector<Element> bytes_to_symbols(const Field& field, std::span<const std::uint8_t> bytes);
/// Inverse of bytes_to_symbols, truncated to `byte_length`.
std::vector<std::uint8_t> symbols_to_bytes(const Field& field, std::span<const Element> symbols,
                                           std::size_t byte_length);

/// Per-node share file header. The permutation seed is never written here;
/// it lives only in the secure server's record file.
struct ShareFileHeader {
  Scheme scheme = Scheme::m_layer;
  std::uint32_t order = 0;
  Element generator = 0;
  int n = 0;
  int node = 0;
  int d = 0;
  std::uint64_t blocks = 0;
  std::uint64_t byte_length = 0;
  std::uint64_t data_symbols = 0;
  // m-layer lattice
  int m = 1;
  int rho = 1;
  // two-layer plan inputs and block counts
  int max_malicious = 0;
  double tamper_probability = 0;
  double detection_target = 0;
  std::int64_t theta_l = 0;
  std::int64_t theta_h = 0;

  int alpha() const noexcept { return d / 2; }
  friend bool operator==(const ShareFileHeader&, const ShareFileHeader&) = default;
};

struct ShareFile {
  ShareFileHeader header;
  std::vector<Element> body;  // alpha symbols per block
};

/// Header then body, little-endian, body symbols at the field's symbol width.
std::vector<std::uint8_t> serialize_share_file(const ShareFile& file);
/// Throws IoError on a bad magic, version, length or symbol value.
ShareFile parse_share_file(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path);
void write_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

std::filesystem::path node_file(const std::filesystem::path& dir, int node);
std::filesystem::path record_file(const std::filesystem::path& dir);

/// Writes one share file per node, plus the permutation record for two-layer
/// deployments.
void save_deployment(const std::filesystem::path& dir, const Deployment& dep, std::uint64_t byte_length);

struct StoredFile {
  Deployment deployment;
  std::uint64_t byte_length = 0;
};

/// Loads every node file and the record. The deployment's ground-truth data
/// is recovered by an adversary-free decode of the stored shares.
StoredFile load_deployment(const std::filesystem::path& dir);

}  // namespace rmrc
