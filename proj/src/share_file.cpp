/**************************************************************************
 * share_file.cpp
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

#include "rmrc/share_file.hpp"

#include <fstream>

#include <fmt/format.h>

#include "rmrc/bytes.hpp"
#include "rmrc/errors.hpp"

namespace rmrc {

namespace {

constexpr std::string_view kShareMagic = "RMSF";
constexpr std::uint16_t kShareVersion = 1;

}  // namespace

std::vector<Element> bytes_to_symbols(const Field& field, std::span<const std::uint8_t> bytes) {
  const unsigned bits = field.payload_bits();
  const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
  std::vector<Element> out;
  out.reserve((bytes.size() * 8 + bits - 1) / bits);
  std::uint64_t acc = 0;
  unsigned have = 0;
  for (std::uint8_t b : bytes) {
    acc |= static_cast<std::uint64_t>(b) << have;
    have += 8;
    while (have >= bits) {
      out.push_back(static_cast<Element>(acc & mask));
      acc >>= bits;
      have -= bits;
    }
  }
  if (have > 0) out.push_back(static_cast<Element>(acc & mask));
  return out;
}

std::vector<std::uint8_t> symbols_to_bytes(const Field& field, std::span<const Element> symbols,
                                           std::size_t byte_length) {
  const unsigned bits = field.payload_bits();
  std::vector<std::uint8_t> out;
  out.reserve(byte_length);
  std::uint64_t acc = 0;
  unsigned have = 0;
  for (Element s : symbols) {
    if (out.size() == byte_length) break;
    acc |= static_cast<std::uint64_t>(s) << have;
    have += bits;
    while (have >= 8 && out.size() < byte_length) {
      out.push_back(static_cast<std::uint8_t>(acc & 0xff));
      acc >>= 8;
      have -= 8;
    }
  }
  if (out.size() != byte_length) throw std::invalid_argument("not enough symbols for the byte length");
  return out;
}

std::vector<std::uint8_t> serialize_share_file(const ShareFile& file) {
  const auto& h = file.header;
  const auto field = Field::make(h.order, h.generator);
  const unsigned width = field.symbol_bytes();
  if (file.body.size() != static_cast<std::size_t>(h.alpha()) * h.blocks)
    throw std::invalid_argument("share body length does not match alpha * blocks");

  ByteWriter w;
  w.raw(kShareMagic);
  w.put(kShareVersion);
  w.put(static_cast<std::uint8_t>(h.scheme));
  w.put(static_cast<std::uint8_t>(width));
  w.put(h.order);
  w.put(h.generator);
  w.put(static_cast<std::uint16_t>(h.n));
  w.put(static_cast<std::uint16_t>(h.node));
  w.put(static_cast<std::uint16_t>(h.d));
  w.put(static_cast<std::uint16_t>(h.alpha()));
  w.put(h.blocks);
  w.put(h.byte_length);
  w.put(h.data_symbols);
  w.put(static_cast<std::uint16_t>(h.m));
  w.put(static_cast<std::uint32_t>(h.rho));
  w.put(static_cast<std::uint16_t>(h.max_malicious));
  w.put_f64(h.tamper_probability);
  w.put_f64(h.detection_target);
  w.put(static_cast<std::uint64_t>(h.theta_l));
  w.put(static_cast<std::uint64_t>(h.theta_h));
  for (Element s : file.body) w.put_width(s, width);
  return w.take();
}

ShareFile parse_share_file(std::span<const std::uint8_t> bytes) {
  try {
    ByteReader r(bytes);
    if (!r.expect(kShareMagic)) throw IoError("not a share file");
    if (r.get<std::uint16_t>() != kShareVersion) throw IoError("unsupported share file version");
    ShareFile f;
    auto& h = f.header;
    const auto scheme = r.get<std::uint8_t>();
    if (scheme > static_cast<std::uint8_t>(Scheme::plain)) throw IoError("unknown scheme tag");
    h.scheme = static_cast<Scheme>(scheme);
    const unsigned width = r.get<std::uint8_t>();
    h.order = r.get<std::uint32_t>();
    h.generator = r.get<std::uint32_t>();
    h.n = r.get<std::uint16_t>();
    h.node = r.get<std::uint16_t>();
    h.d = r.get<std::uint16_t>();
    const int alpha = r.get<std::uint16_t>();
    h.blocks = r.get<std::uint64_t>();
    h.byte_length = r.get<std::uint64_t>();
    h.data_symbols = r.get<std::uint64_t>();
    h.m = r.get<std::uint16_t>();
    h.rho = static_cast<int>(r.get<std::uint32_t>());
    h.max_malicious = r.get<std::uint16_t>();
    h.tamper_probability = r.get_f64();
    h.detection_target = r.get_f64();
    h.theta_l = static_cast<std::int64_t>(r.get<std::uint64_t>());
    h.theta_h = static_cast<std::int64_t>(r.get<std::uint64_t>());

    Field field = Field::make(h.order, h.generator);
    if (width != field.symbol_bytes() || alpha != h.alpha()) throw IoError("inconsistent share file header");
    const std::uint64_t count = static_cast<std::uint64_t>(alpha) * h.blocks;
    if (r.remaining() != count * width) throw IoError("share body length does not match its header");
    f.body.resize(count);
    for (auto& s : f.body) {
      const auto v = r.get_width(width);
      if (!field.contains(v)) throw IoError("symbol outside the field");
      s = static_cast<Element>(v);
    }
    return f;
  } catch (const IoError&) {
    throw;
  } catch (const std::exception& e) {
    throw IoError(fmt::format("malformed share file: {}", e.what()));
  }
}

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open {}", path.string()));
  std::vector<std::uint8_t> out((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError(fmt::format("cannot read {}", path.string()));
  return out;
}

void write_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot create {}", path.string()));
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError(fmt::format("cannot write {}", path.string()));
}

std::filesystem::path node_file(const std::filesystem::path& dir, int node) {
  return dir / fmt::format("node_{:03}.rmsf", node);
}

std::filesystem::path record_file(const std::filesystem::path& dir) { return dir / "server.record"; }

void save_deployment(const std::filesystem::path& dir, const Deployment& dep, std::uint64_t byte_length) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError(fmt::format("cannot create {}: {}", dir.string(), ec.message()));

  const auto& enc = dep.encoder;
  ShareFileHeader h;
  h.scheme = dep.scheme;
  h.order = enc.field().order();
  h.generator = enc.field().generator();
  h.n = enc.n();
  h.d = enc.d();
  h.blocks = dep.shares.blocks();
  h.byte_length = byte_length;
  h.data_symbols = dep.data_symbols;
  h.m = dep.lattice.m;
  h.rho = dep.lattice.rho;
  if (dep.record) {
    const auto& plan = dep.record->plan();
    h.m = 1;
    h.max_malicious = plan.max_malicious;
    h.tamper_probability = plan.tamper_probability;
    h.detection_target = plan.detection_target;
    h.theta_l = plan.theta_l;
    h.theta_h = plan.theta_h;
    write_bytes(record_file(dir), dep.record->serialize());
  }
  for (int i = 0; i < enc.n(); ++i) {
    h.node = i;
    auto share = dep.shares.node(i);
    write_bytes(node_file(dir, i), serialize_share_file({h, {share.begin(), share.end()}}));
  }
}

StoredFile load_deployment(const std::filesystem::path& dir) {
  auto first = parse_share_file(read_bytes(node_file(dir, 0)));
  const auto h0 = first.header;
  if (h0.n < 1) throw IoError("share file declares no nodes");
  Field field = Field::make(h0.order, h0.generator);
  ShareStore shares(h0.n, h0.alpha(), h0.blocks);
  for (int i = 0; i < h0.n; ++i) {
    auto f = i == 0 ? std::move(first) : parse_share_file(read_bytes(node_file(dir, i)));
    auto expect = h0;
    expect.node = i;
    if (!(f.header == expect)) throw IoError(fmt::format("node {} header disagrees with node 0", i));
    shares.node_mut(i) = std::move(f.body);
  }

  std::optional<PermutationRecord> record;
  Lattice lattice{h0.m, h0.rho, h0.blocks};
  if (h0.scheme == Scheme::two_layer) {
    try {
      record = PermutationRecord::deserialize(read_bytes(record_file(dir)));
    } catch (const IoError&) {
      throw;
    } catch (const std::exception& e) {
      throw IoError(fmt::format("bad permutation record: {}", e.what()));
    }
    const auto& plan = record->plan();
    if (plan.n != h0.n || plan.d != h0.d || plan.theta_l != h0.theta_l || plan.theta_h != h0.theta_h ||
        plan.file_size != h0.data_symbols)
      throw IoError("permutation record disagrees with the share files");
  } else if (static_cast<std::uint64_t>(h0.m) * h0.rho < h0.blocks) {
    throw IoError("lattice too small for the stored blocks");
  }

  Deployment dep{h0.scheme, Encoder(field, h0.n, h0.d), std::move(shares), h0.data_symbols, {},
                 std::move(record), lattice};
  Network honest(dep, AdversaryConfig{});
  auto read = honest.read_file(dep.scheme == Scheme::two_layer ? Scheme::two_layer : Scheme::m_layer);
  if (read.recovered.size() != h0.data_symbols || !read.flagged.empty())
    throw IoError(fmt::format("stored shares are inconsistent: {}", read.failure));
  dep.data = std::move(read.recovered);
  return {std::move(dep), h0.byte_length};
}

}  // namespace rmrc
