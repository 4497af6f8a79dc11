// Copyright 2026 The biomine Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BIOMINE_VECTOR_FILE_HPP_
#define BIOMINE_VECTOR_FILE_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

// Binary sentence-vector file, all integers and floats little-endian:
//
//   header:  "BMVF" | u32 version (=1) | u32 dimension | u64 count
//   record:  u32 key_length | key bytes (UTF-8) | dimension x f32
//
// Keys are "language\ttitle\tindex". A sidecar "<file>.idx" holds the
// offset table:
//
//   "BMVI" | u32 version (=1) | u64 count
//   entry:   u32 key_length | key bytes | u64 record offset
namespace biomine::vecfile {

inline constexpr std::array<char, 4> kMagic = {'B', 'M', 'V', 'F'};
inline constexpr std::array<char, 4> kIndexMagic = {'B', 'M', 'V', 'I'};
inline constexpr std::uint32_t kVersion = 1;
inline constexpr std::size_t kHeaderSize = 20;

struct Record {
  std::string key;
  std::vector<float> values;
};

// Streams records to `out`; the count in the header is patched by
// finish(), so `out` must be seekable.
class Writer {
 public:
  Writer(std::ostream& out, std::uint32_t dimension);
  void add(const std::string& key, std::span<const float> values);
  void add(const std::string& key, std::span<const double> values);
  // Patches the header count. Called by the destructor if needed.
  void finish();
  ~Writer();

  std::uint64_t count() const { return count_; }

 private:
  std::ostream& out_;
  std::uint32_t dimension_;
  std::uint64_t count_ = 0;
  std::streampos header_pos_;
  bool finished_ = false;
};

// Reads a whole record stream (e.g. a service response) into memory.
std::vector<Record> read_all(std::istream& in, std::uint32_t* dimension = nullptr);

std::filesystem::path index_path(const std::filesystem::path& vector_file);

// Scans a vector file and writes its sidecar offset table.
void write_index(const std::filesystem::path& vector_file);

// Random-access reader. Uses the sidecar table when present and consistent,
// otherwise scans the file once on open. Lookups use positional reads and
// are safe from concurrent threads.
class Reader {
 public:
  explicit Reader(const std::filesystem::path& path);
  ~Reader();
  Reader(const Reader&) = delete;
  Reader& operator=(const Reader&) = delete;

  std::uint32_t dimension() const { return dimension_; }
  std::uint64_t size() const { return offsets_.size(); }
  bool contains(const std::string& key) const { return offsets_.count(key) > 0; }
  std::optional<std::vector<float>> find(const std::string& key) const;
  bool used_index() const { return used_index_; }

 private:
  void scan();
  bool load_index();
  void read_at(std::uint64_t offset, void* data, std::size_t size) const;

  std::filesystem::path path_;
  int fd_ = -1;
  std::uint64_t file_size_ = 0;
  std::uint32_t dimension_ = 0;
  std::uint64_t count_ = 0;
  bool used_index_ = false;
  std::unordered_map<std::string, std::uint64_t> offsets_;
};

}  // namespace biomine::vecfile

#endif  // BIOMINE_VECTOR_FILE_HPP_
