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

#include "biomine/vector_file.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <bit>
#include <cstring>
#include <fstream>

#include "biomine/common.hpp"

namespace biomine::vecfile {
namespace {

template <typename T>
void put_le(std::ostream& out, T value) {
  static_assert(std::is_unsigned_v<T>);
  char bytes[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
  }
  out.write(bytes, sizeof(T));
}

template <typename T>
T get_le(const unsigned char* bytes) {
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    value |= static_cast<T>(bytes[i]) << (8 * i);
  }
  return value;
}

template <typename T>
bool read_le(std::istream& in, T& value) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) return false;
  value = get_le<T>(bytes);
  return true;
}

float float_from_le(const unsigned char* bytes) {
  return std::bit_cast<float>(get_le<std::uint32_t>(bytes));
}

// Upper bound on key length; anything larger means a corrupt file.
constexpr std::uint32_t kMaxKeyLength = 1 << 20;

void read_header(std::istream& in, std::uint32_t& dimension,
                 std::uint64_t& count) {
  std::array<char, 4> magic{};
  std::uint32_t version = 0;
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw InputError("not a biomine vector file (bad magic)");
  }
  if (!read_le(in, version) || version != kVersion) {
    throw InputError("unsupported vector file version");
  }
  if (!read_le(in, dimension) || !read_le(in, count)) {
    throw InputError("truncated vector file header");
  }
  if (dimension < 2) throw InputError("vector file dimension must be >= 2");
}

}  // namespace

Writer::Writer(std::ostream& out, std::uint32_t dimension)
    : out_(out), dimension_(dimension) {
  if (dimension < 2) throw InvalidArgument("vector dimension must be >= 2");
  header_pos_ = out_.tellp();
  out_.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out_, kVersion);
  put_le<std::uint32_t>(out_, dimension_);
  put_le<std::uint64_t>(out_, 0);
  if (!out_) throw WriteError("cannot write vector file header");
}

void Writer::add(const std::string& key, std::span<const float> values) {
  if (values.size() != dimension_) {
    throw ShapeError("vector for '" + key + "' has dimension " +
                     std::to_string(values.size()) + ", expected " +
                     std::to_string(dimension_));
  }
  put_le<std::uint32_t>(out_, static_cast<std::uint32_t>(key.size()));
  out_.write(key.data(), static_cast<std::streamsize>(key.size()));
  for (float v : values) put_le<std::uint32_t>(out_, std::bit_cast<std::uint32_t>(v));
  if (!out_) throw WriteError("cannot write vector record");
  ++count_;
}

void Writer::add(const std::string& key, std::span<const double> values) {
  std::vector<float> narrowed(values.begin(), values.end());
  add(key, std::span<const float>(narrowed));
}

void Writer::finish() {
  if (finished_) return;
  finished_ = true;
  const std::streampos end = out_.tellp();
  out_.seekp(header_pos_ + std::streamoff(12));
  put_le<std::uint64_t>(out_, count_);
  out_.seekp(end);
  out_.flush();
  if (!out_) throw WriteError("cannot finalize vector file header");
}

Writer::~Writer() {
  if (finished_) return;
  try {
    finish();
  } catch (...) {
  }
}

std::vector<Record> read_all(std::istream& in, std::uint32_t* dimension_out) {
  std::uint32_t dimension = 0;
  std::uint64_t count = 0;
  read_header(in, dimension, count);
  if (dimension_out) *dimension_out = dimension;
  std::vector<Record> records;
  std::vector<unsigned char> raw(static_cast<std::size_t>(dimension) * 4);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint32_t key_length = 0;
    if (!read_le(in, key_length) || key_length > kMaxKeyLength) {
      throw InputError("truncated or corrupt vector record " + std::to_string(i));
    }
    Record record;
    record.key.resize(key_length);
    if (!in.read(record.key.data(), key_length) ||
        !in.read(reinterpret_cast<char*>(raw.data()),
                 static_cast<std::streamsize>(raw.size()))) {
      throw InputError("truncated vector record " + std::to_string(i));
    }
    record.values.resize(dimension);
    for (std::uint32_t d = 0; d < dimension; ++d) {
      record.values[d] = float_from_le(raw.data() + 4 * d);
    }
    records.push_back(std::move(record));
  }
  return records;
}

std::filesystem::path index_path(const std::filesystem::path& vector_file) {
  std::filesystem::path path = vector_file;
  path += ".idx";
  return path;
}

void write_index(const std::filesystem::path& vector_file) {
  std::ifstream in(vector_file, std::ios::binary);
  if (!in) throw InputError("cannot open vector file " + vector_file.string());
  std::uint32_t dimension = 0;
  std::uint64_t count = 0;
  read_header(in, dimension, count);
  const std::string path = index_path(vector_file).string();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw WriteError("cannot create index file " + path);
  out.write(kIndexMagic.data(), kIndexMagic.size());
  put_le<std::uint32_t>(out, kVersion);
  put_le<std::uint64_t>(out, count);
  std::uint64_t offset = kHeaderSize;
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint32_t key_length = 0;
    if (!read_le(in, key_length) || key_length > kMaxKeyLength) {
      throw InputError("corrupt vector file " + vector_file.string());
    }
    std::string key(key_length, '\0');
    if (!in.read(key.data(), key_length)) {
      throw InputError("truncated vector file " + vector_file.string());
    }
    in.seekg(static_cast<std::streamoff>(dimension) * 4, std::ios::cur);
    put_le<std::uint32_t>(out, key_length);
    out.write(key.data(), key_length);
    put_le<std::uint64_t>(out, offset);
    offset += 4 + key_length + static_cast<std::uint64_t>(dimension) * 4;
  }
  if (!out) throw WriteError("cannot write index file " + path);
}

Reader::Reader(const std::filesystem::path& path) : path_(path) {
  fd_ = ::open(path.c_str(), O_RDONLY | O_CLOEXEC);
  if (fd_ < 0) throw InputError("cannot open vector file " + path.string());
  struct stat st {};
  if (::fstat(fd_, &st) != 0) {
    ::close(fd_);
    throw InputError("cannot stat vector file " + path.string());
  }
  file_size_ = static_cast<std::uint64_t>(st.st_size);
  try {
    std::ifstream in(path, std::ios::binary);
    read_header(in, dimension_, count_);
    used_index_ = load_index();
    if (!used_index_) scan();
  } catch (...) {
    ::close(fd_);
    throw;
  }
}

Reader::~Reader() {
  if (fd_ >= 0) ::close(fd_);
}

void Reader::read_at(std::uint64_t offset, void* data, std::size_t size) const {
  auto* bytes = static_cast<char*>(data);
  std::size_t done = 0;
  while (done < size) {
    const ssize_t got = ::pread(fd_, bytes + done, size - done,
                                static_cast<off_t>(offset + done));
    if (got <= 0) throw InputError("short read from vector file " + path_.string());
    done += static_cast<std::size_t>(got);
  }
}

void Reader::scan() {
  offsets_.clear();
  const std::uint64_t record_tail = static_cast<std::uint64_t>(dimension_) * 4;
  std::uint64_t offset = kHeaderSize;
  for (std::uint64_t i = 0; i < count_; ++i) {
    unsigned char len_bytes[4];
    if (offset + 4 > file_size_) throw InputError("truncated vector file " + path_.string());
    read_at(offset, len_bytes, 4);
    const auto key_length = get_le<std::uint32_t>(len_bytes);
    if (key_length > kMaxKeyLength ||
        offset + 4 + key_length + record_tail > file_size_) {
      throw InputError("truncated or corrupt vector file " + path_.string());
    }
    std::string key(key_length, '\0');
    read_at(offset + 4, key.data(), key_length);
    offsets_.emplace(std::move(key), offset);
    offset += 4 + key_length + record_tail;
  }
}

bool Reader::load_index() {
  std::ifstream in(index_path(path_), std::ios::binary);
  if (!in) return false;
  std::array<char, 4> magic{};
  std::uint32_t version = 0;
  std::uint64_t count = 0;
  if (!in.read(magic.data(), magic.size()) || magic != kIndexMagic ||
      !read_le(in, version) || version != kVersion || !read_le(in, count) ||
      count != count_) {
    return false;
  }
  std::unordered_map<std::string, std::uint64_t> offsets;
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint32_t key_length = 0;
    std::uint64_t offset = 0;
    if (!read_le(in, key_length) || key_length > kMaxKeyLength) return false;
    std::string key(key_length, '\0');
    if (!in.read(key.data(), key_length) || !read_le(in, offset)) return false;
    if (offset + 4 + key_length + std::uint64_t{dimension_} * 4 > file_size_) {
      return false;
    }
    offsets.emplace(std::move(key), offset);
  }
  offsets_ = std::move(offsets);
  return true;
}

std::optional<std::vector<float>> Reader::find(const std::string& key) const {
  const auto it = offsets_.find(key);
  if (it == offsets_.end()) return std::nullopt;
  std::vector<unsigned char> raw(static_cast<std::size_t>(dimension_) * 4);
  read_at(it->second + 4 + key.size(), raw.data(), raw.size());
  std::vector<float> values(dimension_);
  for (std::uint32_t d = 0; d < dimension_; ++d) {
    values[d] = float_from_le(raw.data() + 4 * d);
  }
  return values;
}

}  // namespace biomine::vecfile
