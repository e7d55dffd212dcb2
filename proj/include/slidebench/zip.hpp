#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace slidebench::pei {

class CorruptPackageError : public std::runtime_error {
 public:
  explicit CorruptPackageError(const std::string& what)
      : std::runtime_error("corrupt package: " + what) {}
};

/// Read-only view of a ZIP container. Only stored and deflate members are
/// supported, which covers every presentation package seen in practice.
class ZipArchive {
 public:
  struct Entry {
    std::string name;
    std::uint16_t method = 0;
    std::uint32_t crc = 0;
    std::uint64_t compressed_size = 0;
    std::uint64_t size = 0;
    std::uint64_t local_offset = 0;
  };

  explicit ZipArchive(std::vector<std::uint8_t> bytes);

  bool contains(const std::string& name) const { return entries_.count(name) != 0; }
  const Entry* find(const std::string& name) const;
  std::vector<std::string> names() const;

  /// Decompressed member contents. Throws CorruptPackageError on a damaged
  /// member and std::out_of_range when the member is absent.
  std::string read(const std::string& name) const;

 private:
  std::vector<std::uint8_t> bytes_;
  std::map<std::string, Entry> entries_;
};

/// Minimal writer producing stored (uncompressed) members with a fixed
/// timestamp, so identical inputs give identical archives.
class ZipWriter {
 public:
  void add(const std::string& name, const std::string& data);
  std::vector<std::uint8_t> finish() const;

 private:
  std::vector<std::pair<std::string, std::string>> members_;
};

bool looks_like_zip(const std::vector<std::uint8_t>& bytes);

}  // namespace slidebench::pei
