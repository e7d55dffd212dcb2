#include "slidebench/zip.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstring>

namespace slidebench::pei {

namespace {

constexpr std::uint32_t kLocalSig = 0x04034b50;
constexpr std::uint32_t kCentralSig = 0x02014b50;
constexpr std::uint32_t kEndSig = 0x06054b50;

std::uint16_t u16(const std::vector<std::uint8_t>& b, std::size_t off) {
  if (off + 2 > b.size()) throw CorruptPackageError("unexpected end of archive");
  return static_cast<std::uint16_t>(b[off] | (b[off + 1] << 8));
}

std::uint32_t u32(const std::vector<std::uint8_t>& b, std::size_t off) {
  if (off + 4 > b.size()) throw CorruptPackageError("unexpected end of archive");
  return static_cast<std::uint32_t>(b[off]) | (static_cast<std::uint32_t>(b[off + 1]) << 8) |
         (static_cast<std::uint32_t>(b[off + 2]) << 16) |
         (static_cast<std::uint32_t>(b[off + 3]) << 24);
}

void put16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>(v >> 8));
}

void put32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::string inflate_raw(const std::uint8_t* data, std::size_t len, std::size_t expected) {
  std::string out(expected, '\0');
  z_stream zs{};
  if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) throw std::runtime_error("zlib init failed");
  zs.next_in = const_cast<Bytef*>(data);
  zs.avail_in = static_cast<uInt>(len);
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = inflate(&zs, Z_FINISH);
  const auto produced = zs.total_out;
  inflateEnd(&zs);
  if (rc != Z_STREAM_END || produced != expected) {
    throw CorruptPackageError("deflate stream damaged");
  }
  return out;
}

}  // namespace

bool looks_like_zip(const std::vector<std::uint8_t>& bytes) {
  return bytes.size() >= 4 && bytes[0] == 'P' && bytes[1] == 'K' &&
         (bytes[2] == 3 || bytes[2] == 5) && (bytes[3] == 4 || bytes[3] == 6);
}

ZipArchive::ZipArchive(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {
  if (bytes_.size() < 22) throw CorruptPackageError("too short to be a ZIP archive");

  // the end record sits in the last 64 KiB + 22 bytes
  const std::size_t lowest = bytes_.size() > 65557 ? bytes_.size() - 65557 : 0;
  std::size_t eocd = std::string::npos;
  for (std::size_t pos = bytes_.size() - 22 + 1; pos-- > lowest;) {
    if (u32(bytes_, pos) == kEndSig) {
      eocd = pos;
      break;
    }
  }
  if (eocd == std::string::npos) throw CorruptPackageError("end of central directory not found");

  const std::size_t count = u16(bytes_, eocd + 10);
  const std::size_t cd_size = u32(bytes_, eocd + 12);
  const std::size_t cd_offset = u32(bytes_, eocd + 16);
  if (cd_offset + cd_size > eocd) throw CorruptPackageError("central directory out of bounds");

  std::size_t pos = cd_offset;
  for (std::size_t i = 0; i < count; ++i) {
    if (u32(bytes_, pos) != kCentralSig) throw CorruptPackageError("bad central directory entry");
    Entry e;
    e.method = u16(bytes_, pos + 10);
    e.crc = u32(bytes_, pos + 16);
    e.compressed_size = u32(bytes_, pos + 20);
    e.size = u32(bytes_, pos + 24);
    const std::size_t name_len = u16(bytes_, pos + 28);
    const std::size_t extra_len = u16(bytes_, pos + 30);
    const std::size_t comment_len = u16(bytes_, pos + 32);
    e.local_offset = u32(bytes_, pos + 42);
    if (pos + 46 + name_len > bytes_.size()) throw CorruptPackageError("entry name truncated");
    e.name.assign(reinterpret_cast<const char*>(bytes_.data() + pos + 46), name_len);
    pos += 46 + name_len + extra_len + comment_len;
    if (!e.name.empty() && e.name.back() == '/') continue;
    entries_[e.name] = e;
  }
}

const ZipArchive::Entry* ZipArchive::find(const std::string& name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> ZipArchive::names() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [name, e] : entries_) out.push_back(name);
  return out;
}

std::string ZipArchive::read(const std::string& name) const {
  const Entry* e = find(name);
  if (!e) throw std::out_of_range("no such package member: " + name);
  const std::size_t off = e->local_offset;
  if (u32(bytes_, off) != kLocalSig) throw CorruptPackageError("bad local header for " + name);
  const std::size_t data = off + 30 + u16(bytes_, off + 26) + u16(bytes_, off + 28);
  if (data + e->compressed_size > bytes_.size()) {
    throw CorruptPackageError("member data truncated: " + name);
  }
  std::string out;
  if (e->method == 0) {
    if (e->compressed_size != e->size) throw CorruptPackageError("stored size mismatch: " + name);
    out.assign(reinterpret_cast<const char*>(bytes_.data() + data), e->size);
  } else if (e->method == 8) {
    out = inflate_raw(bytes_.data() + data, e->compressed_size, e->size);
  } else {
    throw CorruptPackageError("unsupported compression method " + std::to_string(e->method) +
                              " for " + name);
  }
  const auto crc = crc32(0L, reinterpret_cast<const Bytef*>(out.data()),
                         static_cast<uInt>(out.size()));
  if (crc != e->crc) throw CorruptPackageError("checksum mismatch: " + name);
  return out;
}

void ZipWriter::add(const std::string& name, const std::string& data) {
  members_.emplace_back(name, data);
}

std::vector<std::uint8_t> ZipWriter::finish() const {
  // 1980-01-01 00:00
  constexpr std::uint16_t kTime = 0;
  constexpr std::uint16_t kDate = (0 << 9) | (1 << 5) | 1;

  std::string out, central;
  for (const auto& [name, data] : members_) {
    const auto crc = static_cast<std::uint32_t>(
        crc32(0L, reinterpret_cast<const Bytef*>(data.data()), static_cast<uInt>(data.size())));
    const auto offset = static_cast<std::uint32_t>(out.size());
    const auto size = static_cast<std::uint32_t>(data.size());

    put32(out, kLocalSig);
    put16(out, 20);
    put16(out, 0);
    put16(out, 0);
    put16(out, kTime);
    put16(out, kDate);
    put32(out, crc);
    put32(out, size);
    put32(out, size);
    put16(out, static_cast<std::uint16_t>(name.size()));
    put16(out, 0);
    out += name;
    out += data;

    put32(central, kCentralSig);
    put16(central, 20);
    put16(central, 20);
    put16(central, 0);
    put16(central, 0);
    put16(central, kTime);
    put16(central, kDate);
    put32(central, crc);
    put32(central, size);
    put32(central, size);
    put16(central, static_cast<std::uint16_t>(name.size()));
    put16(central, 0);
    put16(central, 0);
    put16(central, 0);
    put16(central, 0);
    put32(central, 0);
    put32(central, offset);
    central += name;
  }
  const auto cd_offset = static_cast<std::uint32_t>(out.size());
  out += central;
  put32(out, kEndSig);
  put16(out, 0);
  put16(out, 0);
  put16(out, static_cast<std::uint16_t>(members_.size()));
  put16(out, static_cast<std::uint16_t>(members_.size()));
  put32(out, static_cast<std::uint32_t>(central.size()));
  put32(out, cd_offset);
  put16(out, 0);
  return {out.begin(), out.end()};
}

}  // namespace slidebench::pei
