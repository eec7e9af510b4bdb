#pragma once

#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace reuse::io {

// Little-endian binary writer. With a null stream it only counts bytes,
// which is how storage reports stay byte-exact without touching disk.
class Writer {
 public:
  explicit Writer(std::ostream* os = nullptr) : os_(os) {}

  void bytes(const void* p, std::size_t n) {
    if (os_) os_->write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
    count_ += n;
  }
  void u8(std::uint8_t v) { bytes(&v, 1); }
  void u32(std::uint32_t v) { bytes(&v, 4); }
  void u64(std::uint64_t v) { bytes(&v, 8); }
  void i64(std::int64_t v) { bytes(&v, 8); }
  void str(const std::string& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    bytes(s.data(), s.size());
  }
  void varint(std::uint64_t v) {
    while (v >= 0x80) {
      u8(static_cast<std::uint8_t>(v) | 0x80);
      v >>= 7;
    }
    u8(static_cast<std::uint8_t>(v));
  }
  std::uint64_t count() const { return count_; }

 private:
  std::ostream* os_;
  std::uint64_t count_ = 0;
};

class Reader {
 public:
  explicit Reader(std::istream& is, std::string name) : is_(is), name_(std::move(name)) {}

  void bytes(void* p, std::size_t n) {
    is_.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(is_.gcount()) != n)
      throw std::runtime_error("truncated file: " + name_);
  }
  std::uint8_t u8() {
    std::uint8_t v;
    bytes(&v, 1);
    return v;
  }
  std::uint32_t u32() {
    std::uint32_t v;
    bytes(&v, 4);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v;
    bytes(&v, 8);
    return v;
  }
  std::int64_t i64() {
    std::int64_t v;
    bytes(&v, 8);
    return v;
  }
  std::string str() {
    std::uint32_t n = u32();
    std::string s(n, '\0');
    if (n) bytes(s.data(), n);
    return s;
  }
  std::uint64_t varint() {
    std::uint64_t v = 0;
    int shift = 0;
    while (true) {
      std::uint8_t b = u8();
      v |= static_cast<std::uint64_t>(b & 0x7F) << shift;
      if (!(b & 0x80)) return v;
      shift += 7;
      if (shift > 63) throw std::runtime_error("varint overflow in " + name_);
    }
  }
  const std::string& name() const { return name_; }

 private:
  std::istream& is_;
  std::string name_;
};

inline std::uint64_t zigzag(std::int64_t v) {
  return (static_cast<std::uint64_t>(v) << 1) ^ static_cast<std::uint64_t>(v >> 63);
}
inline std::int64_t unzigzag(std::uint64_t v) {
  return static_cast<std::int64_t>(v >> 1) ^ -static_cast<std::int64_t>(v & 1);
}

}  // namespace reuse::io
