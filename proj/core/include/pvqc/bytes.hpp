#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pvqc {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

template <std::size_t N>
using FixedBytes = std::array<std::uint8_t, N>;

using Digest = FixedBytes<32>;
using Nonce = FixedBytes<16>;

inline ByteView as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

std::string to_hex(ByteView data);
Bytes from_hex(std::string_view hex);

// Big-endian append-only encoder for the on-disk record formats.
class ByteWriter {
 public:
  ByteWriter& put(ByteView data) {
    out_.insert(out_.end(), data.begin(), data.end());
    return *this;
  }
  ByteWriter& put(std::string_view ascii) { return put(as_bytes(ascii)); }
  ByteWriter& u8(std::uint8_t v) {
    out_.push_back(v);
    return *this;
  }
  ByteWriter& u32(std::uint32_t v);
  ByteWriter& u64(std::uint64_t v);
  ByteWriter& f64(double v);

  const Bytes& bytes() const& { return out_; }
  Bytes bytes() && { return std::move(out_); }

 private:
  Bytes out_;
};

// Bounds-checked decoder; every read past the end throws FormatError.
class ByteReader {
 public:
  explicit ByteReader(ByteView data) : data_(data) {}

  ByteView take(std::size_t n);
  template <std::size_t N>
  FixedBytes<N> fixed() {
    FixedBytes<N> out{};
    auto src = take(N);
    std::copy(src.begin(), src.end(), out.begin());
    return out;
  }
  std::uint8_t u8();
  std::uint32_t u32();
  std::uint64_t u64();
  double f64();

  // Consumes `magic` or throws FormatError naming `what`.
  void expect(std::string_view magic, std::string_view what);

  std::size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return remaining() == 0; }
  void expect_done(std::string_view what) const;

 private:
  ByteView data_;
  std::size_t pos_ = 0;
};

Bytes read_file(const std::string& path);
void write_file(const std::string& path, ByteView data);

}  // namespace pvqc
