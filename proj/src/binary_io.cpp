#include "landau/binary_io.hpp"

#include <zlib.h>

#include <bit>
#include <fstream>
#include <iterator>

#include "landau/errors.hpp"

namespace landau::binio {

std::uint32_t crc32_of(std::span<const unsigned char> bytes) {
    uLong crc = crc32(0L, Z_NULL, 0);
    // zlib takes uInt lengths; feed in chunks for large payloads.
    constexpr std::size_t kChunk = 1u << 30;
    for (std::size_t pos = 0; pos < bytes.size(); pos += kChunk) {
        const std::size_t len = std::min(kChunk, bytes.size() - pos);
        crc = crc32(crc, bytes.data() + pos, static_cast<uInt>(len));
    }
    return static_cast<std::uint32_t>(crc);
}

void Writer::magic(std::string_view tag) { bytes_.insert(bytes_.end(), tag.begin(), tag.end()); }

void Writer::u32(std::uint32_t v) {
    for (int b = 0; b < 4; ++b) bytes_.push_back(static_cast<unsigned char>(v >> (8 * b)));
}

void Writer::f64(double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) bytes_.push_back(static_cast<unsigned char>(bits >> (8 * b)));
}

void Writer::f64_block(std::span<const double> values) {
    bytes_.reserve(bytes_.size() + 8 * values.size());
    for (double v : values) f64(v);
}

void Writer::crc_of_payload() {
    const std::span<const unsigned char> payload(bytes_.data() + payload_start_,
                                                 bytes_.size() - payload_start_);
    u32(crc32_of(payload));
}

void Writer::write_file(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FileFormatError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes_.data()),
              static_cast<std::streamsize>(bytes_.size()));
    if (!out) throw FileFormatError("short write to " + path.string());
}

Reader Reader::from_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileFormatError("cannot open " + path.string());
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    return Reader(std::move(bytes));
}

void Reader::need(std::size_t count) const {
    if (bytes_.size() - pos_ < count) throw FileFormatError("file is truncated");
}

void Reader::expect_magic(std::string_view tag) {
    need(tag.size());
    for (char c : tag) {
        if (bytes_[pos_++] != static_cast<unsigned char>(c)) {
            throw FileFormatError("bad magic, expected \"" + std::string(tag) + "\"");
        }
    }
}

std::uint32_t Reader::u32() {
    need(4);
    std::uint32_t v = 0;
    for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(bytes_[pos_++]) << (8 * b);
    return v;
}

double Reader::f64() {
    need(8);
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(bytes_[pos_++]) << (8 * b);
    return std::bit_cast<double>(bits);
}

std::vector<double> Reader::f64_block(std::size_t count) {
    if (count > (bytes_.size() - pos_) / 8) throw FileFormatError("file is truncated");
    std::vector<double> values(count);
    for (auto& v : values) v = f64();
    return values;
}

void Reader::verify_crc_of_payload() {
    const std::span<const unsigned char> payload(bytes_.data() + payload_start_,
                                                 pos_ - payload_start_);
    const std::uint32_t actual = crc32_of(payload);
    const std::uint32_t stored = u32();
    if (actual != stored) throw FileFormatError("checksum mismatch");
}

void Reader::expect_end() const {
    if (pos_ != bytes_.size()) throw FileFormatError("trailing bytes after checksum");
}

}  // namespace landau::binio
