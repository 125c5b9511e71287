#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace landau::binio {

// Little-endian serialization shared by the kernel cache and field dumps.
class Writer {
public:
    void magic(std::string_view tag);
    void u32(std::uint32_t v);
    void f64(double v);
    void f64_block(std::span<const double> values);
    // CRC32 of every byte appended since the last mark_payload() call.
    void mark_payload() { payload_start_ = bytes_.size(); }
    void crc_of_payload();

    const std::vector<unsigned char>& bytes() const noexcept { return bytes_; }
    void write_file(const std::filesystem::path& path) const;

private:
    std::vector<unsigned char> bytes_;
    std::size_t payload_start_ = 0;
};

class Reader {
public:
    static Reader from_file(const std::filesystem::path& path);
    explicit Reader(std::vector<unsigned char> bytes) : bytes_(std::move(bytes)) {}

    void expect_magic(std::string_view tag);
    std::uint32_t u32();
    double f64();
    std::vector<double> f64_block(std::size_t count);
    void mark_payload() { payload_start_ = pos_; }
    void verify_crc_of_payload();
    void expect_end() const;

private:
    void need(std::size_t count) const;

    std::vector<unsigned char> bytes_;
    std::size_t pos_ = 0;
    std::size_t payload_start_ = 0;
};

std::uint32_t crc32_of(std::span<const unsigned char> bytes);

}  // namespace landau::binio
