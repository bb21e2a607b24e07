#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spectest {

/// Raised for unreadable, truncated, or otherwise broken input streams/files.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Serialization formats for bit material. Raw bytes are consumed MSB-first:
/// bit 7 of byte 0 is the first bit of the sequence.
enum class BitFormat { Ascii01, RawMsbFirst };

/// An immutable bit string of fixed length n >= 1, stored packed (MSB-first
/// within each byte, trailing pad bits zero).
class BitSequence {
public:
    BitSequence() = default;

    /// Takes ownership of MSB-first packed bytes holding exactly n bits.
    /// Pad bits in the final byte are forced to zero so equal sequences
    /// compare (and hash) equal regardless of producer.
    static BitSequence from_packed(std::vector<std::uint8_t> packed, std::size_t n);

    /// Convenience for tests and small literals: one int per bit, each 0 or 1.
    static BitSequence from_bits(std::span<const int> bits);

    std::size_t size() const noexcept { return n_; }
    bool empty() const noexcept { return n_ == 0; }

    /// Bit i (0-based), as 0/1.
    int bit(std::size_t i) const {
        return (packed_[i >> 3] >> (7 - (i & 7))) & 1;
    }

    std::span<const std::uint8_t> packed() const noexcept { return packed_; }

    /// Number of one-bits.
    std::size_t popcount() const noexcept;

    /// FNV-1a over the packed bytes and the length. Used by the experiment
    /// harness to assert that every variant saw the same material.
    std::uint64_t hash() const noexcept;

    bool operator==(const BitSequence&) const = default;

private:
    std::vector<std::uint8_t> packed_;
    std::size_t n_ = 0;
};

/// A +/-1 valued sequence, the domain every spectral statistic works in.
class PmSequence {
public:
    PmSequence() = default;
    explicit PmSequence(std::vector<std::int8_t> values);

    std::size_t size() const noexcept { return values_.size(); }
    std::int8_t operator[](std::size_t i) const { return values_[i]; }
    std::span<const std::int8_t> values() const noexcept { return values_; }

    bool operator==(const PmSequence&) const = default;

private:
    std::vector<std::int8_t> values_;
};

/// Reads exactly n bits from `in` in the given format.
/// Ascii01 accepts '0', '1' and whitespace; anything else is an error.
/// Throws IoError on truncation, std::invalid_argument on bad symbols or n == 0.
BitSequence parse_bits(std::istream& in, BitFormat format, std::size_t n);
BitSequence parse_bits(std::span<const std::uint8_t> data, BitFormat format, std::size_t n);

/// Inverse of parse_bits for both formats. Ascii01 yields '0'/'1' characters
/// with no separators; RawMsbFirst yields packed bytes (pad bits zero).
std::vector<std::uint8_t> serialize_bits(const BitSequence& x, BitFormat format);

/// Extracts bits [bit_offset, bit_offset + n) of an MSB-first packed buffer.
/// Throws IoError if the buffer holds fewer than bit_offset + n bits.
BitSequence slice_bits(std::span<const std::uint8_t> packed, std::size_t bit_offset, std::size_t n);

/// Maps each bit x to 2x - 1, so 0 -> -1 and 1 -> +1.
PmSequence to_pm1(const BitSequence& x);

} // namespace spectest
