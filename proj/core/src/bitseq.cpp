#include "spectest/bitseq.hpp"

#include <bit>
#include <cctype>
#include <istream>

namespace spectest {

namespace {

std::size_t packed_size(std::size_t n) { return (n + 7) / 8; }

void zero_pad_bits(std::vector<std::uint8_t>& packed, std::size_t n) {
    if (n % 8 != 0 && !packed.empty()) {
        const std::uint8_t keep = static_cast<std::uint8_t>(0xFFu << (8 - n % 8));
        packed.back() &= keep;
    }
}

} // namespace

BitSequence BitSequence::from_packed(std::vector<std::uint8_t> packed, std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("BitSequence: length must be at least 1");
    }
    if (packed.size() < packed_size(n)) {
        throw std::invalid_argument("BitSequence: packed buffer shorter than length");
    }
    packed.resize(packed_size(n));
    zero_pad_bits(packed, n);
    BitSequence s;
    s.packed_ = std::move(packed);
    s.n_ = n;
    return s;
}

BitSequence BitSequence::from_bits(std::span<const int> bits) {
    if (bits.empty()) {
        throw std::invalid_argument("BitSequence: length must be at least 1");
    }
    std::vector<std::uint8_t> packed(packed_size(bits.size()), 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != 0 && bits[i] != 1) {
            throw std::invalid_argument("BitSequence: bits must be 0 or 1");
        }
        packed[i >> 3] |= static_cast<std::uint8_t>(bits[i] << (7 - (i & 7)));
    }
    return from_packed(std::move(packed), bits.size());
}

std::size_t BitSequence::popcount() const noexcept {
    std::size_t c = 0;
    for (std::uint8_t b : packed_) c += static_cast<std::size_t>(std::popcount(b));
    return c;
}

std::uint64_t BitSequence::hash() const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint8_t byte) {
        h ^= byte;
        h *= 1099511628211ULL;
    };
    for (std::uint8_t b : packed_) mix(b);
    for (int i = 0; i < 8; ++i) mix(static_cast<std::uint8_t>(n_ >> (8 * i)));
    return h;
}

PmSequence::PmSequence(std::vector<std::int8_t> values) : values_(std::move(values)) {
    for (std::int8_t v : values_) {
        if (v != 1 && v != -1) {
            throw std::invalid_argument("PmSequence: values must be +1 or -1");
        }
    }
}

namespace {

BitSequence parse_ascii01(std::istream& in, std::size_t n) {
    std::vector<std::uint8_t> packed(packed_size(n), 0);
    std::size_t got = 0;
    int ch;
    while (got < n && (ch = in.get()) != std::char_traits<char>::eof()) {
        if (ch == '0' || ch == '1') {
            if (ch == '1') packed[got >> 3] |= static_cast<std::uint8_t>(0x80u >> (got & 7));
            ++got;
        } else if (!std::isspace(ch)) {
            throw std::invalid_argument("parse_bits: unexpected character '" +
                                        std::string(1, static_cast<char>(ch)) + "' in ascii01 input");
        }
    }
    if (got < n) {
        throw IoError("parse_bits: input truncated, needed " + std::to_string(n) +
                      " bits but found " + std::to_string(got));
    }
    return BitSequence::from_packed(std::move(packed), n);
}

BitSequence parse_raw(std::istream& in, std::size_t n) {
    std::vector<std::uint8_t> packed(packed_size(n), 0);
    in.read(reinterpret_cast<char*>(packed.data()), static_cast<std::streamsize>(packed.size()));
    const auto got_bytes = static_cast<std::size_t>(in.gcount());
    if (got_bytes * 8 < n) {
        throw IoError("parse_bits: input truncated, needed " + std::to_string(n) +
                      " bits but found " + std::to_string(got_bytes * 8));
    }
    return BitSequence::from_packed(std::move(packed), n);
}

} // namespace

BitSequence parse_bits(std::istream& in, BitFormat format, std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("parse_bits: n must be at least 1");
    }
    return format == BitFormat::Ascii01 ? parse_ascii01(in, n) : parse_raw(in, n);
}

BitSequence parse_bits(std::span<const std::uint8_t> data, BitFormat format, std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("parse_bits: n must be at least 1");
    }
    if (format == BitFormat::RawMsbFirst) {
        if (data.size() * 8 < n) {
            throw IoError("parse_bits: input truncated, needed " + std::to_string(n) +
                          " bits but found " + std::to_string(data.size() * 8));
        }
        return BitSequence::from_packed(std::vector<std::uint8_t>(data.begin(), data.end()), n);
    }
    std::vector<std::uint8_t> packed(packed_size(n), 0);
    std::size_t got = 0;
    for (std::uint8_t byte : data) {
        if (got == n) break;
        const char ch = static_cast<char>(byte);
        if (ch == '0' || ch == '1') {
            if (ch == '1') packed[got >> 3] |= static_cast<std::uint8_t>(0x80u >> (got & 7));
            ++got;
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            throw std::invalid_argument("parse_bits: unexpected character '" + std::string(1, ch) +
                                        "' in ascii01 input");
        }
    }
    if (got < n) {
        throw IoError("parse_bits: input truncated, needed " + std::to_string(n) +
                      " bits but found " + std::to_string(got));
    }
    return BitSequence::from_packed(std::move(packed), n);
}

std::vector<std::uint8_t> serialize_bits(const BitSequence& x, BitFormat format) {
    if (format == BitFormat::RawMsbFirst) {
        return {x.packed().begin(), x.packed().end()};
    }
    std::vector<std::uint8_t> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = static_cast<std::uint8_t>('0' + x.bit(i));
    }
    return out;
}

BitSequence slice_bits(std::span<const std::uint8_t> packed, std::size_t bit_offset, std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("slice_bits: n must be at least 1");
    }
    if (packed.size() * 8 < bit_offset + n) {
        throw IoError("slice_bits: source holds " + std::to_string(packed.size() * 8) +
                      " bits, requested [" + std::to_string(bit_offset) + ", " +
                      std::to_string(bit_offset + n) + ")");
    }
    std::vector<std::uint8_t> out(packed_size(n), 0);
    if (bit_offset % 8 == 0) {
        const std::size_t first = bit_offset / 8;
        std::copy(packed.begin() + static_cast<std::ptrdiff_t>(first),
                  packed.begin() + static_cast<std::ptrdiff_t>(first + packed_size(n)), out.begin());
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t src = bit_offset + i;
            const int bit = (packed[src >> 3] >> (7 - (src & 7))) & 1;
            if (bit) out[i >> 3] |= static_cast<std::uint8_t>(0x80u >> (i & 7));
        }
    }
    return BitSequence::from_packed(std::move(out), n);
}

PmSequence to_pm1(const BitSequence& x) {
    std::vector<std::int8_t> values(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        values[i] = static_cast<std::int8_t>(2 * x.bit(i) - 1);
    }
    return PmSequence(std::move(values));
}

} // namespace spectest
