#include "spectest/generators.hpp"

#include <fstream>
#include <random>

#include "aes128.hpp"

namespace spectest {

BitSequence mt19937_bits(std::uint32_t seed, std::size_t count) {
    if (count == 0) {
        throw std::invalid_argument("mt19937_bits: count must be at least 1");
    }
    std::mt19937 gen(seed);
    const std::size_t words = (count + 31) / 32;
    std::vector<std::uint8_t> packed(words * 4);
    for (std::size_t w = 0; w < words; ++w) {
        const std::uint32_t v = gen();
        packed[4 * w] = static_cast<std::uint8_t>(v >> 24);
        packed[4 * w + 1] = static_cast<std::uint8_t>(v >> 16);
        packed[4 * w + 2] = static_cast<std::uint8_t>(v >> 8);
        packed[4 * w + 3] = static_cast<std::uint8_t>(v);
    }
    return BitSequence::from_packed(std::move(packed), count);
}

namespace {

std::array<std::uint8_t, 16> counter_plus(const std::array<std::uint8_t, 16>& counter,
                                          std::uint64_t lo_add, std::uint64_t hi_add) {
    // Big-endian 128-bit addition of hi_add * 2^64 + lo_add.
    std::array<std::uint8_t, 16> out = counter;
    std::uint64_t carry = lo_add;
    for (int i = 15; i >= 8 && carry != 0; --i) {
        const std::uint64_t sum = static_cast<std::uint64_t>(out[static_cast<std::size_t>(i)]) + (carry & 0xFF);
        out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(sum);
        carry = (carry >> 8) + (sum >> 8);
    }
    carry += hi_add;
    for (int i = 7; i >= 0 && carry != 0; --i) {
        const std::uint64_t sum = static_cast<std::uint64_t>(out[static_cast<std::size_t>(i)]) + (carry & 0xFF);
        out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(sum);
        carry = (carry >> 8) + (sum >> 8);
    }
    return out;
}

} // namespace

BitSequence aes_ctr_bits(const std::array<std::uint8_t, 16>& key,
                         const std::array<std::uint8_t, 16>& counter0, std::size_t count) {
    if (count == 0) {
        throw std::invalid_argument("aes_ctr_bits: count must be at least 1");
    }
    const detail::Aes128 aes(key);
    const std::size_t blocks = (count + 127) / 128;
    std::vector<std::uint8_t> packed(blocks * 16);
    for (std::size_t b = 0; b < blocks; ++b) {
        const auto ctr = counter_plus(counter0, b, 0);
        aes.encrypt_block(ctr.data(), packed.data() + 16 * b);
    }
    return BitSequence::from_packed(std::move(packed), count);
}

PmSequence inject_periodic(const PmSequence& x, std::size_t period) {
    const std::size_t n = x.size();
    if (period == 0) {
        throw std::invalid_argument("inject_periodic: period must be at least 1");
    }
    if (2 * period > n) {
        throw std::invalid_argument("inject_periodic: 2*period must not exceed n");
    }
    std::vector<std::int8_t> values(x.values().begin(), x.values().end());
    for (std::size_t i = 0; i < n; i += 2 * period) {
        values[i] = -1;
    }
    for (std::size_t i = period; i < n; i += 2 * period) {
        values[i] = 1;
    }
    return PmSequence(std::move(values));
}

SequenceSource::SequenceSource(GeneratorSpec spec, std::size_t n) : spec_(std::move(spec)), n_(n) {
    if (n_ == 0) {
        throw std::invalid_argument("SequenceSource: n must be at least 1");
    }
    if (spec_.kind == GeneratorSpec::Kind::File) {
        std::ifstream in(spec_.path, std::ios::binary);
        if (!in) {
            throw IoError("SequenceSource: cannot open '" + spec_.path + "'");
        }
        std::vector<std::uint8_t> raw((std::istreambuf_iterator<char>(in)),
                                      std::istreambuf_iterator<char>());
        if (spec_.file_format == BitFormat::RawMsbFirst) {
            file_bits_ = std::move(raw);
            file_bit_count_ = file_bits_.size() * 8;
        } else {
            // Repack ascii '0'/'1' (whitespace ignored) into MSB-first bytes.
            file_bits_.assign((raw.size() + 7) / 8, 0);
            std::size_t got = 0;
            for (std::uint8_t byte : raw) {
                const char ch = static_cast<char>(byte);
                if (ch == '0' || ch == '1') {
                    if (ch == '1') file_bits_[got >> 3] |= static_cast<std::uint8_t>(0x80u >> (got & 7));
                    ++got;
                } else if (!std::isspace(static_cast<unsigned char>(ch))) {
                    throw std::invalid_argument("SequenceSource: unexpected character in ascii01 file '" +
                                                spec_.path + "'");
                }
            }
            file_bit_count_ = got;
        }
    }
}

BitSequence SequenceSource::make(std::uint64_t global_index) const {
    switch (spec_.kind) {
        case GeneratorSpec::Kind::Mt19937:
            return mt19937_bits(spec_.seed + static_cast<std::uint32_t>(global_index), n_);
        case GeneratorSpec::Kind::AesCtr: {
            // Sequence g owns counter stripe [counter + g*2^64, ...): streams
            // cannot overlap for any sequence shorter than 2^64 bits.
            const auto ctr = counter_plus(spec_.counter, 0, global_index);
            return aes_ctr_bits(spec_.key, ctr, n_);
        }
        case GeneratorSpec::Kind::File: {
            const std::uint64_t offset = global_index * n_;
            if (offset + n_ > file_bit_count_) {
                throw IoError("SequenceSource: file '" + spec_.path + "' holds " +
                              std::to_string(file_bit_count_) + " bits, sequence " +
                              std::to_string(global_index) + " needs [" + std::to_string(offset) +
                              ", " + std::to_string(offset + n_) + ")");
            }
            return slice_bits(file_bits_, offset, n_);
        }
    }
    throw std::invalid_argument("SequenceSource: unknown generator kind");
}

} // namespace spectest
