#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>

#include "spectest/bitseq.hpp"

namespace spectest {

/// Identity of a deterministic bit source. Identical specs produce
/// identical bitstreams.
struct GeneratorSpec {
    enum class Kind { Mt19937, AesCtr, File };

    Kind kind = Kind::Mt19937;
    std::uint32_t seed = 5489;                  ///< MT19937 base seed
    std::array<std::uint8_t, 16> key{};         ///< AES-128 key
    std::array<std::uint8_t, 16> counter{};     ///< AES-CTR initial counter (big-endian)
    std::string path;                           ///< file source
    BitFormat file_format = BitFormat::RawMsbFirst;
};

/// Standard MT19937 (624-word state, standard seeding recurrence),
/// successive 32-bit outputs serialized MSB-first. count >= 1.
BitSequence mt19937_bits(std::uint32_t seed, std::size_t count);

/// AES-128 encryptions of counter0, counter0+1, ... (128-bit big-endian
/// increment), ciphertext bytes concatenated MSB-first and truncated to
/// count bits. count >= 1.
BitSequence aes_ctr_bits(const std::array<std::uint8_t, 16>& key,
                         const std::array<std::uint8_t, 16>& counter0,
                         std::size_t count);

/// Periodic overwrite with period parameter T (0-based indices):
/// positions i = 0 (mod 2T) become -1, positions i = T (mod 2T) become +1,
/// everything else untouched. Idempotent. Requires 2T <= n.
PmSequence inject_periodic(const PmSequence& x, std::size_t period);

/// Deterministic per-index sequence factory used by the experiment harness.
///
/// Sequence `g` uses MT seed `spec.seed + g` (mod 2^32), or AES counter
/// `spec.counter + g * 2^64` (so streams can never overlap for n < 2^64
/// bits), or file bits [g*n, (g+1)*n). Stateless per call and safe to use
/// from concurrent workers; the result depends only on (spec, n, g).
class SequenceSource {
public:
    SequenceSource(GeneratorSpec spec, std::size_t n);

    BitSequence make(std::uint64_t global_index) const;

    std::size_t sequence_length() const noexcept { return n_; }
    const GeneratorSpec& spec() const noexcept { return spec_; }

private:
    GeneratorSpec spec_;
    std::size_t n_ = 0;
    std::vector<std::uint8_t> file_bits_; ///< whole file, repacked MSB-first
    std::size_t file_bit_count_ = 0;
};

} // namespace spectest
