#pragma once

#include <array>
#include <cstdint>

namespace spectest::detail {

/// AES-128 block encryption (FIPS-197), encrypt-only. Used as the keyed
/// deterministic permutation behind the counter-mode bit generator.
class Aes128 {
public:
    explicit Aes128(const std::array<std::uint8_t, 16>& key);

    void encrypt_block(const std::uint8_t in[16], std::uint8_t out[16]) const;

private:
    std::array<std::uint8_t, 176> round_keys_{};
};

} // namespace spectest::detail
