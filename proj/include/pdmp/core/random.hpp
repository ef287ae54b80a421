#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace pdmp {

struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;
};

/// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Counter-based random stream. The key is derived from the master seed and
/// the high half of the counter carries the stream index, so the sequence is
/// a pure function of SeedSpec and distinct streams never share a block.
/// Single owner; not thread-safe.
class RandomStream {
public:
    using result_type = std::uint32_t;

    explicit RandomStream(SeedSpec seed);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return next_u32(); }

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Unit exponential, -ln(1 - u).
    double exponential();
    /// Standard normal (Box-Muller, both variates used).
    double normal();
    /// +1 or -1 with probability 1/2.
    int sign();

    std::uint64_t blocks_used() const noexcept { return block_; }

private:
    void refill();

    std::array<std::uint32_t, 2> key_{};
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int pos_ = 4;
    bool has_spare_normal_ = false;
    double spare_normal_ = 0.0;
};

/// Convenience: stream for (master, index).
inline RandomStream derive_stream(SeedSpec seed) { return RandomStream(seed); }

}  // namespace pdmp
