#pragma once

#include <cstdint>
#include <vector>

namespace scatterlab {

/// Open-addressing counter keyed by uint64 (key ~0 is reserved).
/// Reused across calls to avoid reallocation in hot loops.
class CountTable {
public:
    void reset(std::size_t expected)
    {
        std::size_t cap = 16;
        while (cap < 2 * expected + 2) cap <<= 1;
        if (keys_.size() != cap) {
            keys_.assign(cap, kEmpty);
            counts_.assign(cap, 0);
        } else {
            for (auto i : used_) keys_[i] = kEmpty;
        }
        used_.clear();
        mask_ = cap - 1;
    }

    /// Increments the counter of `key` and returns the new value.
    std::uint32_t bump(std::uint64_t key)
    {
        std::size_t i = hash(key) & mask_;
        while (keys_[i] != kEmpty && keys_[i] != key) i = (i + 1) & mask_;
        if (keys_[i] == kEmpty) {
            keys_[i] = key;
            counts_[i] = 0;
            used_.push_back(i);
        }
        return ++counts_[i];
    }

    template <class Fn>
    void for_each(Fn&& fn) const
    {
        for (auto i : used_) fn(keys_[i], counts_[i]);
    }

private:
    static constexpr std::uint64_t kEmpty = ~std::uint64_t{0};
    static std::uint64_t hash(std::uint64_t x)
    {
        x ^= x >> 33;
        x *= 0xff51afd7ed558ccdULL;
        x ^= x >> 33;
        return x;
    }
    std::vector<std::uint64_t> keys_;
    std::vector<std::uint32_t> counts_;
    std::vector<std::size_t> used_;
    std::size_t mask_ = 0;
};

}  // namespace scatterlab
