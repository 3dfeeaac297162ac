#pragma once
#include <bit>
#include <cstdint>
#include <vector>

namespace tds {

// Fixed-width bit vector used for sign patterns of candidates over a sample.
// Candidate training errors and pairwise disagreements reduce to AND / XOR /
// popcount over 64-bit words, which keeps the cover-enumeration loops cheap.
struct BitVec {
    std::vector<std::uint64_t> words;
    int nbits = 0;

    BitVec() = default;
    explicit BitVec(int n) : words((n + 63) / 64, 0), nbits(n) {}

    static BitVec ones(int n) {
        BitVec b(n);
        for (auto& w : b.words) w = ~0ULL;
        b.mask_tail();
        return b;
    }

    void set(int i) { words[i >> 6] |= (1ULL << (i & 63)); }

    bool get(int i) const { return (words[i >> 6] >> (i & 63)) & 1ULL; }

    void mask_tail() {
        const int rem = nbits & 63;
        if (rem != 0 && !words.empty()) words.back() &= (1ULL << rem) - 1ULL;
    }

    int count() const {
        int c = 0;
        for (std::uint64_t w : words) c += std::popcount(w);
        return c;
    }

    void and_assign(const BitVec& other) {
        for (std::size_t i = 0; i < words.size(); ++i) words[i] &= other.words[i];
    }

    int count_and(const BitVec& other) const {
        int c = 0;
        for (std::size_t i = 0; i < words.size(); ++i)
            c += std::popcount(words[i] & other.words[i]);
        return c;
    }

    int count_xor(const BitVec& other) const {
        int c = 0;
        for (std::size_t i = 0; i < words.size(); ++i)
            c += std::popcount(words[i] ^ other.words[i]);
        return c;
    }
};

} // namespace tds
