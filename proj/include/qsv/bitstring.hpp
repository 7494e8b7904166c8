#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsv {

// Bit positions are 1-based throughout. When a string is packed into an
// integer, bit 1 is the most significant bit: index(x) = sum_i x_i * 2^(n-i).
class BitString {
public:
    BitString() = default;

    explicit BitString(std::vector<uint8_t> bits) : bits_(std::move(bits)) {
        if (bits_.empty()) throw std::invalid_argument("BitString: length must be >= 1");
        for (uint8_t b : bits_) {
            if (b > 1) throw std::invalid_argument("BitString: entries must be 0 or 1");
        }
    }

    static BitString from_string(const std::string& s) {
        std::vector<uint8_t> v;
        v.reserve(s.size());
        for (char c : s) {
            if (c != '0' && c != '1') throw std::invalid_argument("BitString: bad character");
            v.push_back(static_cast<uint8_t>(c - '0'));
        }
        return BitString(std::move(v));
    }

    static BitString from_index(uint64_t value, int n) {
        if (n < 1 || n > 63) throw std::invalid_argument("BitString: n out of range");
        if (value >> n) throw std::invalid_argument("BitString: value does not fit in n bits");
        std::vector<uint8_t> v(static_cast<size_t>(n));
        for (int i = 1; i <= n; ++i) v[static_cast<size_t>(i - 1)] = (value >> (n - i)) & 1u;
        return BitString(std::move(v));
    }

    static BitString zeros(int n) { return from_index(0, n); }

    int size() const { return static_cast<int>(bits_.size()); }

    // 1-based access
    uint8_t bit(int pos) const {
        if (pos < 1 || pos > size()) throw std::out_of_range("BitString: position out of range");
        return bits_[static_cast<size_t>(pos - 1)];
    }

    void set_bit(int pos, uint8_t v) {
        if (pos < 1 || pos > size()) throw std::out_of_range("BitString: position out of range");
        if (v > 1) throw std::invalid_argument("BitString: bit must be 0 or 1");
        bits_[static_cast<size_t>(pos - 1)] = v;
    }

    uint64_t to_index() const {
        if (size() > 63) throw std::overflow_error("BitString: too long for integer index");
        uint64_t v = 0;
        for (uint8_t b : bits_) v = (v << 1) | b;
        return v;
    }

    std::string to_string() const {
        std::string s;
        s.reserve(bits_.size());
        for (uint8_t b : bits_) s.push_back(static_cast<char>('0' + b));
        return s;
    }

    BitString operator^(const BitString& other) const {
        if (other.size() != size()) throw std::invalid_argument("BitString: length mismatch");
        std::vector<uint8_t> v(bits_);
        for (size_t i = 0; i < v.size(); ++i) v[i] ^= other.bits_[i];
        return BitString(std::move(v));
    }

    bool operator==(const BitString& other) const { return bits_ == other.bits_; }

    const std::vector<uint8_t>& bits() const { return bits_; }

private:
    std::vector<uint8_t> bits_;
};

// A subset of [n] held as strictly increasing 1-based indices.
struct Subset {
    std::vector<int> indices;
    int ground_size = 0;

    Subset() = default;
    Subset(std::vector<int> idx, int n) : indices(std::move(idx)), ground_size(n) { validate(); }

    int size() const { return static_cast<int>(indices.size()); }

    void validate() const {
        if (ground_size < 1) throw std::invalid_argument("Subset: ground size must be >= 1");
        int prev = 0;
        for (int i : indices) {
            if (i <= prev || i > ground_size)
                throw std::invalid_argument("Subset: indices must be strictly increasing in [1,n]");
            prev = i;
        }
    }

    bool contains(int pos) const {
        return std::binary_search(indices.begin(), indices.end(), pos);
    }

    // Bitmask in the big-endian index convention (position i -> bit 2^(n-i)).
    uint64_t mask() const {
        uint64_t m = 0;
        for (int i : indices) m |= uint64_t(1) << (ground_size - i);
        return m;
    }

    bool operator==(const Subset& other) const {
        return ground_size == other.ground_size && indices == other.indices;
    }
};

// Substring x_s, packed big-endian over the sorted positions of s.
inline uint64_t substring_index(uint64_t x_index, const Subset& s) {
    uint64_t v = 0;
    for (int i : s.indices) v = (v << 1) | ((x_index >> (s.ground_size - i)) & 1u);
    return v;
}

inline uint8_t subset_parity(uint64_t x_index, const Subset& s) {
    uint64_t masked = x_index & s.mask();
    return static_cast<uint8_t>(__builtin_popcountll(masked) & 1);
}

// Lexicographic enumeration of k-subsets of [n]. Returns false once exhausted.
inline bool first_k_subset(int n, int k, std::vector<int>& idx) {
    if (k < 0 || k > n) return false;
    idx.resize(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i + 1;
    return true;
}

inline bool next_k_subset(int n, std::vector<int>& idx) {
    int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[static_cast<size_t>(i)] < n - (k - 1 - i)) {
            ++idx[static_cast<size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
            return true;
        }
    }
    return false;
}

template <class Fn>
void for_each_k_subset(int n, int k, Fn&& fn) {
    std::vector<int> idx;
    if (!first_k_subset(n, k, idx)) return;
    do {
        fn(Subset(idx, n));
    } while (next_k_subset(n, idx));
}

}  // namespace qsv
