#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "clmatch/errors.hpp"

namespace clmatch {

// Flat bit string with big-endian field access: bit 0 is the leftmost bit of
// the string, and a w-bit field stores its value MSB-first.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : bits_(n, 0) {}

    static BitVec zeros(std::size_t n) { return BitVec(n); }

    static BitVec from_seed(std::uint64_t seed, std::size_t n) {
        BitVec v(n);
        std::mt19937_64 rng(seed);
        std::uint64_t word = 0;
        int have = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (have == 0) {
                word = rng();
                have = 64;
            }
            v.bits_[i] = static_cast<std::uint8_t>(word & 1);
            word >>= 1;
            --have;
        }
        return v;
    }

    // Hex expands MSB-first, 4 bits per char; the string must cover exactly
    // ceil(n/4) chars and the unused low bits of the last char must be 0.
    static BitVec from_hex(const std::string& hex, std::size_t n) {
        std::size_t want = (n + 3) / 4;
        if (hex.size() != want)
            throw InputError("tape hex: expected " + std::to_string(want) + " hex chars for " +
                             std::to_string(n) + " bits, got " + std::to_string(hex.size()));
        BitVec v(n);
        for (std::size_t c = 0; c < hex.size(); ++c) {
            int d;
            char ch = hex[c];
            if (ch >= '0' && ch <= '9') d = ch - '0';
            else if (ch >= 'a' && ch <= 'f') d = ch - 'a' + 10;
            else if (ch >= 'A' && ch <= 'F') d = ch - 'A' + 10;
            else throw InputError(std::string("tape hex: bad character '") + ch + "'");
            for (int b = 0; b < 4; ++b) {
                std::size_t pos = 4 * c + b;
                std::uint8_t bit = static_cast<std::uint8_t>((d >> (3 - b)) & 1);
                if (pos < n) v.bits_[pos] = bit;
                else if (bit) throw InputError("tape hex: nonzero pad bits past the tape end");
            }
        }
        return v;
    }

    std::string to_hex() const {
        static const char* digits = "0123456789abcdef";
        std::string out;
        out.reserve((size() + 3) / 4);
        for (std::size_t c = 0; c * 4 < size(); ++c) {
            int d = 0;
            for (int b = 0; b < 4; ++b) {
                std::size_t pos = 4 * c + b;
                d = (d << 1) | (pos < size() ? bits_[pos] : 0);
            }
            out.push_back(digits[d]);
        }
        return out;
    }

    std::size_t size() const { return bits_.size(); }

    bool get(std::size_t i) const { return bits_.at(i) != 0; }
    void set(std::size_t i, bool b) { bits_.at(i) = b ? 1 : 0; }

    std::uint64_t read_field(std::size_t offset, int width) const {
        if (width < 0 || width > 63) throw InternalError("bit field width out of range");
        if (offset + static_cast<std::size_t>(width) > size())
            throw InternalError("bit field read past end");
        std::uint64_t v = 0;
        for (int i = 0; i < width; ++i) v = (v << 1) | bits_[offset + i];
        return v;
    }

    void write_field(std::size_t offset, int width, std::uint64_t value) {
        if (width < 0 || width > 63) throw InternalError("bit field width out of range");
        if (offset + static_cast<std::size_t>(width) > size())
            throw InternalError("bit field write past end");
        if (width < 63 && (value >> width) != 0)
            throw InternalError("bit field value does not fit");
        for (int i = 0; i < width; ++i)
            bits_[offset + i] = static_cast<std::uint8_t>((value >> (width - 1 - i)) & 1);
    }

    void append(bool b) { bits_.push_back(b ? 1 : 0); }

    void append_field(int width, std::uint64_t value) {
        if (width < 0 || width > 63) throw InternalError("bit field width out of range");
        if (width < 63 && (value >> width) != 0)
            throw InternalError("bit field value does not fit");
        for (int i = 0; i < width; ++i)
            bits_.push_back(static_cast<std::uint8_t>((value >> (width - 1 - i)) & 1));
    }

    BitVec slice(std::size_t offset, std::size_t len) const {
        if (offset + len > size()) throw InternalError("bit slice past end");
        BitVec v(len);
        for (std::size_t i = 0; i < len; ++i) v.bits_[i] = bits_[offset + i];
        return v;
    }

    void splice(std::size_t offset, const BitVec& other) {
        if (offset + other.size() > size()) throw InternalError("bit splice past end");
        for (std::size_t i = 0; i < other.size(); ++i) bits_[offset + i] = other.bits_[i];
    }

    // Interprets the whole vector as a big-endian integer and adds 1 (mod 2^n).
    // Used by exhaustive string sweeps.
    void increment() {
        for (std::size_t i = size(); i-- > 0;) {
            if (bits_[i] == 0) {
                bits_[i] = 1;
                return;
            }
            bits_[i] = 0;
        }
    }

    bool is_zero() const {
        for (auto b : bits_)
            if (b) return false;
        return true;
    }

    bool operator==(const BitVec& o) const { return bits_ == o.bits_; }
    bool operator!=(const BitVec& o) const { return bits_ != o.bits_; }

private:
    std::vector<std::uint8_t> bits_;
};

} // namespace clmatch
