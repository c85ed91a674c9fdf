#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hcgame {

/// Largest hypercube dimension any module accepts.
inline constexpr int kMaxDimension = 24;

inline void check_dimension(int m, int max_m = kMaxDimension) {
    if (m < 2 || m > max_m) {
        throw std::invalid_argument(
            "dimension m=" + std::to_string(m) + " outside supported range [2, " + std::to_string(max_m) + "]");
    }
}

/// Coordinates are 1-based. Coordinate i of an m-bit code lives at bit (m - i),
/// so the integer value of a code is the big-endian reading of (x_1, ..., x_m).
constexpr int coord_shift(int m, int i) { return m - i; }

constexpr int coord_of(std::uint32_t code, int m, int i) { return static_cast<int>((code >> coord_shift(m, i)) & 1U); }

constexpr std::uint32_t with_coord(std::uint32_t code, int m, int i, int value) {
    const std::uint32_t mask = 1U << coord_shift(m, i);
    return value ? (code | mask) : (code & ~mask);
}

/// Inserts `bit` at shift position `pos` of `low`, moving higher bits up by one.
/// Monotone in `low`, which keeps facet enumeration sorted.
constexpr std::uint32_t insert_bit(std::uint32_t low, int pos, int bit) {
    const std::uint32_t below = low & ((1U << pos) - 1U);
    const std::uint32_t above = (low >> pos) << (pos + 1);
    return above | (static_cast<std::uint32_t>(bit) << pos) | below;
}

/// Inverse of insert_bit.
constexpr std::uint32_t remove_bit(std::uint32_t code, int pos) {
    const std::uint32_t below = code & ((1U << pos) - 1U);
    return ((code >> (pos + 1)) << pos) | below;
}

/// A length-m bit string tagged by its role. Vertex and Question share layout
/// but are not interchangeable.
template <class Tag>
class BitString {
   public:
    BitString() = default;
    BitString(int m, std::uint32_t code) : m_(m), code_(code) {
        check_dimension(m);
        if (m < 32 && (code >> m) != 0) {
            throw std::invalid_argument("code has bits beyond dimension " + std::to_string(m));
        }
    }

    static BitString from_bits(std::span<const int> bits) {
        std::uint32_t code = 0;
        for (int b : bits) {
            if (b != 0 && b != 1) {
                throw std::invalid_argument("bit string entries must be 0 or 1");
            }
            code = (code << 1) | static_cast<std::uint32_t>(b);
        }
        return BitString(static_cast<int>(bits.size()), code);
    }

    int m() const { return m_; }
    std::uint32_t code() const { return code_; }

    /// Coordinate i in 1..m.
    int operator[](int i) const { return coord_of(code_, m_, i); }

    std::vector<int> bits() const {
        std::vector<int> out(static_cast<size_t>(m_));
        for (int i = 1; i <= m_; i++) {
            out[static_cast<size_t>(i - 1)] = (*this)[i];
        }
        return out;
    }

    std::string str() const {
        std::string s = "(";
        for (int i = 1; i <= m_; i++) {
            if (i > 1) {
                s += ",";
            }
            s += static_cast<char>('0' + (*this)[i]);
        }
        return s + ")";
    }

    friend bool operator==(const BitString&, const BitString&) = default;
    friend auto operator<=>(const BitString&, const BitString&) = default;

   private:
    int m_ = 2;
    std::uint32_t code_ = 0;
};

struct VertexTag {};
struct QuestionTag {};

using Vertex = BitString<VertexTag>;
using Question = BitString<QuestionTag>;

/// All 2^m questions in ascending canonical order.
inline std::vector<Question> all_questions(int m) {
    check_dimension(m);
    std::vector<Question> out;
    out.reserve(size_t{1} << m);
    for (std::uint32_t c = 0; c < (1U << m); c++) {
        out.emplace_back(m, c);
    }
    return out;
}

}  // namespace hcgame
