#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hcgame/bits.hpp"

namespace hcgame {

/// +1 or -1.
using Sign = int;

inline Sign sign_of_bit(bool negative) { return negative ? -1 : 1; }

inline bool bit_of_sign(Sign s) {
    if (s != 1 && s != -1) {
        throw std::invalid_argument("sign must be +1 or -1, got " + std::to_string(s));
    }
    return s == -1;
}

inline void check_player(int m, int player) {
    if (player < 1 || player > m) {
        throw std::invalid_argument("player index " + std::to_string(player) + " outside 1.." + std::to_string(m));
    }
}

inline void check_bit(int b, const char* what) {
    if (b != 0 && b != 1) {
        throw std::invalid_argument(std::string(what) + " must be 0 or 1");
    }
}

/// Vertices of facet {x : x_i = q_i}, ascending by canonical encoding.
inline std::vector<Vertex> facet_vertices(int m, int i, int q_i) {
    check_dimension(m);
    check_player(m, i);
    check_bit(q_i, "question bit");
    const int pos = coord_shift(m, i);
    std::vector<Vertex> out;
    out.reserve(size_t{1} << (m - 1));
    for (std::uint32_t k = 0; k < (1U << (m - 1)); k++) {
        out.emplace_back(m, insert_bit(k, pos, q_i));
    }
    return out;
}

/// Codes of all vertices with x_i = q_i and x_j = q_j (i != j), ascending.
inline std::vector<std::uint32_t> common_vertex_codes(int m, int i, int q_i, int j, int q_j) {
    if (i == j) {
        throw std::invalid_argument("common vertices need two distinct coordinates");
    }
    int lo_pos = coord_shift(m, i), hi_pos = coord_shift(m, j);
    int lo_bit = q_i, hi_bit = q_j;
    if (lo_pos > hi_pos) {
        std::swap(lo_pos, hi_pos);
        std::swap(lo_bit, hi_bit);
    }
    std::vector<std::uint32_t> out;
    out.reserve(size_t{1} << (m - 2));
    for (std::uint32_t k = 0; k < (1U << (m - 2)); k++) {
        out.push_back(insert_bit(insert_bit(k, lo_pos, lo_bit), hi_pos, hi_bit));
    }
    return out;
}

/// The set X_1 ∩ X_i shared by player 1 and player i.
inline std::vector<Vertex> intersection_vertices(int m, int q1, int i, int q_i) {
    check_dimension(m);
    check_bit(q1, "q1");
    check_bit(q_i, "q_i");
    if (i < 2 || i > m) {
        throw std::invalid_argument("intersection player index must be in 2..m");
    }
    std::vector<Vertex> out;
    for (std::uint32_t c : common_vertex_codes(m, 1, q1, i, q_i)) {
        out.emplace_back(m, c);
    }
    return out;
}

/// A player's ±1 labelling of the 2^(m-1) vertices of its facet. Signs are
/// stored as bits (set bit = -1), indexed by the facet's sorted vertex order.
class FacetAssignment {
   public:
    FacetAssignment(int m, int player, int question_bit)
        : m_(m), player_(player), question_bit_(question_bit), negative_(facet_size_checked(m, player, question_bit)) {}

    static FacetAssignment from_signs(int m, int player, int question_bit, std::span<const Sign> signs) {
        FacetAssignment a(m, player, question_bit);
        if (signs.size() != a.size()) {
            throw std::invalid_argument("facet assignment needs " + std::to_string(a.size()) + " signs, got " +
                                        std::to_string(signs.size()));
        }
        for (size_t k = 0; k < signs.size(); k++) {
            a.negative_[k] = bit_of_sign(signs[k]);
        }
        return a;
    }

    /// Bit k of `mask` is the sign bit of facet vertex k. Only for facets of at most 64 vertices.
    static FacetAssignment from_mask(int m, int player, int question_bit, std::uint64_t mask) {
        FacetAssignment a(m, player, question_bit);
        if (a.size() > 64) {
            throw std::invalid_argument("mask form supports facets of at most 64 vertices");
        }
        if (a.size() < 64 && (mask >> a.size()) != 0) {
            throw std::invalid_argument("mask has bits beyond the facet size");
        }
        for (size_t k = 0; k < a.size(); k++) {
            a.negative_[k] = ((mask >> k) & 1U) != 0;
        }
        return a;
    }

    int m() const { return m_; }
    int player() const { return player_; }
    int question_bit() const { return question_bit_; }
    size_t size() const { return negative_.size(); }

    bool contains(std::uint32_t code) const { return coord_of(code, m_, player_) == question_bit_; }

    std::uint32_t vertex_code(size_t k) const {
        return insert_bit(static_cast<std::uint32_t>(k), coord_shift(m_, player_), question_bit_);
    }

    size_t index_of(std::uint32_t code) const {
        if (!contains(code)) {
            throw std::out_of_range("vertex is not on this player's facet");
        }
        return remove_bit(code, coord_shift(m_, player_));
    }

    Sign sign(size_t k) const { return sign_of_bit(negative_.test(k)); }
    Sign sign_at(std::uint32_t code) const { return sign(index_of(code)); }
    Sign sign_at(const Vertex& v) const { return sign_at(v.code()); }

    void set_sign(size_t k, Sign s) { negative_[k] = bit_of_sign(s); }
    void set_sign_at(std::uint32_t code, Sign s) { set_sign(index_of(code), s); }

    /// Product of all signs on the facet.
    Sign product() const { return sign_of_bit(negative_.count() % 2 == 1); }

    std::vector<Sign> signs() const {
        std::vector<Sign> out(size());
        for (size_t k = 0; k < size(); k++) {
            out[k] = sign(k);
        }
        return out;
    }

    std::uint64_t mask() const {
        if (size() > 64) {
            throw std::logic_error("facet too large for a 64-bit mask");
        }
        return negative_.to_ulong();
    }

    const boost::dynamic_bitset<std::uint64_t>& sign_bits() const { return negative_; }

    friend bool operator==(const FacetAssignment&, const FacetAssignment&) = default;

   private:
    static size_t facet_size_checked(int m, int player, int question_bit) {
        check_dimension(m);
        check_player(m, player);
        check_bit(question_bit, "question bit");
        return size_t{1} << (m - 1);
    }

    int m_;
    int player_;
    int question_bit_;
    boost::dynamic_bitset<std::uint64_t> negative_;
};

/// One facet assignment per player, all answering the same question.
class Answer {
   public:
    Answer() = default;
    explicit Answer(std::vector<FacetAssignment> assignments) : assignments_(std::move(assignments)) {
        if (assignments_.size() < 2) {
            throw std::invalid_argument("an answer needs at least two players");
        }
        const int m = assignments_.front().m();
        if (assignments_.size() != static_cast<size_t>(m)) {
            throw std::invalid_argument("an answer needs exactly m assignments");
        }
        for (size_t k = 0; k < assignments_.size(); k++) {
            if (assignments_[k].m() != m || assignments_[k].player() != static_cast<int>(k) + 1) {
                throw std::invalid_argument("assignment " + std::to_string(k) + " has the wrong player or dimension");
            }
        }
    }

    /// The all-+1 answer to q.
    static Answer all_plus(const Question& q) {
        std::vector<FacetAssignment> a;
        for (int i = 1; i <= q.m(); i++) {
            a.emplace_back(q.m(), i, q[i]);
        }
        return Answer(std::move(a));
    }

    int m() const { return static_cast<int>(assignments_.size()); }
    const FacetAssignment& player(int i) const { return assignments_.at(static_cast<size_t>(i - 1)); }
    FacetAssignment& player(int i) { return assignments_.at(static_cast<size_t>(i - 1)); }
    const std::vector<FacetAssignment>& assignments() const { return assignments_; }

    bool matches(const Question& q) const {
        if (q.m() != m()) {
            return false;
        }
        for (int i = 1; i <= m(); i++) {
            if (player(i).question_bit() != q[i]) {
                return false;
            }
        }
        return true;
    }

    friend bool operator==(const Answer&, const Answer&) = default;

   private:
    std::vector<FacetAssignment> assignments_;
};

namespace detail {
inline void require_match(const Answer& answer, const Question& q) {
    if (!answer.matches(q)) {
        throw std::invalid_argument("answer does not match question " + q.str());
    }
}
}  // namespace detail

/// Player 1 needs product (-1)^{q_1}; everyone else needs +1.
inline bool parity_ok(const FacetAssignment& a) {
    const Sign required = (a.player() == 1 && a.question_bit() == 1) ? -1 : 1;
    return a.product() == required;
}

inline bool consistency_ok(const Answer& answer, const Question& q) {
    detail::require_match(answer, q);
    const int m = q.m();
    for (int i = 1; i <= m; i++) {
        for (int j = i + 1; j <= m; j++) {
            const FacetAssignment& ai = answer.player(i);
            const FacetAssignment& aj = answer.player(j);
            for (std::uint32_t c : common_vertex_codes(m, i, q[i], j, q[j])) {
                if (ai.sign_at(c) != aj.sign_at(c)) {
                    return false;
                }
            }
        }
    }
    return true;
}

/// V(a|q): 1 iff every player satisfies parity and all shared vertices agree.
inline int predicate(const Answer& answer, const Question& q) {
    detail::require_match(answer, q);
    for (const auto& a : answer.assignments()) {
        if (!parity_ok(a)) {
            return 0;
        }
    }
    return consistency_ok(answer, q) ? 1 : 0;
}

/// Product of `a`'s signs over X_1 ∩ X_i for questions (q1, q_i). `a` must be
/// player 1's assignment for q1 or player i's assignment for q_i.
inline Sign product_over_intersection(const FacetAssignment& a, int q1, int i, int q_i) {
    const int m = a.m();
    if (i < 2 || i > m) {
        throw std::invalid_argument("intersection player index must be in 2..m");
    }
    if (a.player() != 1 && a.player() != i) {
        throw std::invalid_argument("assignment belongs to neither player 1 nor player " + std::to_string(i));
    }
    const int own_bit = a.player() == 1 ? q1 : q_i;
    if (a.question_bit() != own_bit) {
        throw std::invalid_argument("assignment's facet is disjoint from the requested intersection");
    }
    Sign p = 1;
    for (std::uint32_t c : common_vertex_codes(m, 1, q1, i, q_i)) {
        p *= a.sign_at(c);
    }
    return p;
}

/// Relaxation of V: player 1 and each player i >= 2 only need equal products
/// over their shared vertices.
inline int relaxed_predicate(const Answer& answer, const Question& q) {
    detail::require_match(answer, q);
    for (int i = 2; i <= q.m(); i++) {
        if (product_over_intersection(answer.player(1), q[1], i, q[i]) !=
            product_over_intersection(answer.player(i), q[1], i, q[i])) {
            return 0;
        }
    }
    return 1;
}

/// Embeds a standard CHSH answer pair (a1, a2 in {0,1}) into an HC_2 answer.
inline Answer chsh_bit_embedding(int a1, int a2, const Question& q) {
    if (q.m() != 2) {
        throw std::invalid_argument("CHSH embedding is only defined for m = 2");
    }
    check_bit(a1, "a1");
    check_bit(a2, "a2");
    const Sign s1 = sign_of_bit(a1 == 1);
    const Sign s2 = sign_of_bit(a2 == 1);
    const Sign flip = q[1] == 1 ? -1 : 1;
    // Facet of player 1 is {(q1,0),(q1,1)}; facet of player 2 is {(0,q2),(1,q2)}.
    const Sign p1[] = {s1, flip * s1};
    const Sign p2[] = {s2, s2};
    return Answer({FacetAssignment::from_signs(2, 1, q[1], p1), FacetAssignment::from_signs(2, 2, q[2], p2)});
}

}  // namespace hcgame
