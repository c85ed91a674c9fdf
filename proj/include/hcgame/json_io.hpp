#pragma once

#include <ostream>
#include <stdexcept>
#include <vector>

#include "json.hpp"

#include "hcgame/classical.hpp"
#include "hcgame/game.hpp"
#include "hcgame/nosignalling.hpp"
#include "hcgame/rational.hpp"

// Wire format: bit strings are arrays of 0/1, signs are +1/-1 integers.
//   question:   [q_1, ..., q_m]
//   assignment: {"player": i, "question_bit": q_i, "values": [s_0, ..., s_{2^(m-1)-1}]}
//   answer:     {"question": [...], "assignments": [assignment, ...]}
// Facet values follow the ascending canonical order of the facet's vertices.

namespace hcgame {

using json = nlohmann::json;

inline json to_json(const Question& q) { return q.bits(); }
inline json to_json(const Vertex& v) { return v.bits(); }

inline json to_json(const FacetAssignment& a) {
    return {{"player", a.player()}, {"question_bit", a.question_bit()}, {"values", a.signs()}};
}

inline json to_json(const Answer& a) {
    json arr = json::array();
    for (const auto& f : a.assignments()) {
        arr.push_back(to_json(f));
    }
    return arr;
}

inline json to_json(const Answer& a, const Question& q) { return {{"question", to_json(q)}, {"assignments", to_json(a)}}; }

inline json to_json(const DeterministicStrategy& s) {
    json players = json::array();
    for (int i = 1; i <= s.m(); i++) {
        players.push_back({{"player", i},
                           {"q0", s.response(i, 0).signs()},
                           {"q1", s.response(i, 1).signs()}});
    }
    return players;
}

inline Question question_from_json(const json& j) {
    if (!j.is_array()) {
        throw std::invalid_argument("question must be a JSON array of bits");
    }
    const auto bits = j.get<std::vector<int>>();
    return Question::from_bits(bits);
}

/// Accepts either a bare array of assignments or {"assignments": [...]}.
inline Answer answer_from_json(const json& j, int m) {
    const json& arr = j.is_object() ? j.at("assignments") : j;
    if (!arr.is_array()) {
        throw std::invalid_argument("answer must be an array of facet assignments");
    }
    std::vector<FacetAssignment> out;
    for (const json& f : arr) {
        const auto values = f.at("values").get<std::vector<int>>();
        out.push_back(FacetAssignment::from_signs(m, f.at("player").get<int>(), f.at("question_bit").get<int>(), values));
    }
    return Answer(std::move(out));
}

/// One JSON object per line: {"q": [bits], "a": answer key, "p": "num/den"}.
inline void write_correlation_jsonl(std::ostream& os, const SparseCorrelation& corr) {
    const std::string p = to_fraction_string(corr.weight);
    for (const Question& q : all_questions(corr.m)) {
        for (AnswerKey key : corr.support[q.code()]) {
            json line = {{"q", to_json(q)}, {"a", key}, {"p", p}};
            os << line.dump() << '\n';
        }
    }
}

}  // namespace hcgame
