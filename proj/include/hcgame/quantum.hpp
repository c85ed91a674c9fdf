#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "hcgame/bits.hpp"
#include "hcgame/game.hpp"
#include "hcgame/linalg.hpp"
#include "hcgame/optimize.hpp"

namespace hcgame {

/// Largest player count for statevector paths.
inline constexpr int kMaxQubits = 12;
/// Largest player count for the scalar value computations.
inline constexpr int kMaxScalarDimension = 1000;

/// The GHZ strategy family of HC_m: player 1 measures Z_0 or Z_{pi/2}, players
/// i >= 2 measure Z_{±alpha}.
struct QuantumStrategy {
    int m = 2;
    double alpha = std::numbers::pi / 4;

    QuantumStrategy() = default;
    QuantumStrategy(int m_, double alpha_) : m(m_), alpha(alpha_) {
        check_dimension(m, kMaxScalarDimension);
        if (!(alpha >= 0.0 && alpha <= std::numbers::pi / 2 + 1e-15)) {
            throw std::invalid_argument("alpha must lie in [0, pi/2]");
        }
    }

    /// Measurement angle of player i on question bit q.
    double theta(int i, int q) const {
        check_player(m, i);
        check_bit(q, "question bit");
        if (i == 1) {
            return q * std::numbers::pi / 2;
        }
        return q == 0 ? alpha : -alpha;
    }
};

/// One ±1 measurement outcome per player.
struct OutcomeTuple {
    std::vector<int> o;

    OutcomeTuple() = default;
    explicit OutcomeTuple(std::vector<int> v) : o(std::move(v)) {
        for (int x : o) {
            bit_of_sign(x);
        }
    }

    /// Bit k-1 of `mask` set means player k saw -1.
    static OutcomeTuple from_mask(int m, std::uint32_t mask) {
        std::vector<int> v(static_cast<size_t>(m));
        for (int k = 0; k < m; k++) {
            v[static_cast<size_t>(k)] = ((mask >> k) & 1U) ? -1 : 1;
        }
        return OutcomeTuple(std::move(v));
    }

    int m() const { return static_cast<int>(o.size()); }
    int operator[](int player) const { return o.at(static_cast<size_t>(player - 1)); }
};

/// (|0...0> + |1...1>)/sqrt(2).
inline StateVector ghz_state(int m) {
    check_dimension(m, kMaxQubits);
    StateVector psi(size_t{1} << m);
    psi[0] = std::numbers::sqrt2 / 2;
    psi[psi.dim() - 1] = std::numbers::sqrt2 / 2;
    return psi;
}

/// [[cos, sin], [sin, -cos]].
inline ComplexMatrix z_theta(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return ComplexMatrix{{c, s}, {s, -c}};
}

/// (I + o Z_theta)/2.
inline ComplexMatrix outcome_projector(double theta, int o) {
    ComplexMatrix p = ComplexMatrix::identity(2) + z_theta(theta) * Complex(o);
    return p * Complex(0.5);
}

namespace detail {
inline void require_statevector_range(const QuantumStrategy& s) { check_dimension(s.m, kMaxQubits); }

inline void require_question(const QuantumStrategy& s, const Question& q) {
    if (q.m() != s.m) {
        throw std::invalid_argument("question length does not match strategy");
    }
}
}  // namespace detail

/// <GHZ| prod_i (I + o_i Z_{theta_i})/2 |GHZ>.
inline double outcome_probability(const QuantumStrategy& s, const Question& q, const OutcomeTuple& o) {
    detail::require_statevector_range(s);
    detail::require_question(s, q);
    if (o.m() != s.m) {
        throw std::invalid_argument("outcome tuple length does not match strategy");
    }
    const StateVector psi = ghz_state(s.m);
    StateVector phi = psi;
    for (int i = 1; i <= s.m; i++) {
        phi = apply_single_qubit(outcome_projector(s.theta(i, q[i]), o[i]), phi, s.m, i);
    }
    return psi.inner(phi).real();
}

struct AssignedAnswer {
    Answer answer;
    /// Players whose facet needed a parity fix-up. Always empty for the GHZ rules.
    std::vector<int> repaired;
};

/// Turns measurement outcomes into facet assignments. Player 1 writes o_1 at
/// (q1,0,...,0) and (-1)^{q1} o_1 at (q1,1,...,1); player i >= 2 writes o_i at
/// (0,q_i,...,q_i) and (1,q_i,...,q_i). Every other vertex gets +1. If a facet
/// product came out wrong, the largest free vertex of that facet is flipped;
/// the rules above never need this.
inline AssignedAnswer outcome_to_answer_detailed(const QuantumStrategy& s, const Question& q, const OutcomeTuple& o) {
    detail::require_question(s, q);
    const int m = s.m;
    if (o.m() != m) {
        throw std::invalid_argument("outcome tuple length does not match strategy");
    }
    const std::uint32_t low_ones = (1U << (m - 1)) - 1U;
    const std::uint32_t first = 1U << (m - 1);
    AssignedAnswer out{Answer::all_plus(q), {}};

    std::vector<std::uint32_t> special;
    for (int i = 1; i <= m; i++) {
        FacetAssignment& a = out.answer.player(i);
        if (i == 1) {
            const std::uint32_t base = q[1] ? first : 0U;
            special = {base, base | low_ones};
            a.set_sign_at(special[0], o[1]);
            a.set_sign_at(special[1], (q[1] ? -1 : 1) * o[1]);
        } else {
            const std::uint32_t tail = q[i] ? low_ones : 0U;
            special = {tail, first | tail};
            a.set_sign_at(special[0], o[i]);
            a.set_sign_at(special[1], o[i]);
        }
        if (!parity_ok(a)) {
            bool fixed = false;
            for (size_t k = a.size(); k-- > 0;) {
                const std::uint32_t c = a.vertex_code(k);
                if (c != special[0] && c != special[1]) {
                    a.set_sign(k, -a.sign(k));
                    fixed = true;
                    break;
                }
            }
            if (!fixed) {
                throw std::logic_error("facet has no free vertex for parity repair");
            }
            out.repaired.push_back(i);
        }
    }
    return out;
}

inline Answer outcome_to_answer(const QuantumStrategy& s, const Question& q, const OutcomeTuple& o) {
    return outcome_to_answer_detailed(s, q, o).answer;
}

/// P_q by brute force: project the GHZ state onto every outcome tuple, turn the
/// outcomes into an answer, and score it with the game predicate. Projectors are
/// applied qubit by qubit along a depth-first tree so shared prefixes are reused.
inline double winning_probability_simulated(const QuantumStrategy& s, const Question& q) {
    detail::require_statevector_range(s);
    detail::require_question(s, q);
    const int m = s.m;
    const StateVector psi = ghz_state(m);
    std::vector<ComplexMatrix> proj[2];
    for (int i = 1; i <= m; i++) {
        proj[0].push_back(outcome_projector(s.theta(i, q[i]), +1));
        proj[1].push_back(outcome_projector(s.theta(i, q[i]), -1));
    }
    double total = 0;
    std::vector<int> outcomes(static_cast<size_t>(m));
    auto descend = [&](auto&& self, const StateVector& phi, int i) -> void {
        if (i > m) {
            const double p = psi.inner(phi).real();
            total += p * predicate(outcome_to_answer(s, q, OutcomeTuple(outcomes)), q);
            return;
        }
        for (int b = 0; b <= 1; b++) {
            outcomes[static_cast<size_t>(i - 1)] = b ? -1 : 1;
            self(self, apply_single_qubit(proj[b][static_cast<size_t>(i - 1)], phi, m, i), i + 1);
        }
    };
    descend(descend, psi, 1);
    return total;
}

/// P_q = < prod_{i>=2} (I + (-1)^{q1 q_i} O_{q1,1} O_{q_i,i}) / 2 >_GHZ.
inline double winning_probability_operator(const QuantumStrategy& s, const Question& q) {
    detail::require_statevector_range(s);
    detail::require_question(s, q);
    const int m = s.m;
    const StateVector psi = ghz_state(m);
    const ComplexMatrix first = z_theta(s.theta(1, q[1]));
    StateVector phi = psi;
    for (int i = 2; i <= m; i++) {
        const double sign = (q[1] & q[i]) ? -1.0 : 1.0;
        StateVector flipped = apply_single_qubit(z_theta(s.theta(i, q[i])), apply_single_qubit(first, phi, m, 1), m, i);
        flipped *= sign;
        phi += flipped;
        phi *= 0.5;
    }
    return psi.inner(phi).real();
}

/// [(1+cos a)^(m-1) + (1+sin a)^(m-1)] / 2^m, evaluated as
/// ([(1+cos a)/2]^(m-1) + [(1+sin a)/2]^(m-1)) / 2.
inline double average_win_analytic(int m, double alpha) {
    check_dimension(m, kMaxScalarDimension);
    const double M = m - 1;
    return 0.5 * (std::pow((1 + std::cos(alpha)) / 2, M) + std::pow((1 + std::sin(alpha)) / 2, M));
}

/// r(theta) = (1+cos theta)^M + (1+sin theta)^M; log-domain above M = 50.
inline double r_function(double theta, int M) {
    if (M < 1) {
        throw std::invalid_argument("r_function needs M >= 1");
    }
    const double c = 1 + std::cos(theta), s = 1 + std::sin(theta);
    if (M <= 50) {
        return std::pow(c, M) + std::pow(s, M);
    }
    const double lc = M * std::log1p(std::cos(theta));
    const double ls = M * std::log1p(std::sin(theta));
    const double hi = std::max(lc, ls), lo = std::min(lc, ls);
    return std::exp(hi + std::log1p(std::exp(lo - hi)));
}

/// r(theta)/2^(M+1) - 1/2 - 1/2^(M+1), i.e. how far r(theta) exceeds r(0) = 2^M + 1
/// in units of 2^(M+1). Written with log1p/expm1 so it keeps full relative
/// precision even when the excess is ~4^-M.
inline double r_normalized_excess(double theta, int M) {
    if (M < 1) {
        throw std::invalid_argument("r_normalized_excess needs M >= 1");
    }
    const double q = std::sin(theta / 4);
    // (1+cos theta)/2 = cos^2(theta/2) = (1 - 2 sin^2(theta/4))^2
    const double cos_part = 0.5 * std::expm1(2.0 * M * std::log1p(-2 * q * q));
    const double sin_part = std::ldexp(std::expm1(M * std::log1p(std::sin(theta))), -(M + 1));
    return cos_part + sin_part;
}

struct RMaximum {
    double theta_star = 0;
    double r_star = 0;
    /// (r* - 2^M - 1) / 2^(M+1).
    double normalized_excess = 0;
};

/// max over theta of r(theta, M). The symmetry r(theta) = r(pi/2 - theta)
/// restricts the search to [0, pi/4].
inline RMaximum maximize_r(int M) {
    if (M < 1 || M >= kMaxScalarDimension) {
        throw std::invalid_argument("maximize_r needs 1 <= M < " + std::to_string(kMaxScalarDimension));
    }
    const ScalarMaximum best =
        grid_golden_maximize([M](double t) { return r_normalized_excess(t, M); }, 0.0, std::numbers::pi / 4);
    RMaximum out;
    out.theta_star = best.x;
    out.normalized_excess = best.value;
    out.r_star = std::ldexp(1.0, M) + 1.0 + std::ldexp(best.value, M + 1);
    return out;
}

struct QuantumValue {
    double value = 0;
    double theta_star = 0;
    /// value - (1/2 + 1/2^m), carried separately at full precision.
    double advantage = 0;
};

inline QuantumValue quantum_value_detail(int m) {
    check_dimension(m, kMaxScalarDimension);
    const RMaximum r = maximize_r(m - 1);
    QuantumValue out;
    out.theta_star = r.theta_star;
    out.advantage = r.normalized_excess;
    out.value = 0.5 + std::ldexp(1.0, -m) + r.normalized_excess;
    return out;
}

/// omega_q(HC_m) = max_theta r(theta, m-1) / 2^m.
inline double quantum_value(int m) { return quantum_value_detail(m).value; }

struct Interval {
    double lower = 0;
    double upper = 0;
    bool contains(double x) const { return lower <= x && x <= upper; }
};

/// [(m-1)/4^m, 8(m-1)/4^m]: bounds on omega_q - omega_c from the bounds on max r.
inline Interval quantum_advantage_bounds(int m) {
    check_dimension(m, kMaxScalarDimension);
    return {std::ldexp(double(m - 1), -2 * m), std::ldexp(8.0 * (m - 1), -2 * m)};
}

/// Bounds on omega_q itself; the upper end is clamped at 1.
inline Interval quantum_value_bounds(int m) {
    const Interval adv = quantum_advantage_bounds(m);
    const double base = 0.5 + std::ldexp(1.0, -m);
    return {base + adv.lower, std::min(1.0, base + adv.upper)};
}

/// n evenly spaced angles covering [0, pi/2], endpoints included.
inline std::vector<double> alpha_grid(int n) {
    if (n < 2) {
        throw std::invalid_argument("alpha grid needs at least 2 points");
    }
    std::vector<double> out(static_cast<size_t>(n));
    for (int k = 0; k < n; k++) {
        out[static_cast<size_t>(k)] = k == n - 1 ? std::numbers::pi / 2 : (std::numbers::pi / 2) * k / (n - 1);
    }
    return out;
}

}  // namespace hcgame
