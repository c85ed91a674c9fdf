#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "hcgame/game.hpp"
#include "hcgame/linalg.hpp"
#include "hcgame/optimize.hpp"
#include "hcgame/quantum.hpp"

namespace hcgame {

/// Hermitian S, T with S^2 + T^2 = I.
class ConstrainedPair {
   public:
    ConstrainedPair(ComplexMatrix s, ComplexMatrix t) : s_(std::move(s)), t_(std::move(t)) {
        if (s_.dim() != t_.dim()) {
            throw std::invalid_argument("S and T must have equal dimension");
        }
        if (!is_hermitian(s_) || !is_hermitian(t_)) {
            throw std::invalid_argument("S and T must be Hermitian");
        }
        residual_ = max_abs_diff(s_ * s_ + t_ * t_, ComplexMatrix::identity(s_.dim()));
        if (residual_ > kOperatorTol) {
            throw std::invalid_argument("S^2 + T^2 = I violated, residual " + std::to_string(residual_));
        }
    }

    const ComplexMatrix& S() const { return s_; }
    const ComplexMatrix& T() const { return t_; }
    size_t dim() const { return s_.dim(); }
    /// max |S^2 + T^2 - I| entrywise.
    double residual() const { return residual_; }

   private:
    ComplexMatrix s_, t_;
    double residual_ = 0;
};

/// Sum over the owner's answers a of Pi_{q1,q_i}(a) M^a: the owner's
/// measurement re-labelled by the sign product on the shared edge X_1 ∩ X_i.
struct EdgeObservable {
    int owner = 1;
    int partner = 2;  // i >= 2 naming the edge X_1 ∩ X_i
    int q1 = 0;
    int qi = 0;
    /// Acts on qubit `owner`.
    ComplexMatrix local;

    ComplexMatrix embedded(int m) const { return embed_single_qubit(local, m, owner); }
};

inline EdgeObservable induced_edge_observable(const QuantumStrategy& s, int owner, int i, int q1, int qi) {
    if (i < 2 || i > s.m) {
        throw std::invalid_argument("edge partner must be in 2..m");
    }
    if (owner != 1 && owner != i) {
        throw std::invalid_argument("edge observable owner must be player 1 or player i");
    }
    check_bit(q1, "q1");
    check_bit(qi, "q_i");
    std::vector<int> bits(static_cast<size_t>(s.m), 0);
    bits[0] = q1;
    bits[static_cast<size_t>(i - 1)] = qi;
    const Question q = Question::from_bits(bits);
    const double theta = s.theta(owner, q[owner]);

    EdgeObservable e{owner, i, q1, qi, ComplexMatrix(2)};
    for (int o : {1, -1}) {
        std::vector<int> outcomes(static_cast<size_t>(s.m), 1);
        outcomes[static_cast<size_t>(owner - 1)] = o;
        const Answer a = outcome_to_answer(s, q, OutcomeTuple(outcomes));
        const Sign pi = product_over_intersection(a.player(owner), q1, i, qi);
        e.local += outcome_projector(theta, o) * Complex(pi);
    }
    return e;
}

/// All edge observables of a strategy: player1[i][q1][qi] and player_i[i][q1][qi].
struct EdgeObservableTable {
    int m = 2;
    std::vector<std::array<std::array<ComplexMatrix, 2>, 2>> player1;
    std::vector<std::array<std::array<ComplexMatrix, 2>, 2>> player_i;

    const ComplexMatrix& first(int i, int q1, int qi) const {
        return player1.at(static_cast<size_t>(i))[static_cast<size_t>(q1)][static_cast<size_t>(qi)];
    }
    const ComplexMatrix& other(int i, int q1, int qi) const {
        return player_i.at(static_cast<size_t>(i))[static_cast<size_t>(q1)][static_cast<size_t>(qi)];
    }
};

inline EdgeObservableTable edge_observable_table(const QuantumStrategy& s) {
    EdgeObservableTable t;
    t.m = s.m;
    t.player1.resize(static_cast<size_t>(s.m) + 1);
    t.player_i.resize(static_cast<size_t>(s.m) + 1);
    for (int i = 2; i <= s.m; i++) {
        for (int q1 = 0; q1 <= 1; q1++) {
            for (int qi = 0; qi <= 1; qi++) {
                t.player1[static_cast<size_t>(i)][static_cast<size_t>(q1)][static_cast<size_t>(qi)] =
                    induced_edge_observable(s, 1, i, q1, qi).local;
                t.player_i[static_cast<size_t>(i)][static_cast<size_t>(q1)][static_cast<size_t>(qi)] =
                    induced_edge_observable(s, i, i, q1, qi).local;
            }
        }
    }
    return t;
}

namespace detail {
inline ComplexMatrix half(const ComplexMatrix& m) { return m * Complex(0.5); }

/// S_i, T_i as two-qubit operators (qubit 1 = player 1, qubit 2 = player i).
inline std::pair<ComplexMatrix, ComplexMatrix> s_t_local(const EdgeObservableTable& t, int i) {
    const ComplexMatrix& a0 = t.first(i, 0, 0);
    const ComplexMatrix& a1 = t.first(i, 1, 0);
    const ComplexMatrix& b0 = t.other(i, 0, 0);
    const ComplexMatrix& b1 = t.other(i, 0, 1);
    return {tensor(a0, half(b0 + b1)), tensor(a1, half(b0 - b1))};
}
}  // namespace detail

/// S_i = O_{0,0,1}(O_{0,0,i}+O_{0,1,i})/2, T_i = O_{1,0,1}(O_{0,0,i}-O_{0,1,i})/2
/// on the (player 1, player i) qubit pair.
inline ConstrainedPair build_S_T(const QuantumStrategy& s, int i) {
    if (i < 2 || i > s.m) {
        throw std::invalid_argument("build_S_T needs 2 <= i <= m");
    }
    auto [S, T] = detail::s_t_local(edge_observable_table(s), i);
    return ConstrainedPair(std::move(S), std::move(T));
}

/// S_i and T_i embedded in the full m-qubit space.
inline std::pair<ComplexMatrix, ComplexMatrix> build_S_T_embedded(const QuantumStrategy& s, int i) {
    const EdgeObservableTable t = edge_observable_table(s);
    const int m = s.m;
    auto e = [m](const ComplexMatrix& u, int q) { return embed_single_qubit(u, m, q); };
    ComplexMatrix S = e(t.first(i, 0, 0), 1) * detail::half(e(t.other(i, 0, 0), i) + e(t.other(i, 0, 1), i));
    ComplexMatrix T = e(t.first(i, 1, 0), 1) * detail::half(e(t.other(i, 0, 0), i) - e(t.other(i, 0, 1), i));
    return {std::move(S), std::move(T)};
}

/// Block-diagonal pair: block j is T_j = diag(beta_j, -beta_j) and
/// S_j = sqrt(1 - beta_j^2) Z_{phi_j}. Each block satisfies the constraint exactly.
inline ConstrainedPair constrained_pair_from_blocks(const std::vector<double>& betas, const std::vector<double>& phis) {
    if (betas.empty() || betas.size() != phis.size()) {
        throw std::invalid_argument("need one angle per beta and at least one block");
    }
    const size_t n = 2 * betas.size();
    ComplexMatrix S(n), T(n);
    for (size_t j = 0; j < betas.size(); j++) {
        const double b = betas[j];
        if (!(b >= 0 && b <= 1)) {
            throw std::invalid_argument("beta must lie in [0, 1]");
        }
        const double w = std::sqrt(1 - b * b);
        const ComplexMatrix r = z_theta(phis[j]);
        T(2 * j, 2 * j) = b;
        T(2 * j + 1, 2 * j + 1) = -b;
        for (size_t r0 = 0; r0 < 2; r0++) {
            for (size_t c0 = 0; c0 < 2; c0++) {
                S(2 * j + r0, 2 * j + c0) = w * r(r0, c0);
            }
        }
    }
    return ConstrainedPair(std::move(S), std::move(T));
}

/// beta_j ~ U[0,1], reflection angle phi_j ~ U[0, 2pi).
inline ConstrainedPair random_constrained_pair(int dim_half, std::uint64_t seed) {
    if (dim_half < 1) {
        throw std::invalid_argument("dim_half must be at least 1");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
    std::vector<double> betas, phis;
    for (int j = 0; j < dim_half; j++) {
        betas.push_back(unit(rng));
        phis.push_back(angle(rng));
    }
    return constrained_pair_from_blocks(betas, phis);
}

/// Complex Gaussian vector, normalized.
inline StateVector random_unit_state(size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    StateVector v(dim);
    for (size_t k = 0; k < dim; k++) {
        v[k] = Complex(g(rng), g(rng));
    }
    v *= 1.0 / v.norm();
    return v;
}

/// S = A0 ⊗ (B0+B1)/2, T = A1 ⊗ (B0-B1)/2 for reflections A0, A1, B0, B1.
inline ConstrainedPair chsh_style_pair(const ComplexMatrix& a0, const ComplexMatrix& a1, const ComplexMatrix& b0,
                                       const ComplexMatrix& b1) {
    for (const ComplexMatrix* x : {&a0, &a1, &b0, &b1}) {
        if (!is_reflection(*x)) {
            throw std::invalid_argument("CHSH-style pair needs reflections");
        }
    }
    return ConstrainedPair(tensor(a0, detail::half(b0 + b1)), tensor(a1, detail::half(b0 - b1)));
}

/// <(I+S)^M + (I+T)^M>_psi.
inline double lemma2_lhs(const ConstrainedPair& p, const StateVector& psi, int M) {
    if (M < 1 || M > 64) {
        throw std::invalid_argument("lemma2_lhs needs 1 <= M <= 64");
    }
    const ComplexMatrix id = ComplexMatrix::identity(p.dim());
    const ComplexMatrix sum = matpow(id + p.S(), static_cast<unsigned>(M)) + matpow(id + p.T(), static_cast<unsigned>(M));
    // Powers of Hermitian matrices drift off exact symmetry by rounding; symmetrize.
    const ComplexMatrix herm = detail::half(sum + sum.adjoint());
    return expectation(herm, psi);
}

struct Lemma2Check {
    double lhs = 0;
    double bound = 0;
    /// bound - lhs; negative means violated.
    double margin = 0;
    bool ok = false;
};

inline Lemma2Check verify_lemma2_detail(const ConstrainedPair& p, const StateVector& psi, int M, double tol,
                                        double r_star) {
    Lemma2Check c;
    c.lhs = lemma2_lhs(p, psi, M);
    c.bound = r_star;
    c.margin = r_star - c.lhs;
    c.ok = c.lhs <= r_star + tol;
    return c;
}

inline bool verify_lemma2(const ConstrainedPair& p, const StateVector& psi, int M, double tol) {
    return verify_lemma2_detail(p, psi, M, tol, maximize_r(M).r_star).ok;
}

struct Lemma2Trial {
    std::uint64_t seed = 0;
    int dim = 0;
    int power = 0;
    Lemma2Check check;
};

/// One randomized trial: dimension 2..max_dim (even), power 1..max_power, random
/// block pair and random state, all derived from `seed`. r_stars[M] must hold
/// maximize_r(M).r_star.
inline Lemma2Trial lemma2_trial(std::uint64_t seed, int max_dim, int max_power, const std::vector<double>& r_stars,
                                double tol) {
    if (max_dim < 2 || max_power < 1 || static_cast<int>(r_stars.size()) <= max_power) {
        throw std::invalid_argument("lemma2_trial: bad dimension, power, or r* table");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> half_dist(1, max_dim / 2);
    std::uniform_int_distribution<int> power_dist(1, max_power);
    Lemma2Trial t;
    t.seed = seed;
    const int dim_half = half_dist(rng);
    t.dim = 2 * dim_half;
    t.power = power_dist(rng);
    const ConstrainedPair p = random_constrained_pair(dim_half, rng());
    const StateVector psi = random_unit_state(static_cast<size_t>(t.dim), rng());
    t.check = verify_lemma2_detail(p, psi, t.power, tol, r_stars[static_cast<size_t>(t.power)]);
    return t;
}

struct Lemma3Check {
    int M = 1;
    /// (r* - 2^M - 1)/2^(M+1) and its bounds M/4^(M+1) and 8M/4^(M+1).
    double excess = 0;
    double lower = 0;
    double upper = 0;
    double r_star = 0;
    bool ok = false;
};

/// 2^M + 1 + M/2^(M+1) <= max r <= 2^M + 1 + 8M/2^(M+1), compared after
/// subtracting 2^M + 1 and scaling by 2^-(M+1) so no precision is lost for large M.
inline Lemma3Check verify_lemma3_detail(int M) {
    const RMaximum r = maximize_r(M);
    Lemma3Check c;
    c.M = M;
    c.r_star = r.r_star;
    c.excess = r.normalized_excess;
    c.lower = std::ldexp(double(M), -2 * (M + 1));
    c.upper = std::ldexp(8.0 * M, -2 * (M + 1));
    c.ok = c.lower <= c.excess && c.excess <= c.upper;
    return c;
}

inline bool verify_lemma3(int M) { return verify_lemma3_detail(M).ok; }

struct ConverseReport {
    double win_probability = 0;
    double relaxed_bound = 0;
    double max_identity_residual = 0;
    double max_constraint_residual = 0;
    bool reflections = true;
    bool ok = false;
};

/// Numerical check of the converse chain for one question, given the edge
/// observables:
///   (a) P_q <= < prod_{i>=2} (I + O_{q1,qi,1} O_{q1,qi,i})/2 > + 1e-10
///   (b) O_{q1,qi,1} = (-1)^{q1} O_{q1,1-qi,1} and O_{q1,qi,i} = O_{1-q1,qi,i}
///   (c) S_i^2 + T_i^2 = I
inline ConverseReport check_converse_chain(const QuantumStrategy& s, const Question& q, const EdgeObservableTable& t,
                                           double tol = 1e-10) {
    const int m = s.m;
    check_dimension(m, 6);
    ConverseReport rep;
    rep.win_probability = winning_probability_simulated(s, q);

    const StateVector psi = ghz_state(m);
    StateVector phi = psi;
    for (int i = 2; i <= m; i++) {
        StateVector term =
            apply_single_qubit(t.first(i, q[1], q[i]), apply_single_qubit(t.other(i, q[1], q[i]), phi, m, i), m, 1);
        phi += term;
        phi *= 0.5;
    }
    rep.relaxed_bound = psi.inner(phi).real();

    for (int i = 2; i <= m; i++) {
        for (int a = 0; a <= 1; a++) {
            for (int b = 0; b <= 1; b++) {
                const double flip = a ? -1.0 : 1.0;
                rep.max_identity_residual =
                    std::max(rep.max_identity_residual, max_abs_diff(t.first(i, a, b), t.first(i, a, 1 - b) * flip));
                rep.max_identity_residual =
                    std::max(rep.max_identity_residual, max_abs_diff(t.other(i, a, b), t.other(i, 1 - a, b)));
                rep.reflections = rep.reflections && is_reflection(t.first(i, a, b)) && is_reflection(t.other(i, a, b));
            }
        }
        auto [S, T] = detail::s_t_local(t, i);
        rep.max_constraint_residual =
            std::max(rep.max_constraint_residual, max_abs_diff(S * S + T * T, ComplexMatrix::identity(S.dim())));
    }
    rep.ok = rep.win_probability <= rep.relaxed_bound + tol && rep.max_identity_residual <= tol &&
             rep.max_constraint_residual <= tol && rep.reflections;
    return rep;
}

inline ConverseReport verify_converse_chain_report(const QuantumStrategy& s, const Question& q) {
    return check_converse_chain(s, q, edge_observable_table(s));
}

inline bool verify_converse_chain(const QuantumStrategy& s, const Question& q) {
    return verify_converse_chain_report(s, q).ok;
}

struct ChshOptimum {
    std::array<double, 4> angles{};  // A0, A1, B0, B1 as Z_theta angles
    double lhs = 0;
    int sweeps = 0;
};

/// Coordinate ascent over the four Z_theta angles of a CHSH-style pair,
/// maximizing lemma2_lhs at M = 1 on the two-qubit GHZ state.
inline ChshOptimum optimize_chsh_pair(std::uint64_t seed, int max_sweeps = 200) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    ChshOptimum best;
    for (double& a : best.angles) {
        a = angle(rng);
    }
    const StateVector psi = ghz_state(2);
    auto value = [&](const std::array<double, 4>& x) {
        return lemma2_lhs(chsh_style_pair(z_theta(x[0]), z_theta(x[1]), z_theta(x[2]), z_theta(x[3])), psi, 1);
    };
    best.lhs = value(best.angles);
    GridGoldenOptions opt;
    opt.grid_points = 64;
    opt.abs_tol = 1e-12;
    opt.rel_tol = 1.0;
    for (int sweep = 0; sweep < max_sweeps; sweep++) {
        const double before = best.lhs;
        for (size_t k = 0; k < 4; k++) {
            auto along = [&](double v) {
                std::array<double, 4> x = best.angles;
                x[k] = v;
                return value(x);
            };
            const ScalarMaximum r = grid_golden_maximize(along, -std::numbers::pi, std::numbers::pi, opt);
            if (r.value > best.lhs) {
                best.angles[k] = r.x;
                best.lhs = r.value;
            }
        }
        best.sweeps = sweep + 1;
        if (best.lhs - before < 1e-14) {
            break;
        }
    }
    return best;
}

}  // namespace hcgame
