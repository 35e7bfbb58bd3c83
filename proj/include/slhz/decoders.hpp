#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "channels.hpp"
#include "code.hpp"
#include "rng.hpp"

namespace slhz {

enum class TiePolicy { fail, coin_flip, keep };

struct BfConfig {
    int max_iterations = 5;
    TiePolicy tie_policy = TiePolicy::fail;
    bool early_stop = true;  // stop when a code-state or a fixed point is reached
};

enum class DecodeStatus { converged_code_state, converged_fixed_point, tie, max_iter_reached };

inline const char* to_string(DecodeStatus s) {
    switch (s) {
        case DecodeStatus::converged_code_state: return "converged_code_state";
        case DecodeStatus::converged_fixed_point: return "converged_fixed_point";
        case DecodeStatus::tie: return "tie";
        default: return "max_iter_reached";
    }
}

struct DecodeOutcome {
    SpinMatrix final;
    int iterations_used = 0;
    DecodeStatus status = DecodeStatus::max_iter_reached;
    std::vector<int> flips_per_iteration;
    int ties = 0;  // tie votes encountered (resolved ones included)
};

// Sum of the weight-3 syndromes adjacent to pair (i,j):
// sum_{k != i,j} x_ij x_jk x_ik, an integer in [-(K-2), K-2].
inline int syndrome_vote(const SpinMatrix& x, int i, int j) {
    const int k = x.dim();
    const int8_t* ri = x.row(i);
    const int8_t* rj = x.row(j);
    int dot = 0;
    for (int t = 0; t < k; ++t) dot += ri[t] * rj[t];
    return x.at(i, j) * (dot - 2 * x.at(i, j));
}

// Majority-vote inversion function: 1 + sum of adjacent weight-3 syndromes.
// Negative value marks pair (i,j) for flipping.
inline int inversion_bf(const SpinMatrix& x, int i, int j) {
    return 1 + syndrome_vote(x, i, j);
}

// Weighted inversion function: beta |J_ij| plus the crosstalk-weighted
// syndrome votes of the checks through (i,j).
inline double inversion_wbf(const SpinMatrix& x, int i, int j, std::span<const double> couplings,
                            double beta, const CrosstalkParams& ct) {
    const int k = x.dim();
    double acc = beta * std::abs(couplings[pair_rank(k, std::min(i, j), std::max(i, j))]);
    for (int t = 0; t < k; ++t) {
        if (t == i || t == j) continue;
        acc += ct.w[t] * x.at(i, j) * x.at(j, t) * x.at(i, t);
    }
    return acc;
}

// Gradient-descent inversion function: J_ij x_ij plus the syndrome votes.
inline double inversion_gdbf(const SpinMatrix& x, int i, int j, std::span<const double> couplings) {
    const int k = x.dim();
    return couplings[pair_rank(k, std::min(i, j), std::max(i, j))] * x.at(i, j) + syndrome_vote(x, i, j);
}

inline long long syndrome3_total(const SpinMatrix& x) {
    const int k = x.dim();
    long long total = 0;
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
            for (int c = b + 1; c < k; ++c) total += x.at(a, b) * x.at(b, c) * x.at(a, c);
    return total;
}

// Energy functions whose single-flip increments reproduce the inversion
// functions (Delta H = 2 Delta, taken at the error frame where the flipped
// spin starts from +1; the gradient-descent form holds at any state).
inline double energy_bf(const SpinMatrix& x) {
    const int k = x.dim();
    long long spin_sum = 0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) spin_sum += x.at(i, j);
    return -static_cast<double>(spin_sum) - static_cast<double>(syndrome3_total(x));
}

inline double energy_wbf(const PECode& code, const SpinMatrix& x, std::span<const double> couplings,
                         double beta, std::span<const double> check_weights) {
    double acc = 0.0;
    int t = 0;
    for (int i = 0; i < x.dim(); ++i)
        for (int j = i + 1; j < x.dim(); ++j, ++t) acc -= beta * std::abs(couplings[t]) * x.at(i, j);
    for (size_t c = 0; c < code.triples.size(); ++c) {
        const auto& tr = code.triples[c];
        acc -= check_weights[c] * x.at(tr[0], tr[1]) * x.at(tr[1], tr[2]) * x.at(tr[0], tr[2]);
    }
    return acc;
}

inline double energy_gdbf(const SpinMatrix& x, std::span<const double> couplings) {
    double acc = 0.0;
    int t = 0;
    for (int i = 0; i < x.dim(); ++i)
        for (int j = i + 1; j < x.dim(); ++j, ++t) acc -= couplings[t] * x.at(i, j);
    return acc - static_cast<double>(syndrome3_total(x));
}

struct BfStep {
    SpinMatrix next;
    int flips = 0;
    int ties = 0;
};

// One parallel bit-flip round: next = sign[x (x - I)] entrywise, which equals
// the per-pair update sign(x_ij + sum_{k != i,j} x_jk x_ki) applied to every
// pair at once. Zero arguments (possible only for odd K) are resolved per
// the tie policy and counted.
inline BfStep bf_step(const SpinMatrix& x, TiePolicy policy = TiePolicy::keep, Rng* rng = nullptr) {
    const int k = x.dim();
    std::vector<int> prod(static_cast<size_t>(k) * k, 0);
    for (int i = 0; i < k; ++i) {
        const int8_t* ri = x.row(i);
        for (int t = 0; t < k; ++t) {
            const int v = ri[t];
            const int8_t* rt = x.row(t);
            int* out = prod.data() + static_cast<size_t>(i) * k;
            for (int j = 0; j < k; ++j) out[j] += v * rt[j];
        }
    }

    BfStep step{SpinMatrix(k), 0, 0};
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            int arg = prod[static_cast<size_t>(i) * k + j] - x.at(i, j);
            int8_t value;
            if (arg > 0)
                value = 1;
            else if (arg < 0)
                value = -1;
            else {
                ++step.ties;
                if (policy == TiePolicy::coin_flip && rng)
                    value = rng->pm_one();
                else
                    value = x.at(i, j);  // keep (and let the caller fail the decode if asked)
            }
            step.next.set(i, j, value);
            step.flips += (value != x.at(i, j));
        }
    return step;
}

// Iterated parallel bit-flip decoding. Success means reaching a code-state
// (checked before each round and after the last one).
inline DecodeOutcome bf_decode(const SpinMatrix& r, const BfConfig& cfg, Rng* rng = nullptr,
                               std::vector<SpinMatrix>* trace = nullptr) {
    DecodeOutcome out;
    out.final = r;
    if (trace) trace->push_back(r);
    for (int n = 0; n < cfg.max_iterations; ++n) {
        if (cfg.early_stop && is_code_state(out.final)) {
            out.status = DecodeStatus::converged_code_state;
            return out;
        }
        BfStep step = bf_step(out.final, cfg.tie_policy, rng);
        out.ties += step.ties;
        if (step.ties > 0 && cfg.tie_policy == TiePolicy::fail) {
            out.status = DecodeStatus::tie;
            return out;
        }
        out.iterations_used = n + 1;
        out.flips_per_iteration.push_back(step.flips);
        if (cfg.early_stop && step.flips == 0) {
            out.status = is_code_state(out.final) ? DecodeStatus::converged_code_state
                                                  : DecodeStatus::converged_fixed_point;
            return out;
        }
        out.final = step.next;
        if (trace) trace->push_back(out.final);
    }
    out.status = is_code_state(out.final) ? DecodeStatus::converged_code_state : DecodeStatus::max_iter_reached;
    return out;
}

struct BpConfig {
    double prior_epsilon = 0.25;  // in (0, 0.5)
    int iterations = 5;
    double clamp = 25.0;  // check-message magnitude bound (standard stabilization)
};

// Sum-product decoding on the weight-3 Tanner graph with a flooding schedule:
// all check messages, then all variable messages, count as one iteration so
// iteration counts line up with parallel bit-flip rounds.
inline DecodeOutcome bp_decode(const PECode& code, const SpinMatrix& r, const BpConfig& cfg,
                               std::vector<SpinMatrix>* trace = nullptr) {
    if (!(cfg.prior_epsilon > 0.0 && cfg.prior_epsilon < 0.5))
        throw std::invalid_argument("bp_decode: prior epsilon must be in (0, 0.5)");
    const int k = r.dim();
    const int n_v = code.params.n_v;
    const int n_c = code.params.n_c3;
    const double l0_mag = std::log((1.0 - cfg.prior_epsilon) / cfg.prior_epsilon);

    std::vector<double> l0(n_v);
    {
        int t = 0;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j, ++t) l0[t] = r.at(i, j) * l0_mag;
    }

    // edge e = 3*c + slot; var_edges[v] lists the edges incident to v
    std::vector<double> m_vc(static_cast<size_t>(n_c) * 3);
    std::vector<double> m_cv(static_cast<size_t>(n_c) * 3, 0.0);
    std::vector<std::vector<int>> var_edges(n_v);
    for (int c = 0; c < n_c; ++c)
        for (int slot = 0; slot < 3; ++slot) var_edges[code.cn3_members[c][slot]].push_back(3 * c + slot);
    for (int c = 0; c < n_c; ++c)
        for (int slot = 0; slot < 3; ++slot) m_vc[3 * c + slot] = l0[code.cn3_members[c][slot]];

    DecodeOutcome out;
    out.final = r;
    if (trace) trace->push_back(r);

    std::vector<double> posterior(n_v);
    std::vector<double> tanh_half(static_cast<size_t>(n_c) * 3);
    for (int n = 0; n < cfg.iterations; ++n) {
        if (is_code_state(out.final)) {
            out.status = DecodeStatus::converged_code_state;
            return out;
        }
        for (size_t e = 0; e < m_vc.size(); ++e) tanh_half[e] = std::tanh(0.5 * m_vc[e]);
        for (int c = 0; c < n_c; ++c) {
            for (int slot = 0; slot < 3; ++slot) {
                double prod = tanh_half[3 * c + (slot + 1) % 3] * tanh_half[3 * c + (slot + 2) % 3];
                prod = std::clamp(prod, -(1.0 - 1e-15), 1.0 - 1e-15);
                double msg = 2.0 * std::atanh(prod);
                m_cv[3 * c + slot] = std::clamp(msg, -cfg.clamp, cfg.clamp);
            }
        }
        for (int v = 0; v < n_v; ++v) {
            double sum = l0[v];
            for (int e : var_edges[v]) sum += m_cv[e];
            posterior[v] = sum;
            for (int e : var_edges[v]) m_vc[e] = sum - m_cv[e];
        }
        out.iterations_used = n + 1;

        int flips = 0;
        {
            int t = 0;
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j < k; ++j, ++t) {
                    int8_t decision = posterior[t] < 0.0 ? int8_t{-1} : int8_t{1};  // sign(0) = +1
                    flips += (decision != out.final.at(i, j));
                    out.final.set(i, j, decision);
                }
        }
        out.flips_per_iteration.push_back(flips);
        if (trace) trace->push_back(out.final);
    }
    out.status = is_code_state(out.final) ? DecodeStatus::converged_code_state : DecodeStatus::max_iter_reached;
    return out;
}

// Minimum-weight decoding by exhaustive search over the 2^(K-1) logical
// gauge classes: maximize sum_{i<j} r_ij X_i X_j, whose maximizer gives the
// code-state closest in Hamming distance to r with a matching syndrome.
inline DecodeOutcome mwd_decode(const SpinMatrix& r) {
    const int k = r.dim();
    if (k > kBruteForceMaxK) throw capacity_error("mwd_decode: k exceeds brute-force cap");

    std::vector<int> x(k, 1);
    std::vector<long long> field(k, 0);  // field_i = sum_{j != i} r_ij X_j
    long long score = 0;
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j)
            if (j != i) field[i] += r.at(i, j);
        for (int j = i + 1; j < k; ++j) score += r.at(i, j);
    }

    long long best = score;
    std::vector<int> best_x = x;
    uint64_t best_count = 1;

    const uint64_t total = 1ull << (k - 1);
    for (uint64_t word = 1; word < total; ++word) {
        int t = __builtin_ctzll(word) + 1;  // Gray walk over spins 1..K-1
        int old = x[t];
        score -= 2 * old * field[t];
        x[t] = -old;
        for (int i = 0; i < k; ++i)
            if (i != t) field[i] -= 2 * old * r.at(i, t);
        if (score > best) {
            best = score;
            best_x = x;
            best_count = 1;
        } else if (score == best) {
            ++best_count;
        }
    }

    LogicalState z(k);
    for (int i = 0; i < k; ++i) z[i] = static_cast<int8_t>(best_x[i]);
    DecodeOutcome out;
    out.final = encode(z);
    out.status = best_count > 1 ? DecodeStatus::tie : DecodeStatus::converged_code_state;
    out.ties = static_cast<int>(best_count - 1);
    return out;
}

// Greedy single-flip descent on the gradient-descent inversion function,
// for diagnostics. Flips the most negative pair until none is negative.
inline DecodeOutcome gdbf_decode(const SpinMatrix& r, std::span<const double> couplings, int max_flips) {
    DecodeOutcome out;
    out.final = r;
    const int k = r.dim();
    for (int n = 0; n < max_flips; ++n) {
        if (is_code_state(out.final)) {
            out.status = DecodeStatus::converged_code_state;
            return out;
        }
        double best = 0.0;
        int bi = -1, bj = -1;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                double d = inversion_gdbf(out.final, i, j, couplings);
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0) {
            out.status = DecodeStatus::converged_fixed_point;
            return out;
        }
        out.final.flip(bi, bj);
        out.iterations_used = n + 1;
        out.flips_per_iteration.push_back(1);
    }
    out.status = is_code_state(out.final) ? DecodeStatus::converged_code_state : DecodeStatus::max_iter_reached;
    return out;
}

// Greedy single-flip weighted bit-flip descent under uniform crosstalk
// weights derived from a common prior error rate gamma0.
inline DecodeOutcome wbf_decode(const SpinMatrix& r, std::span<const double> couplings, double beta,
                                double gamma0, int max_flips) {
    if (!(gamma0 > 0.0 && gamma0 < 0.5)) throw std::invalid_argument("wbf_decode: gamma0 in (0, 0.5)");
    const int k = r.dim();
    double p = 0.5 * (1.0 - (1.0 - 2.0 * gamma0) * (1.0 - 2.0 * gamma0));
    double w = std::log((1.0 - p) / p);

    DecodeOutcome out;
    out.final = r;
    for (int n = 0; n < max_flips; ++n) {
        if (is_code_state(out.final)) {
            out.status = DecodeStatus::converged_code_state;
            return out;
        }
        double best = 0.0;
        int bi = -1, bj = -1;
        int t = 0;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j, ++t) {
                double d = beta * std::abs(couplings[t]) + w * syndrome_vote(out.final, i, j);
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0) {
            out.status = DecodeStatus::converged_fixed_point;
            return out;
        }
        out.final.flip(bi, bj);
        out.iterations_used = n + 1;
        out.flips_per_iteration.push_back(1);
    }
    out.status = is_code_state(out.final) ? DecodeStatus::converged_code_state : DecodeStatus::max_iter_reached;
    return out;
}

inline int hamming_distance(const SpinMatrix& a, const SpinMatrix& b) {
    int d = 0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i + 1; j < a.dim(); ++j) d += (a.at(i, j) != b.at(i, j));
    return d;
}

}  // namespace slhz
