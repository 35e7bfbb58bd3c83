#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "code.hpp"
#include "oracle.hpp"
#include "rng.hpp"

namespace slhz {

struct IidNoise {
    double epsilon = 0.0;  // per-spin flip probability, in [0, 0.5)
};

// AWGN channel with antipodal signalling. The reliability factor
// beta = 2|v|/sigma^2 is derived so it can never disagree with the fields.
struct AwgnChannel {
    double amplitude = 1.0;  // |v| > 0
    double sigma = 1.0;      // noise standard deviation > 0

    double beta() const { return 2.0 * amplitude / (sigma * sigma); }
};

// Half log-likelihood ratio of an observation y: B = beta * y / 2.
inline double llr(const AwgnChannel& ch, double y) {
    if (!(ch.amplitude > 0.0) || !(ch.sigma > 0.0))
        throw std::invalid_argument("llr: amplitude and sigma must be positive");
    return 0.5 * ch.beta() * y;
}

// A logical problem: couplings over the C(K,2) spin pairs plus optional
// brute-forced ground truth.
struct Instance {
    int k = 0;
    std::vector<double> couplings;  // canonical pair order
    std::optional<LogicalState> ground_state;
    std::optional<double> ground_energy;
    bool degenerate = false;
    uint64_t seed = 0;
    double coupling_bound = 0.0;
};

// Symmetric unit-diagonal matrix with each off-diagonal pair independently
// -1 with probability epsilon (one draw per pair).
inline SpinMatrix sample_iid_error(int k, const IidNoise& noise, Rng& rng) {
    if (!(noise.epsilon >= 0.0 && noise.epsilon < 0.5))
        throw std::invalid_argument("sample_iid_error: epsilon must be in [0, 0.5)");
    SpinMatrix x(k);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (rng.bernoulli(noise.epsilon)) x.set(i, j, -1);
    return x;
}

inline Instance gen_instance(int k, double coupling_bound, uint64_t seed, bool with_ground_truth) {
    if (k < 2) throw std::invalid_argument("gen_instance: k must be >= 2");
    if (coupling_bound < 0.0) throw std::invalid_argument("gen_instance: coupling bound must be >= 0");
    if (with_ground_truth && k > kBruteForceMaxK)
        throw capacity_error("gen_instance: ground truth requires k <= brute-force cap");

    Instance inst;
    inst.k = k;
    inst.seed = seed;
    inst.coupling_bound = coupling_bound;
    inst.couplings.resize(pair_count(k));
    Rng rng = Rng::stream(seed, 0x696e7374ull);  // dedicated stream per instance seed
    for (double& j : inst.couplings) j = rng.uniform(-coupling_bound, coupling_bound);

    if (with_ground_truth) {
        ExactSolution sol = brute_force_ground_state(k, inst.couplings);
        inst.ground_state = sol.minimizer;
        inst.ground_energy = sol.min_energy;
        inst.degenerate = sol.degenerate;
    }
    return inst;
}

// Crosstalk parameters of the binary symmetric channels seen by the
// majority vote on pair (i,j): p_k is the probability that check (i,j,k)
// disagrees with the error on (i,j), and w0/w_k are the log-likelihood
// weights of the prior vote and of each check vote.
struct CrosstalkParams {
    int i = 0, j = 0;
    double gamma_ij = 0.0;
    std::vector<double> p;  // indexed by the third spin k; entries at i, j unused
    double w0 = 0.0;
    std::vector<double> w;  // same indexing as p

    // The unweighted-majority-vote approximation (w0 = w_k = 1) that the
    // plain bit-flip rule uses in place of the exact weights.
    static CrosstalkParams majority_vote(int k, int i, int j) {
        CrosstalkParams ct;
        ct.i = i;
        ct.j = j;
        ct.gamma_ij = 0.0;
        ct.p.assign(k, 0.0);
        ct.w0 = 1.0;
        ct.w.assign(k, 1.0);
        return ct;
    }
};

// gammas: per-pair prior error probabilities in canonical pair order.
inline CrosstalkParams crosstalk(int k, std::span<const double> gammas, int i, int j) {
    if (static_cast<int>(gammas.size()) != pair_count(k))
        throw std::invalid_argument("crosstalk: gamma length != C(k,2)");
    for (double g : gammas)
        if (!(g > 0.0 && g < 0.5))
            throw std::invalid_argument("crosstalk: every gamma must lie in (0, 0.5)");

    CrosstalkParams ct;
    ct.i = i;
    ct.j = j;
    ct.gamma_ij = gammas[pair_rank(k, std::min(i, j), std::max(i, j))];
    ct.w0 = std::log((1.0 - ct.gamma_ij) / ct.gamma_ij);
    ct.p.assign(k, 0.0);
    ct.w.assign(k, 0.0);
    for (int s = 0; s < k; ++s) {
        if (s == i || s == j) continue;
        double g_jk = gammas[pair_rank(k, std::min(j, s), std::max(j, s))];
        double g_ik = gammas[pair_rank(k, std::min(i, s), std::max(i, s))];
        double pk = 0.5 * (1.0 - (1.0 - 2.0 * g_jk) * (1.0 - 2.0 * g_ik));
        ct.p[s] = pk;
        ct.w[s] = std::log((1.0 - pk) / pk);
    }
    return ct;
}

}  // namespace slhz
