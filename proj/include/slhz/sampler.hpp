#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "channels.hpp"
#include "code.hpp"
#include "decoders.hpp"
#include "rng.hpp"

namespace slhz {

// H(x) = -beta sum_p J_p x_p + gamma sum_checks (1 - s_check(x)) / 2,
// with the penalty running over the weight-4 cells or the weight-3 triples.
// beta and gamma absorb the temperature; there is no separate one.
struct SlhzHamiltonian {
    std::shared_ptr<const PECode> code;
    Instance instance;
    double beta = 0.0;
    double gamma = 0.0;
    int penalty_weight = 4;  // 3 or 4

    void validate() const {
        if (!code) throw std::invalid_argument("SlhzHamiltonian: missing code");
        if (penalty_weight != 3 && penalty_weight != 4)
            throw std::invalid_argument("SlhzHamiltonian: penalty weight must be 3 or 4");
        if (beta < 0.0 || gamma < 0.0) throw std::invalid_argument("SlhzHamiltonian: beta, gamma must be >= 0");
        if (static_cast<int>(instance.couplings.size()) != code->params.n_v)
            throw std::invalid_argument("SlhzHamiltonian: coupling length != C(k,2)");
    }
};

inline double energy(const SlhzHamiltonian& h, const SpinMatrix& x) {
    const int k = x.dim();
    double acc = 0.0;
    int t = 0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j, ++t) acc -= h.beta * h.instance.couplings[t] * x.at(i, j);
    const auto s = h.penalty_weight == 4 ? syndrome4(*h.code, x) : syndrome3(*h.code, x);
    for (int8_t v : s) acc += h.gamma * 0.5 * (1.0 - v);
    return acc;
}

// Energy change of flipping pair (i,j), from the adjacent checks only:
// 2 beta J_ij x_ij + gamma * sum of the adjacent syndromes.
inline double delta_energy(const SlhzHamiltonian& h, const SpinMatrix& x, int i, int j) {
    const int k = x.dim();
    const int p = pair_rank(k, std::min(i, j), std::max(i, j));
    double acc = 2.0 * h.beta * h.instance.couplings[p] * x.at(i, j);
    if (h.penalty_weight == 3) {
        acc += h.gamma * syndrome_vote(x, i, j);
    } else {
        for (int c : h.code->vn4_checks[p]) {
            auto [r, cc] = h.code->cells[c];
            int v = x.at(r, cc) * x.at(r, cc + 1) * x.at(r + 1, cc + 1);
            if (r + 1 < cc) v *= x.at(r + 1, cc);
            acc += h.gamma * v;
        }
    }
    return acc;
}

// One Metropolis proposal: uniform random pair flip accepted with
// min(1, exp(-dH)).
inline SpinMatrix metropolis_step(const SlhzHamiltonian& h, const SpinMatrix& x, Rng& rng) {
    const int k = x.dim();
    const int n_v = pair_count(k);
    auto [i, j] = pair_unrank(k, static_cast<int>(rng.below(n_v)));
    double dh = delta_energy(h, x, i, j);
    double u = rng.uniform01();
    if (dh <= 0.0 || u < std::exp(-dh)) {
        SpinMatrix next = x;
        next.flip(i, j);
        return next;
    }
    return x;
}

struct RfStep {
    SpinMatrix next;
    double holding_weight = 1.0;  // expected holding time of the departed state
    bool frozen = false;
};

// One rejection-free transition: every single-flip acceptance rate is
// computed, a flip is chosen with probability proportional to its rate, and
// the expected holding time of the old state is returned for time averages.
inline RfStep rejection_free_step(const SlhzHamiltonian& h, const SpinMatrix& x, Rng& rng) {
    const int k = x.dim();
    const int n_v = pair_count(k);
    std::vector<double> rate(n_v);
    double total = 0.0;
    for (int t = 0; t < n_v; ++t) {
        auto [i, j] = pair_unrank(k, t);
        double dh = delta_energy(h, x, i, j);
        rate[t] = dh <= 0.0 ? 1.0 : std::exp(-dh);
        total += rate[t];
    }
    if (total <= 0.0) return {x, std::numeric_limits<double>::infinity(), true};
    double u = rng.uniform01() * total;
    int pick = n_v - 1;
    double cum = 0.0;
    for (int t = 0; t < n_v; ++t) {
        cum += rate[t];
        if (u < cum) {
            pick = t;
            break;
        }
    }
    RfStep step{x, static_cast<double>(n_v) / total, false};
    auto [i, j] = pair_unrank(k, pick);
    step.next.flip(i, j);
    return step;
}

enum class Kernel { metropolis, rejection_free };

struct McmcConfig {
    Kernel kernel = Kernel::rejection_free;
    int sweeps = 1;           // recorded samples = sweeps * C(K,2)
    int burn_in_sweeps = 0;
    int record_stride = 1;    // record every stride-th state
    bool random_init = true;  // otherwise start from `initial`
    std::optional<SpinMatrix> initial;
    uint64_t seed = 0;
    bool store_samples = false;
    bool store_energies = false;

    void validate() const {
        if (sweeps < 1) throw std::invalid_argument("McmcConfig: sweeps must be >= 1");
        if (record_stride < 1) throw std::invalid_argument("McmcConfig: record stride must be >= 1");
        if (!random_init && !initial) throw std::invalid_argument("McmcConfig: missing initial state");
    }
};

struct ChainResult {
    std::vector<SpinMatrix> samples;      // populated when store_samples
    std::vector<double> energies;         // populated when store_energies
    std::vector<double> holding_weights;  // populated when store_energies (rejection-free)
    bool contains_exact = false;          // ground-truth code-state appeared
    bool contains_any = false;            // any code-state appeared
    bool decoded_exact = false;           // after per-sample decoding (hybrid mode)
    bool decoded_any = false;
    long long recorded = 0;
    bool frozen = false;
    SpinMatrix final;
};

namespace detail {

// Chain engine with incremental bookkeeping: cached check syndromes, flip
// rates, tracked energy, violated-check count and distance to ground truth.
class McmcChain {
public:
    McmcChain(const SlhzHamiltonian& h, SpinMatrix init, uint64_t seed)
        : h_(h), k_(h.code->params.k), n_v_(h.code->params.n_v), x_(std::move(init)),
          rng_(Rng::stream(seed, 0x636861696eull)) {
        h_.validate();
        if (x_.dim() != k_) throw std::invalid_argument("McmcChain: state dimension != code size");
        if (h_.instance.ground_state) truth_ = encode(*h_.instance.ground_state);

        const PECode& code = *h_.code;
        weight4_ = h_.penalty_weight == 4;
        const auto& vn = weight4_ ? code.vn4_checks : code.vn3_checks;
        syn_.resize(weight4_ ? code.params.n_c4 : code.params.n_c3);
        if (weight4_) {
            auto s = syndrome4(code, x_);
            std::copy(s.begin(), s.end(), syn_.begin());
        } else {
            auto s = syndrome3(code, x_);
            std::copy(s.begin(), s.end(), syn_.begin());
        }
        violated_ = 0;
        for (int8_t s : syn_) violated_ += (s == -1);

        // pairs whose rate changes when p flips (p itself included)
        neighbors_.resize(n_v_);
        std::vector<char> mark(n_v_, 0);
        auto add = [&](int p, int q) {
            if (!mark[q]) {
                mark[q] = 1;
                neighbors_[p].push_back(q);
            }
        };
        for (int p = 0; p < n_v_; ++p) {
            mark.assign(n_v_, 0);
            add(p, p);
            for (int c : vn[p]) {
                if (weight4_)
                    for (int q : code.cn4_members[c]) add(p, q);
                else
                    for (int q : code.cn3_members[c]) add(p, q);
            }
        }

        energy_ = energy(h_, x_);
        if (truth_) dist_ = hamming_distance(x_, *truth_);
        rate_.resize(n_v_);
        dh_.resize(n_v_);
        for (int p = 0; p < n_v_; ++p) refresh_rate(p);
    }

    const SpinMatrix& state() const { return x_; }
    double tracked_energy() const { return energy_; }
    bool at_truth() const { return truth_ && dist_ == 0; }
    bool at_code_state() const { return violated_ == 0; }

    // expected holding time of the current state under the standard chain
    double holding_weight() const {
        double total = 0.0;
        for (double r : rate_) total += r;
        if (total <= 0.0) return std::numeric_limits<double>::infinity();
        return static_cast<double>(n_v_) / total;
    }

    bool metropolis_move() {
        int p = static_cast<int>(rng_.below(n_v_));
        double dh = dh_[p];
        if (dh > 0.0 && rng_.uniform01() >= rate_[p]) return false;
        apply_flip(p);
        return true;
    }

    // returns false when every rate underflowed to zero (frozen chain)
    bool rejection_free_move() {
        double total = 0.0;
        for (double r : rate_) total += r;
        if (total <= 0.0) return false;
        double u = rng_.uniform01() * total;
        int pick = n_v_ - 1;
        double cum = 0.0;
        for (int p = 0; p < n_v_; ++p) {
            cum += rate_[p];
            if (u < cum) {
                pick = p;
                break;
            }
        }
        apply_flip(pick);
        return true;
    }

private:
    void refresh_rate(int p) {
        auto [i, j] = pair_unrank(k_, p);
        double dh = 2.0 * h_.beta * h_.instance.couplings[p] * x_.at(i, j);
        double s_sum = 0.0;
        for (int c : (weight4_ ? h_.code->vn4_checks[p] : h_.code->vn3_checks[p])) s_sum += syn_[c];
        dh += h_.gamma * s_sum;
        dh_[p] = dh;
        rate_[p] = dh <= 0.0 ? 1.0 : std::exp(-dh);
    }

    void apply_flip(int p) {
        auto [i, j] = pair_unrank(k_, p);
        energy_ += dh_[p];
        if (truth_) dist_ += (x_.at(i, j) == truth_->at(i, j)) ? 1 : -1;
        x_.flip(i, j);
        for (int c : (weight4_ ? h_.code->vn4_checks[p] : h_.code->vn3_checks[p])) {
            violated_ += (syn_[c] == 1) ? 1 : -1;
            syn_[c] = static_cast<int8_t>(-syn_[c]);
        }
        for (int q : neighbors_[p]) refresh_rate(q);
    }

    SlhzHamiltonian h_;
    int k_, n_v_;
    SpinMatrix x_;
    Rng rng_;
    std::optional<SpinMatrix> truth_;
    bool weight4_ = true;
    std::vector<int8_t> syn_;
    std::vector<std::vector<int>> neighbors_;
    std::vector<double> rate_, dh_;
    double energy_ = 0.0;
    int violated_ = 0;
    int dist_ = -1;
};

}  // namespace detail

// Runs one chain and calls on_sample(state, holding_weight) for every
// recorded state; the first recorded state is the post-burn-in initial one,
// so sweeps * C(K,2) states are recorded in total (at stride 1).
template <class F>
ChainResult run_chain_observed(const SlhzHamiltonian& h, const McmcConfig& cfg, F&& on_sample) {
    cfg.validate();
    h.validate();
    const int k = h.code->params.k;
    const int n_v = h.code->params.n_v;

    SpinMatrix init = SpinMatrix::all_one(k);
    if (cfg.random_init) {
        Rng init_rng = Rng::stream(cfg.seed, 0x696e6974ull);
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) init.set(i, j, init_rng.pm_one());
    } else {
        init = *cfg.initial;
    }

    detail::McmcChain chain(h, init, cfg.seed);
    ChainResult out;
    out.final = chain.state();

    auto move = [&]() -> bool {
        if (cfg.kernel == Kernel::metropolis) {
            chain.metropolis_move();
            return true;
        }
        return chain.rejection_free_move();
    };

    for (long long s = 0; s < static_cast<long long>(cfg.burn_in_sweeps) * n_v; ++s) {
        if (!move()) {
            out.frozen = true;
            break;
        }
    }

    const long long budget = static_cast<long long>(cfg.sweeps) * n_v;
    long long step_counter = 0;
    auto record = [&]() {
        const SpinMatrix& x = chain.state();
        double w = cfg.kernel == Kernel::rejection_free ? chain.holding_weight() : 1.0;
        if (chain.at_code_state()) {
            out.contains_any = true;
            if (chain.at_truth()) out.contains_exact = true;
        }
        if (cfg.store_samples) out.samples.push_back(x);
        if (cfg.store_energies) {
            out.energies.push_back(chain.tracked_energy());
            out.holding_weights.push_back(w);
        }
        on_sample(x, w);
        ++out.recorded;
    };

    if (!out.frozen) {
        record();
        while (out.recorded < (budget + cfg.record_stride - 1) / cfg.record_stride) {
            bool moved = false;
            for (int s = 0; s < cfg.record_stride; ++s) {
                ++step_counter;
                if (!move()) {
                    out.frozen = true;
                    break;
                }
                moved = true;
            }
            if (out.frozen || !moved) break;
            record();
        }
    }
    out.final = chain.state();
    return out;
}

inline ChainResult run_chain(const SlhzHamiltonian& h, const McmcConfig& cfg) {
    return run_chain_observed(h, cfg, [](const SpinMatrix&, double) {});
}

// Two-stage decoding: every recorded sample is bit-flip decoded and the
// decoded sequence is checked for the ground-truth state / any code-state.
// Decoding stops once both flags are set (they are monotone).
inline ChainResult hybrid_decode(const SlhzHamiltonian& h, const McmcConfig& cfg, const BfConfig& bf) {
    std::optional<SpinMatrix> truth;
    if (h.instance.ground_state) truth = encode(*h.instance.ground_state);
    bool done_exact = false, done_any = false;
    ChainResult out = run_chain_observed(h, cfg, [&](const SpinMatrix& x, double) {
        if (done_exact && done_any) return;
        DecodeOutcome dec = bf_decode(x, bf);
        if (dec.status == DecodeStatus::converged_code_state) {
            done_any = true;
            if (truth && dec.final == *truth) done_exact = true;
        }
    });
    out.decoded_any = done_any;
    out.decoded_exact = done_exact;
    return out;
}

// Mean of x o z over the samples; entry (i,j) near +1 means pair (i,j) is
// usually read out correctly.
inline std::vector<double> average_error_matrix(const std::vector<SpinMatrix>& samples,
                                                const SpinMatrix& ground_truth) {
    if (samples.empty()) throw std::invalid_argument("average_error_matrix: no samples");
    const int k = ground_truth.dim();
    std::vector<double> acc(static_cast<size_t>(k) * k, 0.0);
    for (const SpinMatrix& x : samples)
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                acc[static_cast<size_t>(i) * k + j] += x.at(i, j) * ground_truth.at(i, j);
    for (double& v : acc) v /= static_cast<double>(samples.size());
    return acc;
}

}  // namespace slhz
