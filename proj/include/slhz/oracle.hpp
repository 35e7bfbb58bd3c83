#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <span>
#include <thread>
#include <vector>

#include "code.hpp"

namespace slhz {

// Exponential enumeration caps, sized so a scan finishes in desk-scale time.
inline constexpr int kBruteForceMaxK = 28;

struct ExactSolution {
    LogicalState minimizer;  // lexicographically first, spin 0 fixed to +1
    double min_energy = 0.0;
    bool degenerate = false;
    uint64_t minimizer_count = 0;
    std::vector<LogicalState> all_minimizers;  // filled only when requested
};

// H^source(Z) = -sum_{i<j} J_ij Z_i Z_j, fixed lexicographic summation order
// so results are bit-reproducible across runs.
inline double source_energy(int k, std::span<const double> couplings, const LogicalState& z) {
    double h = 0.0;
    int t = 0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j, ++t) h -= couplings[t] * z[i] * z[j];
    return h;
}

namespace detail {

struct ScanResult {
    double min_energy = 0.0;
    uint64_t best_word = 0;
    uint64_t count = 0;
    std::vector<uint64_t> words;  // minimizer words, capped
};

inline LogicalState word_to_state(int k, uint64_t word) {
    LogicalState z(k, 1);
    for (int i = 1; i < k; ++i) z[i] = (word >> (i - 1)) & 1 ? int8_t{-1} : int8_t{1};
    return z;
}

inline ScanResult scan_range(int k, std::span<const double> couplings, uint64_t begin, uint64_t end,
                             bool collect) {
    ScanResult res;
    LogicalState z(k, 1);
    for (uint64_t word = begin; word < end; ++word) {
        for (int i = 1; i < k; ++i) z[i] = (word >> (i - 1)) & 1 ? int8_t{-1} : int8_t{1};
        double h = source_energy(k, couplings, z);
        if (word == begin || h < res.min_energy) {
            res.min_energy = h;
            res.best_word = word;
            res.count = 1;
            if (collect) res.words.assign(1, word);
        } else if (h == res.min_energy) {
            ++res.count;
            if (collect && res.words.size() < 4096) res.words.push_back(word);
        }
    }
    return res;
}

}  // namespace detail

// Exhaustive scan of the 2^(K-1) states with Z_0 = +1 (global spin flip is a
// symmetry when all logical fields are zero). Ties compare exactly equal
// because every energy is evaluated with the same summation order, so the
// range-parallel reduction (min energy, then lexicographically first state)
// gives the same answer for any thread count.
inline ExactSolution brute_force_ground_state(int k, std::span<const double> couplings,
                                              bool collect_all = false, int threads = 1) {
    if (k > kBruteForceMaxK) throw capacity_error("brute_force_ground_state: k exceeds brute-force cap");
    if (static_cast<int>(couplings.size()) != pair_count(k))
        throw std::invalid_argument("brute_force_ground_state: coupling length != C(k,2)");

    const uint64_t total = 1ull << (k - 1);
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    int chunks = 1;
    if (threads > 1 && total >= 1u << 16) chunks = threads * 4;

    std::vector<detail::ScanResult> partial(chunks);
    const uint64_t step = (total + chunks - 1) / chunks;
    if (chunks == 1) {
        partial[0] = detail::scan_range(k, couplings, 0, total, collect_all);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        auto worker = [&]() {
            for (;;) {
                int c = next.fetch_add(1);
                if (c >= chunks) break;
                uint64_t begin = static_cast<uint64_t>(c) * step;
                uint64_t end = std::min(total, begin + step);
                if (begin < end) partial[c] = detail::scan_range(k, couplings, begin, end, collect_all);
            }
        };
        for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();
    }

    detail::ScanResult best = partial[0];
    for (int c = 1; c < chunks; ++c) {
        const auto& r = partial[c];
        if (r.count == 0) continue;
        if (r.min_energy < best.min_energy ||
            (r.min_energy == best.min_energy && r.best_word < best.best_word)) {
            uint64_t carry = r.min_energy == best.min_energy ? best.count : 0;
            auto carry_words = r.min_energy == best.min_energy ? best.words : std::vector<uint64_t>{};
            best = r;
            best.count += carry;
            for (uint64_t w : carry_words)
                if (best.words.size() < 4096) best.words.push_back(w);
        } else if (r.min_energy == best.min_energy) {
            best.count += r.count;
            for (uint64_t w : r.words)
                if (best.words.size() < 4096) best.words.push_back(w);
        }
    }

    ExactSolution out;
    out.min_energy = best.min_energy;
    out.minimizer = detail::word_to_state(k, best.best_word);
    out.minimizer_count = best.count;
    out.degenerate = best.count > 1;
    if (collect_all) {
        std::sort(best.words.begin(), best.words.end());
        for (uint64_t w : best.words) out.all_minimizers.push_back(detail::word_to_state(k, w));
    }
    return out;
}

// Exact Boltzmann table over all 64 symmetric K=4 states; index bit t set
// means pair t (canonical order) is -1. EnergyFn: SpinMatrix -> double.
template <class EnergyFn>
std::vector<double> exact_boltzmann(int k, EnergyFn&& energy) {
    if (k != 4) throw capacity_error("exact_boltzmann: only k = 4 is tabulated");
    const int n = 64;
    std::vector<double> w(n);
    double max_neg = -1e300;
    for (int bits = 0; bits < n; ++bits) {
        SpinMatrix x(4);
        for (int t = 0; t < 6; ++t)
            if (bits >> t & 1) {
                auto [i, j] = pair_unrank(4, t);
                x.set(i, j, -1);
            }
        w[bits] = -energy(x);
        if (w[bits] > max_neg) max_neg = w[bits];
    }
    double z = 0.0;
    for (double& v : w) {
        v = std::exp(v - max_neg);
        z += v;
    }
    for (double& v : w) v /= z;
    return w;
}

inline int state_bits(const SpinMatrix& x) {
    int bits = 0;
    int t = 0;
    for (int i = 0; i < x.dim(); ++i)
        for (int j = i + 1; j < x.dim(); ++j, ++t)
            if (x.at(i, j) == -1) bits |= 1 << t;
    return bits;
}

// Exact per-pair posterior LLRs for K=4 under an i.i.d. flip channel with
// rate epsilon, summing over the 8 code-states.
inline std::vector<double> exact_marginals(const SpinMatrix& r, double epsilon) {
    if (r.dim() != 4) throw capacity_error("exact_marginals: only k = 4 supported");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("exact_marginals: epsilon in (0,1)");

    std::vector<double> plus(6, 0.0), minus(6, 0.0);
    for (unsigned bits = 0; bits < 8; ++bits) {  // the 8 code-states, Z_0 = +1 representatives
        LogicalState z(4, 1);
        for (int i = 1; i < 4; ++i) z[i] = (bits >> (i - 1) & 1) ? int8_t{-1} : int8_t{1};
        SpinMatrix zc = encode(z);
        double p = 1.0;
        int t = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j, ++t) p *= (r.at(i, j) == zc.at(i, j)) ? (1.0 - epsilon) : epsilon;
        t = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j, ++t) {
                if (zc.at(i, j) == 1)
                    plus[t] += p;
                else
                    minus[t] += p;
            }
    }
    std::vector<double> llr(6);
    for (int t = 0; t < 6; ++t) llr[t] = std::log(plus[t]) - std::log(minus[t]);
    return llr;
}

}  // namespace slhz
