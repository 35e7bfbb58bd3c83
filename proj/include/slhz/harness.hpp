#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "channels.hpp"
#include "code.hpp"
#include "decoders.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "sampler.hpp"

namespace slhz {

// Index-based task pool; results keyed by task index make aggregation
// order-independent.
template <class F>
void parallel_for(long long n, int threads, F&& fn) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    if (threads == 1 || n <= 1) {
        for (long long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<long long> next{0};
    auto worker = [&]() {
        for (;;) {
            long long i = next.fetch_add(1);
            if (i >= n) break;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------- iid bench

enum class IidDecoder { bf, bp, mcmc };

inline const char* to_string(IidDecoder d) {
    switch (d) {
        case IidDecoder::bf: return "bf";
        case IidDecoder::bp: return "bp";
        default: return "mcmc";
    }
}

struct IidBenchConfig {
    std::vector<int> sizes{10, 20, 30, 40};
    std::vector<double> epsilons{0.05, 0.1, 0.15, 0.2, 0.3};
    std::vector<IidDecoder> decoders{IidDecoder::bf, IidDecoder::bp, IidDecoder::mcmc};
    int trials = 2000;
    int iterations = 5;       // BF/BP rounds
    double bp_prior = 0.0;    // <= 0 uses the channel epsilon
    double mcmc_gamma = 1.0;  // experimentally optimal for the syndrome-only Hamiltonian
    int mcmc_sweeps = 1;      // C(K,2) recorded states per trial
    TiePolicy tie_policy = TiePolicy::fail;
    uint64_t seed = 1;
    int threads = 0;

    void validate() const {
        if (trials < 1) throw std::invalid_argument("iid-bench: trials must be >= 1");
        if (iterations < 1) throw std::invalid_argument("iid-bench: iterations must be >= 1");
        if (sizes.empty() || epsilons.empty() || decoders.empty())
            throw std::invalid_argument("iid-bench: sizes, epsilons and decoders must be nonempty");
        for (int k : sizes)
            if (k < 4) throw std::invalid_argument("iid-bench: sizes must be >= 4");
        for (double e : epsilons)
            if (!(e >= 0.0 && e < 0.5)) throw std::invalid_argument("iid-bench: epsilon in [0, 0.5)");
        if (mcmc_sweeps < 1) throw std::invalid_argument("iid-bench: mcmc sweeps must be >= 1");
    }
};

struct BenchRecord {
    int k = 0;
    double epsilon = 0.0;
    IidDecoder decoder = IidDecoder::bf;
    int trials = 0;
    int successes = 0;
    int failures = 0;
    int ties = 0;
    double seconds = 0.0;  // wall time; reported in the log, never in the CSV

    double failure_probability() const { return trials ? static_cast<double>(failures) / trials : 0.0; }
};

// Ferromagnetic-gauge benchmark: the all-one code-state is transmitted, so
// the sampled error matrix doubles as the readout. Success means the decoder
// restores the all-one matrix. The same error matrices are decoded by every
// selected decoder.
inline std::vector<BenchRecord> run_iid_bench(const IidBenchConfig& cfg) {
    cfg.validate();
    std::vector<std::shared_ptr<const PECode>> codes;
    for (int k : cfg.sizes) codes.push_back(std::make_shared<PECode>(PECode::build(k)));

    const int n_points = static_cast<int>(cfg.sizes.size() * cfg.epsilons.size());
    std::vector<BenchRecord> records;
    records.reserve(static_cast<size_t>(n_points) * cfg.decoders.size());

    for (size_t si = 0; si < cfg.sizes.size(); ++si) {
        for (size_t ei = 0; ei < cfg.epsilons.size(); ++ei) {
            const int k = cfg.sizes[si];
            const double eps = cfg.epsilons[ei];
            const uint64_t point_id = si * 1000 + ei;
            const SpinMatrix target = SpinMatrix::all_one(k);

            for (IidDecoder dec : cfg.decoders) {
                BenchRecord rec;
                rec.k = k;
                rec.epsilon = eps;
                rec.decoder = dec;
                rec.trials = cfg.trials;

                std::vector<uint8_t> result(cfg.trials);  // 0 success, 1 failure, 2 tie
                auto t0 = std::chrono::steady_clock::now();
                parallel_for(cfg.trials, cfg.threads, [&](long long trial) {
                    Rng noise_rng = Rng::stream(cfg.seed, point_id, static_cast<uint64_t>(trial));
                    SpinMatrix r = sample_iid_error(k, IidNoise{eps}, noise_rng);
                    uint8_t res = 1;
                    if (dec == IidDecoder::bf) {
                        BfConfig bf;
                        bf.max_iterations = cfg.iterations;
                        bf.tie_policy = cfg.tie_policy;
                        Rng tie_rng = Rng::stream(cfg.seed, point_id ^ 0xbf00, static_cast<uint64_t>(trial));
                        DecodeOutcome out = bf_decode(r, bf, &tie_rng);
                        if (out.status == DecodeStatus::tie)
                            res = 2;
                        else
                            res = out.final == target ? 0 : 1;
                    } else if (dec == IidDecoder::bp) {
                        BpConfig bp;
                        bp.iterations = cfg.iterations;
                        bp.prior_epsilon = cfg.bp_prior > 0.0 ? cfg.bp_prior : std::max(eps, 1e-3);
                        DecodeOutcome out = bp_decode(*codes[si], r, bp);
                        res = out.final == target ? 0 : 1;
                    } else {
                        SlhzHamiltonian h;
                        h.code = codes[si];
                        h.instance.k = k;
                        h.instance.couplings.assign(pair_count(k), 0.0);
                        h.instance.ground_state = LogicalState(k, 1);
                        h.beta = 0.0;
                        h.gamma = cfg.mcmc_gamma;
                        h.penalty_weight = 3;
                        McmcConfig mc;
                        mc.kernel = Kernel::rejection_free;
                        mc.sweeps = cfg.mcmc_sweeps;
                        mc.random_init = false;
                        mc.initial = r;
                        mc.seed = mix_seed(mix_seed(cfg.seed, point_id ^ 0x3c3c), static_cast<uint64_t>(trial));
                        res = run_chain(h, mc).contains_exact ? 0 : 1;
                    }
                    result[trial] = res;
                });
                rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                for (uint8_t r : result) {
                    rec.successes += (r == 0);
                    rec.failures += (r != 0);
                    rec.ties += (r == 2);
                }
                records.push_back(rec);
            }
        }
    }
    return records;
}

inline void write_iid_bench_csv(std::ostream& os, const IidBenchConfig& cfg,
                                const std::vector<BenchRecord>& records) {
    os << "# slhz iid-bench\n";
    os << "# seed: " << cfg.seed << '\n';
    os << "# trials: " << cfg.trials << '\n';
    os << "# iterations: " << cfg.iterations << '\n';
    os << "# bp_prior: " << (cfg.bp_prior > 0.0 ? detail::fmt_prob(cfg.bp_prior) : std::string("channel")) << '\n';
    os << "# mcmc_gamma: " << detail::fmt_prob(cfg.mcmc_gamma) << '\n';
    os << "# mcmc_sweeps: " << cfg.mcmc_sweeps << '\n';
    os << "k,epsilon,decoder,trials,successes,failures,ties,failure_probability\n";
    for (const BenchRecord& r : records)
        os << r.k << ',' << detail::fmt_prob(r.epsilon) << ',' << to_string(r.decoder) << ',' << r.trials
           << ',' << r.successes << ',' << r.failures << ',' << r.ties << ','
           << detail::fmt_prob(r.failure_probability()) << '\n';
}

// ----------------------------------------------------------- instance bundle

inline Instance bundle_instance(int k, double bound, uint64_t master_seed, int index) {
    return gen_instance(k, bound, mix_seed(master_seed, 0x62756e646cull + index), true);
}

// 12 seeded instances with cached ground truths, generated on first use.
inline std::vector<Instance> ensure_instance_bundle(const std::filesystem::path& dir, int k = 14,
                                                    int count = 12, double bound = 0.25,
                                                    uint64_t seed = 1) {
    std::filesystem::create_directories(dir);
    std::vector<Instance> out;
    for (int i = 0; i < count; ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "instance_%02d.txt", i);
        std::filesystem::path file = dir / name;
        bool ok = false;
        if (std::filesystem::exists(file)) {
            std::ifstream in(file);
            try {
                Instance inst = read_instance(in);
                if (inst.k == k && inst.ground_state) {
                    out.push_back(std::move(inst));
                    ok = true;
                }
            } catch (const parse_error&) {
            }
        }
        if (!ok) {
            Instance inst = bundle_instance(k, bound, seed, i);
            std::ofstream os(file);
            write_instance(os, inst);
            out.push_back(std::move(inst));
        }
    }
    return out;
}

// ------------------------------------------------------------ landscape scan

struct LandscapeConfig {
    std::vector<double> betas;
    std::vector<double> gammas;
    int chains = 32;
    int raw_sweeps = 1200;       // raw sampling budget: raw_sweeps * C(K,2) states
    int hybrid_sweeps = 4;       // hybrid budget: hybrid_sweeps * C(K,2) states
    int hybrid_burn_in = 1;      // sweeps discarded before hybrid recording
    int bf_iterations = 5;
    uint64_t seed = 1;
    int threads = 0;

    void validate() const {
        if (betas.empty() || gammas.empty()) throw std::invalid_argument("landscape: empty grid");
        if (chains < 1) throw std::invalid_argument("landscape: chains must be >= 1");
        if (raw_sweeps < 1 || hybrid_sweeps < 1) throw std::invalid_argument("landscape: sweeps must be >= 1");
    }
};

// Grid defaults chosen to span both operating regimes of the K=14 bundle:
// raw code-state sampling peaks near low beta / high gamma, hybrid decoding
// near high beta / low gamma.
inline std::vector<double> default_landscape_betas() { return {1, 2, 3, 4, 6, 9, 14, 20}; }
inline std::vector<double> default_landscape_gammas() { return {0.0, 0.25, 0.5, 1.0, 2.0, 3.0, 4.0, 5.0}; }

struct LandscapePoint {
    double beta = 0.0, gamma = 0.0;
    double p_exact_raw = 0.0, p_any_raw = 0.0;
    double p_exact_decoded = 0.0, p_any_decoded = 0.0;
    int n_chains = 0;
    uint64_t seed = 0;
};

struct InstanceLandscape {
    int instance_id = 0;
    std::vector<LandscapePoint> points;
    int best_raw = 0;     // index of the raw (set A) optimum
    int best_hybrid = 0;  // index of the hybrid (set B) optimum
};

namespace detail {

// argmax of exact success; ties resolved toward smaller gamma, then beta
inline bool landscape_better(const LandscapePoint& cand, double cand_p, const LandscapePoint& best,
                             double best_p) {
    if (cand_p != best_p) return cand_p > best_p;
    if (cand.gamma != best.gamma) return cand.gamma < best.gamma;
    return cand.beta < best.beta;
}

}  // namespace detail

inline std::vector<InstanceLandscape> run_hybrid_landscape(const std::vector<Instance>& instances,
                                                           const LandscapeConfig& cfg) {
    cfg.validate();
    for (const Instance& inst : instances)
        if (!inst.ground_state)
            throw std::invalid_argument("landscape: every instance must carry a ground truth");
    if (instances.empty()) throw std::invalid_argument("landscape: no instances");

    const int k = instances.front().k;
    auto code = std::make_shared<PECode>(PECode::build(k));
    const int n_points = static_cast<int>(cfg.betas.size() * cfg.gammas.size());
    const long long tasks_per_mode = static_cast<long long>(instances.size()) * n_points * cfg.chains;

    // result bytes: bit0 = exact, bit1 = any
    std::vector<uint8_t> raw_bits(tasks_per_mode, 0), dec_bits(tasks_per_mode, 0);

    parallel_for(2 * tasks_per_mode, cfg.threads, [&](long long task) {
        const bool hybrid = task >= tasks_per_mode;
        long long t = hybrid ? task - tasks_per_mode : task;
        const int chain = static_cast<int>(t % cfg.chains);
        const int point = static_cast<int>((t / cfg.chains) % n_points);
        const int inst_id = static_cast<int>(t / cfg.chains / n_points);

        SlhzHamiltonian h;
        h.code = code;
        h.instance = instances[inst_id];
        h.beta = cfg.betas[point / cfg.gammas.size()];
        h.gamma = cfg.gammas[point % cfg.gammas.size()];
        h.penalty_weight = 4;

        McmcConfig mc;
        mc.kernel = Kernel::rejection_free;
        uint64_t mode_tag = hybrid ? 0x6879627269ull : 0x726177ull;
        mc.seed = mix_seed(mix_seed(mix_seed(cfg.seed, mode_tag), inst_id * 1000003ull + point), chain);

        if (!hybrid) {
            mc.sweeps = cfg.raw_sweeps;
            ChainResult res = run_chain(h, mc);
            raw_bits[t] = static_cast<uint8_t>(res.contains_exact | (res.contains_any << 1));
        } else {
            mc.sweeps = cfg.hybrid_sweeps;
            mc.burn_in_sweeps = cfg.hybrid_burn_in;
            BfConfig bf;
            bf.max_iterations = cfg.bf_iterations;
            ChainResult res = hybrid_decode(h, mc, bf);
            dec_bits[t] = static_cast<uint8_t>(res.decoded_exact | (res.decoded_any << 1));
        }
    });

    std::vector<InstanceLandscape> out(instances.size());
    for (size_t i = 0; i < instances.size(); ++i) {
        InstanceLandscape& ls = out[i];
        ls.instance_id = static_cast<int>(i);
        ls.points.resize(n_points);
        for (int p = 0; p < n_points; ++p) {
            LandscapePoint& pt = ls.points[p];
            pt.beta = cfg.betas[p / cfg.gammas.size()];
            pt.gamma = cfg.gammas[p % cfg.gammas.size()];
            pt.n_chains = cfg.chains;
            pt.seed = cfg.seed;
            int re = 0, ra = 0, de = 0, da = 0;
            for (int c = 0; c < cfg.chains; ++c) {
                long long t = (static_cast<long long>(i) * n_points + p) * cfg.chains + c;
                re += raw_bits[t] & 1;
                ra += (raw_bits[t] >> 1) & 1;
                de += dec_bits[t] & 1;
                da += (dec_bits[t] >> 1) & 1;
            }
            pt.p_exact_raw = static_cast<double>(re) / cfg.chains;
            pt.p_any_raw = static_cast<double>(ra) / cfg.chains;
            pt.p_exact_decoded = static_cast<double>(de) / cfg.chains;
            pt.p_any_decoded = static_cast<double>(da) / cfg.chains;
        }
        for (int p = 1; p < n_points; ++p) {
            if (detail::landscape_better(ls.points[p], ls.points[p].p_exact_raw, ls.points[ls.best_raw],
                                         ls.points[ls.best_raw].p_exact_raw))
                ls.best_raw = p;
            if (detail::landscape_better(ls.points[p], ls.points[p].p_exact_decoded,
                                         ls.points[ls.best_hybrid], ls.points[ls.best_hybrid].p_exact_decoded))
                ls.best_hybrid = p;
        }
    }
    return out;
}

inline void write_landscape_csv(std::ostream& os, int instance_id, int k, const LandscapeConfig& cfg,
                                const InstanceLandscape& ls) {
    os << "# slhz hybrid-landscape\n";
    os << "# instance: " << instance_id << '\n';
    os << "# k: " << k << '\n';
    os << "# chains: " << cfg.chains << '\n';
    os << "# raw_sweeps: " << cfg.raw_sweeps << '\n';
    os << "# hybrid_sweeps: " << cfg.hybrid_sweeps << '\n';
    os << "beta,gamma,p_success_exact_raw,p_success_any_raw,p_success_exact_decoded,p_success_any_decoded,n_chains,seed\n";
    for (const LandscapePoint& p : ls.points)
        os << detail::fmt_prob(p.beta) << ',' << detail::fmt_prob(p.gamma) << ','
           << detail::fmt_prob(p.p_exact_raw) << ',' << detail::fmt_prob(p.p_any_raw) << ','
           << detail::fmt_prob(p.p_exact_decoded) << ',' << detail::fmt_prob(p.p_any_decoded) << ','
           << p.n_chains << ',' << p.seed << '\n';
}

inline void write_landscape_summary_csv(std::ostream& os, const std::vector<InstanceLandscape>& all) {
    os << "# slhz hybrid-landscape summary (set A = raw optimum, set B = hybrid optimum)\n";
    os << "instance,beta_a,gamma_a,p_exact_raw_a,beta_b,gamma_b,p_exact_decoded_b\n";
    for (const InstanceLandscape& ls : all) {
        const LandscapePoint& a = ls.points[ls.best_raw];
        const LandscapePoint& b = ls.points[ls.best_hybrid];
        os << ls.instance_id << ',' << detail::fmt_prob(a.beta) << ',' << detail::fmt_prob(a.gamma) << ','
           << detail::fmt_prob(a.p_exact_raw) << ',' << detail::fmt_prob(b.beta) << ','
           << detail::fmt_prob(b.gamma) << ',' << detail::fmt_prob(b.p_exact_decoded) << '\n';
    }
}

// -------------------------------------------------------- error matrix report

struct ErrorMatrixConfig {
    int chains = 8;
    int sweeps = 40;
    Kernel kernel = Kernel::rejection_free;
    uint64_t seed = 1;
    int threads = 0;
};

// Averaged error matrix <x o z> over all samples of `chains` chains at the
// given annealing parameters.
inline std::vector<double> run_error_matrix(const Instance& inst, double beta, double gamma,
                                            const ErrorMatrixConfig& cfg) {
    if (!inst.ground_state) throw std::invalid_argument("error-matrix: instance must carry a ground truth");
    const int k = inst.k;
    auto code = std::make_shared<PECode>(PECode::build(k));
    SpinMatrix truth = encode(*inst.ground_state);

    std::vector<std::vector<double>> acc(cfg.chains, std::vector<double>(static_cast<size_t>(k) * k, 0.0));
    std::vector<long long> counts(cfg.chains, 0);
    parallel_for(cfg.chains, cfg.threads, [&](long long chain) {
        SlhzHamiltonian h;
        h.code = code;
        h.instance = inst;
        h.beta = beta;
        h.gamma = gamma;
        h.penalty_weight = 4;
        McmcConfig mc;
        mc.kernel = cfg.kernel;
        mc.sweeps = cfg.sweeps;
        mc.seed = mix_seed(mix_seed(cfg.seed, 0x656d61ull), static_cast<uint64_t>(chain));
        auto& a = acc[chain];
        run_chain_observed(h, mc, [&](const SpinMatrix& x, double) {
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) a[static_cast<size_t>(i) * k + j] += x.at(i, j) * truth.at(i, j);
            ++counts[chain];
        });
    });

    std::vector<double> mean(static_cast<size_t>(k) * k, 0.0);
    long long total = 0;
    for (int c = 0; c < cfg.chains; ++c) {  // fixed reduction order
        total += counts[c];
        for (size_t t = 0; t < mean.size(); ++t) mean[t] += acc[c][t];
    }
    if (total == 0) throw std::runtime_error("error-matrix: no samples recorded (frozen chains?)");
    for (double& v : mean) v /= static_cast<double>(total);
    return mean;
}

inline void write_matrix_grid_csv(std::ostream& os, int k, const std::vector<double>& grid) {
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            if (j) os << ',';
            os << detail::fmt_prob(grid[static_cast<size_t>(i) * k + j]);
        }
        os << '\n';
    }
}

// ------------------------------------------------------------------ decode-one

struct DecodeOneConfig {
    std::string decoder = "bf";  // bf | bp | mwd
    int iterations = 5;
    double bp_prior = 0.25;
    TiePolicy tie_policy = TiePolicy::fail;
    uint64_t seed = 0;
};

struct DecodeOneReport {
    DecodeOutcome outcome;
    std::vector<SpinMatrix> frames;  // input state first, then one per iteration
    int distance_to_truth = -1;
};

inline DecodeOneReport decode_one(const SpinMatrix& input, const DecodeOneConfig& cfg,
                                  const std::optional<SpinMatrix>& truth = std::nullopt) {
    DecodeOneReport rep;
    if (cfg.decoder == "bf") {
        BfConfig bf;
        bf.max_iterations = cfg.iterations;
        bf.tie_policy = cfg.tie_policy;
        Rng rng(cfg.seed);
        rep.outcome = bf_decode(input, bf, &rng, &rep.frames);
    } else if (cfg.decoder == "bp") {
        PECode code = PECode::build(input.dim());
        BpConfig bp;
        bp.iterations = cfg.iterations;
        bp.prior_epsilon = cfg.bp_prior;
        rep.outcome = bp_decode(code, input, bp, &rep.frames);
    } else if (cfg.decoder == "mwd") {
        rep.outcome = mwd_decode(input);
        rep.frames = {input, rep.outcome.final};
    } else {
        throw std::invalid_argument("decode-one: unknown decoder '" + cfg.decoder + "'");
    }
    if (truth) rep.distance_to_truth = hamming_distance(rep.outcome.final, *truth);
    return rep;
}

inline void write_decode_frames_csv(std::ostream& os, const DecodeOneReport& rep) {
    os << "# slhz decode-one frames\n";
    os << "# status: " << to_string(rep.outcome.status) << '\n';
    os << "# iterations_used: " << rep.outcome.iterations_used << '\n';
    for (size_t f = 0; f < rep.frames.size(); ++f) {
        os << "# frame: " << f << '\n';
        write_spin_matrix_csv(os, rep.frames[f]);
    }
}

// -------------------------------------------------------------- sampler check

struct SamplerValidateConfig {
    long long samples = 1000000;
    int burn_in_sweeps = 200;
    uint64_t seed = 1;
    uint64_t instance_seed = 4;
    std::vector<std::pair<double, double>> points{{0.5, 0.5}, {1.0, 1.0}, {2.0, 0.75}};
    int threads = 0;
};

struct SamplerValidateRow {
    double beta = 0.0, gamma = 0.0;
    Kernel kernel = Kernel::metropolis;
    double tv = 0.0;
    long long samples = 0;
};

// Total-variation distance between a K=4 chain histogram (holding-time
// weighted for the rejection-free kernel) and the exact Boltzmann table.
inline std::vector<SamplerValidateRow> run_sampler_validate(const SamplerValidateConfig& cfg) {
    auto code = std::make_shared<PECode>(PECode::build(4));
    Instance inst = gen_instance(4, 0.25, cfg.instance_seed, true);

    const int n_rows = static_cast<int>(cfg.points.size()) * 2;
    std::vector<SamplerValidateRow> rows(n_rows);
    parallel_for(n_rows, cfg.threads, [&](long long row) {
        const auto [beta, gamma] = cfg.points[row / 2];
        const Kernel kernel = row % 2 == 0 ? Kernel::metropolis : Kernel::rejection_free;
        SlhzHamiltonian h;
        h.code = code;
        h.instance = inst;
        h.beta = beta;
        h.gamma = gamma;
        h.penalty_weight = 4;

        auto exact = exact_boltzmann(4, [&](const SpinMatrix& x) { return energy(h, x); });
        std::vector<double> mass(64, 0.0);
        double total = 0.0;
        McmcConfig mc;
        mc.kernel = kernel;
        mc.sweeps = static_cast<int>(cfg.samples / pair_count(4));
        mc.burn_in_sweeps = cfg.burn_in_sweeps;
        mc.seed = mix_seed(mix_seed(cfg.seed, 0x7376ull), static_cast<uint64_t>(row));
        ChainResult res = run_chain_observed(h, mc, [&](const SpinMatrix& x, double w) {
            double weight = kernel == Kernel::rejection_free ? w : 1.0;
            mass[state_bits(x)] += weight;
            total += weight;
        });
        double tv = 0.0;
        for (int s = 0; s < 64; ++s) tv += std::abs(mass[s] / total - exact[s]);
        rows[row] = {beta, gamma, kernel, 0.5 * tv, res.recorded};
    });
    return rows;
}

inline void write_sampler_validate_csv(std::ostream& os, const SamplerValidateConfig& cfg,
                                       const std::vector<SamplerValidateRow>& rows) {
    os << "# slhz sampler-validate\n";
    os << "# seed: " << cfg.seed << '\n';
    os << "# samples: " << cfg.samples << '\n';
    os << "beta,gamma,kernel,tv_distance,samples\n";
    for (const SamplerValidateRow& r : rows)
        os << detail::fmt_prob(r.beta) << ',' << detail::fmt_prob(r.gamma) << ','
           << (r.kernel == Kernel::metropolis ? "metropolis" : "rejection_free") << ','
           << detail::fmt_prob(r.tv) << ',' << r.samples << '\n';
}

}  // namespace slhz
