// Command-line driver for the parity-encoded (SLHZ) spin system toolkit.

#include <CLI11.hpp>

#include <slhz/harness.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

namespace fs = std::filesystem;
using namespace slhz;

namespace {

std::ofstream open_out(const fs::path& dir, const std::string& name) {
    fs::create_directories(dir);
    std::ofstream os(dir / name);
    if (!os) throw parse_error("cannot open output file " + (dir / name).string());
    return os;
}

TiePolicy tie_policy_from(const std::string& name) {
    if (name == "fail") return TiePolicy::fail;
    if (name == "coin_flip") return TiePolicy::coin_flip;
    if (name == "keep") return TiePolicy::keep;
    throw std::invalid_argument("unknown tie policy '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parity-encoding (SLHZ) codes: bit-flip/BP/MWD decoders and MCMC sampling"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from an INI/TOML file (flags override it)");

    std::function<void()> run;

    // ---- gen-instances
    auto* gen = app.add_subcommand("gen-instances", "generate seeded random instances with ground truths");
    {
        static std::string out = "out/instances";
        static int k = 14, count = 12;
        static double bound = 0.25;
        static uint64_t seed = 1;
        static bool no_truth = false;
        gen->add_option("--out", out, "output directory");
        gen->add_option("--k", k, "logical spin count");
        gen->add_option("--count", count, "number of instances");
        gen->add_option("--bound", bound, "coupling bound");
        gen->add_option("--seed", seed, "master seed");
        gen->add_flag("--no-ground-truth", no_truth, "skip the brute-force ground state");
        gen->callback([&] {
            run = [&] {
                fs::create_directories(out);
                for (int i = 0; i < count; ++i) {
                    Instance inst = no_truth ? gen_instance(k, bound, mix_seed(seed, 0x62756e646cull + i), false)
                                             : bundle_instance(k, bound, seed, i);
                    char name[32];
                    std::snprintf(name, sizeof name, "instance_%02d.txt", i);
                    std::ofstream os(fs::path(out) / name);
                    write_instance(os, inst);
                }
                std::cerr << "wrote " << count << " instances to " << out << "\n";
            };
        });
    }

    // ---- iid-bench
    auto* bench = app.add_subcommand("iid-bench", "decoder benchmark under i.i.d. spin-flip noise");
    {
        static std::string out = "out";
        static IidBenchConfig cfg;
        static std::vector<std::string> decoders = {"bf", "bp", "mcmc"};
        static std::string tie = "fail";
        bench->add_option("--out", out, "output directory");
        bench->add_option("--sizes", cfg.sizes, "logical sizes K")->delimiter(',');
        bench->add_option("--epsilons", cfg.epsilons, "flip probabilities")->delimiter(',');
        bench->add_option("--decoders", decoders, "subset of bf,bp,mcmc")->delimiter(',');
        bench->add_option("--trials", cfg.trials, "error realizations per point");
        bench->add_option("--iterations", cfg.iterations, "BF/BP iterations");
        bench->add_option("--bp-prior", cfg.bp_prior, "BP prior epsilon (<=0: use channel epsilon)");
        bench->add_option("--mcmc-gamma", cfg.mcmc_gamma, "penalty strength for MCMC decoding");
        bench->add_option("--mcmc-sweeps", cfg.mcmc_sweeps, "MCMC budget in sweeps of C(K,2) states");
        bench->add_option("--tie-policy", tie, "fail | coin_flip | keep");
        bench->add_option("--seed", cfg.seed, "master seed");
        bench->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
        bench->callback([&] {
            run = [&] {
                cfg.tie_policy = tie_policy_from(tie);
                cfg.decoders.clear();
                for (const std::string& d : decoders) {
                    if (d == "bf")
                        cfg.decoders.push_back(IidDecoder::bf);
                    else if (d == "bp")
                        cfg.decoders.push_back(IidDecoder::bp);
                    else if (d == "mcmc")
                        cfg.decoders.push_back(IidDecoder::mcmc);
                    else
                        throw std::invalid_argument("unknown decoder '" + d + "'");
                }
                auto records = run_iid_bench(cfg);
                auto os = open_out(out, "iid_bench.csv");
                write_iid_bench_csv(os, cfg, records);
                for (const BenchRecord& r : records)
                    std::cerr << "k=" << r.k << " eps=" << r.epsilon << " " << to_string(r.decoder)
                              << " failure=" << r.failure_probability() << " (" << r.seconds << " s)\n";
            };
        });
    }

    // ---- hybrid-landscape
    auto* land = app.add_subcommand("hybrid-landscape",
                                    "success-probability landscapes of raw MCMC vs hybrid decoding");
    {
        static std::string out = "out";
        static std::string instances_dir = "out/instances";
        static LandscapeConfig cfg;
        static int k = 14, count = 12;
        static double bound = 0.25;
        static uint64_t bundle_seed = 1;
        land->add_option("--out", out, "output directory");
        land->add_option("--instances", instances_dir, "instance bundle directory (created if missing)");
        land->add_option("--k", k, "bundle logical size");
        land->add_option("--count", count, "bundle size");
        land->add_option("--bound", bound, "bundle coupling bound");
        land->add_option("--bundle-seed", bundle_seed, "bundle master seed");
        land->add_option("--betas", cfg.betas, "correlation strengths")->delimiter(',');
        land->add_option("--gammas", cfg.gammas, "penalty strengths")->delimiter(',');
        land->add_option("--chains", cfg.chains, "chains per grid point");
        land->add_option("--raw-sweeps", cfg.raw_sweeps, "raw budget in sweeps");
        land->add_option("--hybrid-sweeps", cfg.hybrid_sweeps, "hybrid budget in sweeps");
        land->add_option("--hybrid-burn-in", cfg.hybrid_burn_in, "hybrid burn-in sweeps");
        land->add_option("--bf-iterations", cfg.bf_iterations, "BF iterations in the second stage");
        land->add_option("--seed", cfg.seed, "master seed");
        land->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
        land->callback([&] {
            run = [&] {
                if (cfg.betas.empty()) cfg.betas = default_landscape_betas();
                if (cfg.gammas.empty()) cfg.gammas = default_landscape_gammas();
                auto instances = ensure_instance_bundle(instances_dir, k, count, bound, bundle_seed);
                auto landscapes = run_hybrid_landscape(instances, cfg);
                for (const InstanceLandscape& ls : landscapes) {
                    char name[48];
                    std::snprintf(name, sizeof name, "landscape_instance_%02d.csv", ls.instance_id);
                    auto os = open_out(out, name);
                    write_landscape_csv(os, ls.instance_id, k, cfg, ls);
                }
                auto os = open_out(out, "landscape_summary.csv");
                write_landscape_summary_csv(os, landscapes);
                for (const InstanceLandscape& ls : landscapes) {
                    const auto& a = ls.points[ls.best_raw];
                    const auto& b = ls.points[ls.best_hybrid];
                    std::cerr << "instance " << ls.instance_id << ": A=(beta " << a.beta << ", gamma "
                              << a.gamma << ", p " << a.p_exact_raw << ")  B=(beta " << b.beta
                              << ", gamma " << b.gamma << ", p " << b.p_exact_decoded << ")\n";
                }
            };
        });
    }

    // ---- error-matrix
    auto* em = app.add_subcommand("error-matrix", "averaged error matrices at two annealing parameter sets");
    {
        static std::string out = "out";
        static std::string instance_file;
        static ErrorMatrixConfig cfg;
        static double beta_a = 3.0, gamma_a = 4.0, beta_b = 14.0, gamma_b = 0.25;
        em->add_option("--out", out, "output directory");
        em->add_option("--instance", instance_file, "instance file")->required();
        em->add_option("--beta-a", beta_a, "set A correlation strength");
        em->add_option("--gamma-a", gamma_a, "set A penalty strength");
        em->add_option("--beta-b", beta_b, "set B correlation strength");
        em->add_option("--gamma-b", gamma_b, "set B penalty strength");
        em->add_option("--chains", cfg.chains, "chains per set");
        em->add_option("--sweeps", cfg.sweeps, "sweeps per chain");
        em->add_option("--seed", cfg.seed, "master seed");
        em->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
        em->callback([&] {
            run = [&] {
                std::ifstream in(instance_file);
                if (!in) throw parse_error("cannot open instance file " + instance_file);
                Instance inst = read_instance(in);
                auto grid_a = run_error_matrix(inst, beta_a, gamma_a, cfg);
                auto grid_b = run_error_matrix(inst, beta_b, gamma_b, cfg);
                auto osa = open_out(out, "error_matrix_a.csv");
                osa << "# slhz error-matrix\n# beta: " << beta_a << "\n# gamma: " << gamma_a << '\n';
                write_matrix_grid_csv(osa, inst.k, grid_a);
                auto osb = open_out(out, "error_matrix_b.csv");
                osb << "# slhz error-matrix\n# beta: " << beta_b << "\n# gamma: " << gamma_b << '\n';
                write_matrix_grid_csv(osb, inst.k, grid_b);
            };
        });
    }

    // ---- decode-one
    auto* one = app.add_subcommand("decode-one", "decode a single state file and dump iteration frames");
    {
        static std::string out = "out";
        static std::string input, truth_file;
        static DecodeOneConfig cfg;
        static std::string tie = "fail";
        one->add_option("--input", input, "spin matrix CSV")->required();
        one->add_option("--truth", truth_file, "optional ground-truth spin matrix CSV");
        one->add_option("--out", out, "output directory");
        one->add_option("--decoder", cfg.decoder, "bf | bp | mwd");
        one->add_option("--iterations", cfg.iterations, "decoder iterations");
        one->add_option("--bp-prior", cfg.bp_prior, "BP prior epsilon");
        one->add_option("--tie-policy", tie, "fail | coin_flip | keep");
        one->add_option("--seed", cfg.seed, "seed for coin-flip ties");
        one->callback([&] {
            run = [&] {
                cfg.tie_policy = tie_policy_from(tie);
                std::ifstream in(input);
                if (!in) throw parse_error("cannot open input file " + input);
                SpinMatrix x = read_spin_matrix_csv(in);
                std::optional<SpinMatrix> truth;
                if (!truth_file.empty()) {
                    std::ifstream tin(truth_file);
                    if (!tin) throw parse_error("cannot open truth file " + truth_file);
                    truth = read_spin_matrix_csv(tin);
                }
                DecodeOneReport rep = decode_one(x, cfg, truth);
                auto frames = open_out(out, "decode_frames.csv");
                write_decode_frames_csv(frames, rep);
                auto outcome = open_out(out, "decode_outcome.csv");
                outcome << "status,iterations_used,flips_per_iteration,distance_to_truth\n";
                write_outcome_csv_row(outcome, rep.outcome, rep.distance_to_truth);
                std::cerr << "status=" << to_string(rep.outcome.status)
                          << " iterations=" << rep.outcome.iterations_used << "\n";
            };
        });
    }

    // ---- sampler-validate
    auto* sv = app.add_subcommand("sampler-validate", "K=4 chain distribution vs the exact Boltzmann table");
    {
        static std::string out = "out";
        static SamplerValidateConfig cfg;
        static std::vector<std::string> points;
        sv->add_option("--out", out, "output directory");
        sv->add_option("--samples", cfg.samples, "recorded samples per chain");
        sv->add_option("--burn-in", cfg.burn_in_sweeps, "burn-in sweeps");
        sv->add_option("--seed", cfg.seed, "master seed");
        sv->add_option("--instance-seed", cfg.instance_seed, "seed of the K=4 instance");
        sv->add_option("--points", points, "beta:gamma pairs, e.g. 0.5:0.5,1:1")->delimiter(',');
        sv->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
        sv->callback([&] {
            run = [&] {
                if (!points.empty()) {
                    cfg.points.clear();
                    for (const std::string& p : points) {
                        auto colon = p.find(':');
                        if (colon == std::string::npos)
                            throw std::invalid_argument("point '" + p + "' is not beta:gamma");
                        cfg.points.emplace_back(std::stod(p.substr(0, colon)), std::stod(p.substr(colon + 1)));
                    }
                }
                auto rows = run_sampler_validate(cfg);
                auto os = open_out(out, "sampler_validate.csv");
                write_sampler_validate_csv(os, cfg, rows);
                for (const auto& r : rows)
                    std::cerr << "beta=" << r.beta << " gamma=" << r.gamma << " "
                              << (r.kernel == Kernel::metropolis ? "metropolis" : "rejection_free")
                              << " tv=" << r.tv << "\n";
            };
        });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        run();
    } catch (const capacity_error& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
