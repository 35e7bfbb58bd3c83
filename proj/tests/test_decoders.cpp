#include <catch2/catch_amalgamated.hpp>

#include <slhz/decoders.hpp>
#include <slhz/oracle.hpp>

using namespace slhz;

namespace {

SpinMatrix random_state(int k, Rng& rng) {
    SpinMatrix x(k);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) x.set(i, j, rng.pm_one());
    return x;
}

SpinMatrix state_from_bits(int k, unsigned bits) {
    SpinMatrix x(k);
    int t = 0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j, ++t)
            if (bits >> t & 1) x.set(i, j, -1);
    return x;
}

LogicalState random_logical(int k, Rng& rng) {
    LogicalState z(k);
    for (auto& s : z) s = rng.pm_one();
    return z;
}

SpinMatrix hadamard(const SpinMatrix& a, const SpinMatrix& b) {
    SpinMatrix out(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i + 1; j < a.dim(); ++j) out.set(i, j, static_cast<int8_t>(a.at(i, j) * b.at(i, j)));
    return out;
}

// reference per-pair update: sign(x_ij + sum_{k != i,j} x_jk x_ki)
SpinMatrix bf_step_reference(const SpinMatrix& x) {
    const int k = x.dim();
    SpinMatrix next(k);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            int arg = x.at(i, j);
            for (int t = 0; t < k; ++t)
                if (t != i && t != j) arg += x.at(j, t) * x.at(t, i);
            next.set(i, j, arg > 0 ? int8_t{1} : (arg < 0 ? int8_t{-1} : x.at(i, j)));
        }
    return next;
}

}  // namespace

TEST_CASE("inversion_bf on a code-state equals K-1") {
    Rng rng(3);
    for (int k : {4, 7, 12}) {
        SpinMatrix z = encode(random_logical(k, rng));
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) CHECK(inversion_bf(z, i, j) == k - 1);
    }
}

TEST_CASE("inversion_bf hand-enumerated K=4 values") {
    SpinMatrix x = SpinMatrix::all_one(4);
    x.flip(0, 1);
    CHECK(inversion_bf(x, 0, 1) == -1);  // 1 + (-1) + (-1)
    CHECK(inversion_bf(x, 0, 2) == 1);   // 1 + (-1) + (+1)
}

TEST_CASE("bf_step fixes code-states") {
    Rng rng(5);
    for (int k : {4, 5, 9}) {
        SpinMatrix z = encode(random_logical(k, rng));
        BfStep step = bf_step(z);
        CHECK(step.next == z);
        CHECK(step.flips == 0);
        CHECK(step.ties == 0);
    }
}

TEST_CASE("bf_step corrects a single flip in one round") {
    SpinMatrix x = SpinMatrix::all_one(4);
    x.flip(0, 1);
    CHECK(bf_step(x).next == SpinMatrix::all_one(4));
}

TEST_CASE("matrix form of bf_step equals the per-pair summation form") {
    for (unsigned bits = 0; bits < 64; ++bits) {
        SpinMatrix x = state_from_bits(4, bits);
        CHECK(bf_step(x).next == bf_step_reference(x));
    }
    Rng rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        int k = 5 + static_cast<int>(rng.below(8));
        SpinMatrix x = random_state(k, rng);
        CHECK(bf_step(x).next == bf_step_reference(x));
    }
}

TEST_CASE("bf_step gauge covariance") {
    Rng rng(11);
    for (unsigned bits = 0; bits < 64; ++bits) {
        SpinMatrix e = state_from_bits(4, bits);
        SpinMatrix z = encode(random_logical(4, rng));
        CHECK(bf_step(hadamard(z, e)).next == hadamard(z, bf_step(e).next));
    }
    for (int trial = 0; trial < 1000; ++trial) {
        int k = 5 + static_cast<int>(rng.below(6));
        SpinMatrix z = encode(random_logical(k, rng));
        SpinMatrix e = random_state(k, rng);
        CHECK(bf_step(hadamard(z, e)).next == hadamard(z, bf_step(e).next));
    }
}

TEST_CASE("bf_decode returns immediately on a code-state") {
    SpinMatrix z = encode(LogicalState{1, -1, -1, 1, 1});
    DecodeOutcome out = bf_decode(z, BfConfig{});
    CHECK(out.status == DecodeStatus::converged_code_state);
    CHECK(out.iterations_used == 0);
    CHECK(out.final == z);
}

TEST_CASE("bf_decode corrects sparse iid errors") {
    Rng rng(13);
    BfConfig cfg;
    int successes = 0;
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
        SpinMatrix e = sample_iid_error(20, IidNoise{0.2}, rng);
        DecodeOutcome out = bf_decode(e, cfg);
        if (out.status == DecodeStatus::converged_code_state && out.final == SpinMatrix::all_one(20)) ++successes;
    }
    CHECK(successes > trials / 2);
}

TEST_CASE("ties: detected for odd K and resolved per policy") {
    // pair (0,1) sees votes -1, -1, +1, so 1 + sum = 0
    SpinMatrix x = SpinMatrix::all_one(5);
    x.flip(0, 2);
    x.flip(0, 3);
    REQUIRE(inversion_bf(x, 0, 1) == 0);

    BfStep keep = bf_step(x, TiePolicy::keep);
    CHECK(keep.ties > 0);
    CHECK(keep.next.at(0, 1) == x.at(0, 1));

    BfConfig fail_cfg;
    fail_cfg.tie_policy = TiePolicy::fail;
    DecodeOutcome out = bf_decode(x, fail_cfg);
    CHECK(out.status == DecodeStatus::tie);
    CHECK(out.ties > 0);

    Rng rng(17);
    BfConfig coin_cfg;
    coin_cfg.tie_policy = TiePolicy::coin_flip;
    DecodeOutcome coin = bf_decode(x, coin_cfg, &rng);
    CHECK(coin.status != DecodeStatus::tie);
    CHECK(coin.ties > 0);
}

TEST_CASE("even K never ties") {
    Rng rng(19);
    for (int trial = 0; trial < 300; ++trial) {
        int k = 2 * (2 + static_cast<int>(rng.below(5)));
        SpinMatrix x = random_state(k, rng);
        CHECK(bf_step(x).ties == 0);
    }
}

TEST_CASE("energy of the all-one state") {
    for (int k : {4, 6, 9}) {
        CodeParams p = CodeParams::for_size(k);
        CHECK(energy_bf(SpinMatrix::all_one(k)) == Catch::Approx(-(p.n_v + p.n_c3)));
    }
}

TEST_CASE("gdbf energy with zero couplings is minus the syndrome sum") {
    Rng rng(23);
    std::vector<double> zero(pair_count(7), 0.0);
    for (int trial = 0; trial < 20; ++trial) {
        SpinMatrix x = random_state(7, rng);
        CHECK(energy_gdbf(x, zero) == Catch::Approx(-static_cast<double>(syndrome3_total(x))));
    }
}

TEST_CASE("flip gain identity: Delta H = 2 Delta") {
    Rng rng(29);
    PECode code6 = PECode::build(6);
    std::vector<double> couplings(pair_count(6));
    for (double& j : couplings) j = rng.uniform(-1.0, 1.0);

    const double gamma0 = 0.2;
    double p = 0.5 * (1.0 - (1.0 - 2.0 * gamma0) * (1.0 - 2.0 * gamma0));
    double w = std::log((1.0 - p) / p);
    std::vector<double> check_w(code6.params.n_c3, w);
    std::vector<double> gammas(pair_count(6), gamma0);
    const double beta = 0.7;

    for (int trial = 0; trial < 1000; ++trial) {
        SpinMatrix x = random_state(6, rng);
        int i = static_cast<int>(rng.below(6));
        int j = static_cast<int>(rng.below(6));
        while (j == i) j = static_cast<int>(rng.below(6));
        if (j < i) std::swap(i, j);

        // gradient-descent form: exact at any state
        {
            double before = energy_gdbf(x, couplings);
            double delta = inversion_gdbf(x, i, j, couplings);
            SpinMatrix y = x;
            y.flip(i, j);
            CHECK(energy_gdbf(y, couplings) - before == Catch::Approx(2.0 * delta).margin(1e-9));
        }

        // majority-vote and weighted forms measure the gain of flipping a
        // spin out of agreement with its prior vote, so take x_ij = +1
        SpinMatrix base = x;
        if (base.at(i, j) == -1) base.flip(i, j);
        SpinMatrix flipped = base;
        flipped.flip(i, j);
        {
            double delta = inversion_bf(base, i, j);
            CHECK(energy_bf(flipped) - energy_bf(base) == Catch::Approx(2.0 * delta).margin(1e-9));
        }
        {
            CrosstalkParams ct = crosstalk(6, gammas, i, j);
            double delta = inversion_wbf(base, i, j, couplings, beta, ct);
            double dh = energy_wbf(code6, flipped, couplings, beta, check_w) -
                        energy_wbf(code6, base, couplings, beta, check_w);
            CHECK(dh == Catch::Approx(2.0 * delta).margin(1e-9));
        }
    }
}

TEST_CASE("inversion_wbf reduces to inversion_bf under unit weights") {
    Rng rng(31);
    std::vector<double> unit(pair_count(5), 1.0);
    CrosstalkParams mv = CrosstalkParams::majority_vote(5, 0, 0);
    for (int trial = 0; trial < 50; ++trial) {
        SpinMatrix x = random_state(5, rng);
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j) {
                mv.i = i;
                mv.j = j;
                CHECK(inversion_wbf(x, i, j, unit, 1.0, mv) ==
                      Catch::Approx(static_cast<double>(inversion_bf(x, i, j))));
            }
    }
}

TEST_CASE("inversion_wbf is strictly positive on code-states") {
    Rng rng(37);
    std::vector<double> gammas(pair_count(6), 0.15);
    std::vector<double> couplings(pair_count(6), 0.0);
    SpinMatrix z = encode(random_logical(6, rng));
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) {
            CrosstalkParams ct = crosstalk(6, gammas, i, j);
            CHECK(inversion_wbf(z, i, j, couplings, 0.0, ct) > 0.0);
        }
}

TEST_CASE("inversion_gdbf with zero couplings is the bare syndrome vote") {
    Rng rng(41);
    std::vector<double> zero(pair_count(6), 0.0);
    for (int trial = 0; trial < 50; ++trial) {
        SpinMatrix x = random_state(6, rng);
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j)
                CHECK(inversion_gdbf(x, i, j, zero) == Catch::Approx(inversion_bf(x, i, j) - 1.0));
    }
}

TEST_CASE("mwd fixes code-states") {
    Rng rng(43);
    for (int k : {4, 6, 8}) {
        SpinMatrix z = encode(random_logical(k, rng));
        DecodeOutcome out = mwd_decode(z);
        CHECK(out.final == z);
        CHECK(out.status == DecodeStatus::converged_code_state);
    }
}

TEST_CASE("mwd recovers a single flip at K=6") {
    Rng rng(47);
    for (int trial = 0; trial < 20; ++trial) {
        SpinMatrix z = encode(random_logical(6, rng));
        SpinMatrix r = z;
        int i = static_cast<int>(rng.below(6));
        int j = static_cast<int>(rng.below(6));
        while (j == i) j = static_cast<int>(rng.below(6));
        r.flip(std::min(i, j), std::max(i, j));
        DecodeOutcome out = mwd_decode(r);
        CHECK(out.final == z);
    }
}

TEST_CASE("mwd output is a coset leader (exhaustive K=5 and K=6)") {
    Rng rng(53);
    for (int k : {5, 6}) {
        PECode code = PECode::build(k);
        const int n_v = pair_count(k);
        for (int trial = 0; trial < 5; ++trial) {
            SpinMatrix r = random_state(k, rng);
            auto target = syndrome4(code, r);

            DecodeOutcome out = mwd_decode(r);
            SpinMatrix e_star = hadamard(r, out.final);
            CHECK(syndrome4(code, e_star) == target);
            int star_weight = hamming_distance(e_star, SpinMatrix::all_one(k));

            int min_weight = n_v + 1;
            for (unsigned bits = 0; bits < (1u << n_v); ++bits) {
                SpinMatrix e = state_from_bits(k, bits);
                if (syndrome4(code, e) != target) continue;
                min_weight = std::min(min_weight, static_cast<int>(__builtin_popcount(bits)));
            }
            CHECK(star_weight == min_weight);
        }
    }
}

TEST_CASE("mwd syndrome match property") {
    Rng rng(59);
    PECode code = PECode::build(7);
    for (int trial = 0; trial < 30; ++trial) {
        SpinMatrix r = random_state(7, rng);
        DecodeOutcome out = mwd_decode(r);
        // e* = r o z* has the syndrome of r; equivalently r o e* is a code-state
        CHECK(is_code_state(out.final));
        CHECK(syndrome4(code, hadamard(r, out.final)) == syndrome4(code, r));
    }
}

TEST_CASE("mwd respects the brute-force cap") {
    CHECK_THROWS_AS(mwd_decode(SpinMatrix::all_one(29)), capacity_error);
}

TEST_CASE("greedy descent loops reach fixed points or code-states") {
    Rng rng(61);
    std::vector<double> couplings(pair_count(8));
    for (double& j : couplings) j = rng.uniform(-0.25, 0.25);
    for (int trial = 0; trial < 10; ++trial) {
        SpinMatrix e = sample_iid_error(8, IidNoise{0.1}, rng);
        DecodeOutcome g = gdbf_decode(e, couplings, 100);
        CHECK(g.status != DecodeStatus::max_iter_reached);
        DecodeOutcome w = wbf_decode(e, couplings, 0.1, 0.1, 100);
        CHECK(w.status != DecodeStatus::max_iter_reached);
    }
    SpinMatrix z = encode(random_logical(8, rng));
    CHECK(gdbf_decode(z, couplings, 10).final == z);
    CHECK(wbf_decode(z, couplings, 1.0, 0.2, 10).final == z);
}
