#include <catch2/catch_amalgamated.hpp>

#include <slhz/channels.hpp>
#include <slhz/decoders.hpp>
#include <slhz/oracle.hpp>

#include <cmath>

using namespace slhz;

TEST_CASE("ferromagnetic couplings minimize at the aligned state") {
    for (int k : {4, 9, 14}) {
        std::vector<double> j(pair_count(k), 0.5);
        ExactSolution sol = brute_force_ground_state(k, j);
        CHECK(sol.minimizer == LogicalState(k, 1));
        CHECK(sol.min_energy == Catch::Approx(-0.5 * pair_count(k)));
        CHECK_FALSE(sol.degenerate);
    }
}

TEST_CASE("half-space scan agrees with the full 2^K enumeration") {
    Rng rng(31);
    for (int k : {4, 8, 12}) {
        std::vector<double> j(pair_count(k));
        for (double& v : j) v = rng.uniform(-0.25, 0.25);
        ExactSolution sol = brute_force_ground_state(k, j);

        double best = 1e300;
        LogicalState z(k);
        for (uint64_t bits = 0; bits < (1ull << k); ++bits) {
            for (int i = 0; i < k; ++i) z[i] = (bits >> i & 1) ? int8_t{-1} : int8_t{1};
            best = std::min(best, source_energy(k, j, z));
        }
        CHECK(sol.min_energy == best);
        CHECK(source_energy(k, j, sol.minimizer) == sol.min_energy);
    }
}

TEST_CASE("degeneracy is flagged and minimizers collected") {
    // J with only one nonzero coupling: spins outside the pair are free
    std::vector<double> j(pair_count(4), 0.0);
    j[pair_rank(4, 0, 1)] = 1.0;
    ExactSolution sol = brute_force_ground_state(4, j, true);
    CHECK(sol.degenerate);
    CHECK(sol.minimizer_count == 4);  // Z_2, Z_3 free with Z_0 = +1, Z_1 = +1
    CHECK(sol.all_minimizers.size() == 4);
    for (const auto& z : sol.all_minimizers) CHECK(source_energy(4, j, z) == sol.min_energy);
}

TEST_CASE("range-parallel scan matches the sequential one") {
    Rng rng(51);
    std::vector<double> j(pair_count(17));
    for (double& v : j) v = rng.uniform(-0.25, 0.25);
    ExactSolution seq = brute_force_ground_state(17, j, false, 1);
    ExactSolution par = brute_force_ground_state(17, j, false, 2);
    CHECK(par.min_energy == seq.min_energy);
    CHECK(par.minimizer == seq.minimizer);
    CHECK(par.minimizer_count == seq.minimizer_count);

    // degenerate couplings: counts and collected minimizers agree too
    std::vector<double> sparse(pair_count(17), 0.0);
    sparse[pair_rank(17, 0, 1)] = 1.0;
    ExactSolution dseq = brute_force_ground_state(17, sparse, true, 1);
    ExactSolution dpar = brute_force_ground_state(17, sparse, true, 2);
    CHECK(dseq.degenerate);
    CHECK(dpar.minimizer_count == dseq.minimizer_count);
    CHECK(dpar.minimizer == dseq.minimizer);
    CHECK(dpar.all_minimizers == dseq.all_minimizers);
}

TEST_CASE("capacity cap enforced") {
    std::vector<double> j(pair_count(29), 0.1);
    CHECK_THROWS_AS(brute_force_ground_state(29, j), capacity_error);
}

TEST_CASE("exact Boltzmann: uniform at zero couplings and zero penalty") {
    auto table = exact_boltzmann(4, [](const SpinMatrix&) { return 0.0; });
    REQUIRE(table.size() == 64);
    double total = 0.0;
    for (double p : table) {
        CHECK(p == Catch::Approx(1.0 / 64));
        total += p;
    }
    CHECK(total == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exact Boltzmann: strong penalty concentrates on the 8 code-states") {
    auto energy = [](const SpinMatrix& x) { return is_code_state(x) ? 0.0 : 50.0; };
    auto table = exact_boltzmann(4, energy);
    double mass = 0.0;
    int heavy = 0;
    for (int bits = 0; bits < 64; ++bits) {
        if (table[bits] > 1e-6) {
            ++heavy;
            mass += table[bits];
            CHECK(table[bits] == Catch::Approx(0.125));
        }
    }
    CHECK(heavy == 8);
    CHECK(mass == Catch::Approx(1.0));
}

TEST_CASE("exact Boltzmann: only K=4 supported") {
    CHECK_THROWS_AS(exact_boltzmann(5, [](const SpinMatrix&) { return 0.0; }), capacity_error);
}

TEST_CASE("state_bits indexes the canonical pair order") {
    SpinMatrix x(4);
    x.flip(0, 1);
    x.flip(2, 3);
    CHECK(state_bits(x) == ((1 << 0) | (1 << 5)));
}

TEST_CASE("exact marginals: code-state input") {
    LogicalState z = {1, -1, 1, -1};
    SpinMatrix zc = encode(z);
    auto llrs = exact_marginals(zc, 0.1);
    int t = 0;
    double mag = std::abs(llrs[0]);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j, ++t) {
            CHECK((llrs[t] > 0) == (zc.at(i, j) > 0));
            CHECK(std::abs(llrs[t]) == Catch::Approx(mag));
        }
}

TEST_CASE("exact marginals: uninformative channel sends the LLRs to zero") {
    SpinMatrix r(4);
    r.flip(1, 2);
    r.flip(0, 3);
    for (double llr : exact_marginals(r, 0.4999)) CHECK(std::abs(llr) < 1e-2);
}

TEST_CASE("exact marginals: single-flip argmax agrees with minimum-weight decoding") {
    for (unsigned zbits = 0; zbits < 8; ++zbits) {
        LogicalState z(4, 1);
        for (int i = 1; i < 4; ++i) z[i] = (zbits >> (i - 1) & 1) ? int8_t{-1} : int8_t{1};
        SpinMatrix zc = encode(z);
        for (int flip = 0; flip < 6; ++flip) {
            SpinMatrix r = zc;
            auto [i, j] = pair_unrank(4, flip);
            r.flip(i, j);
            auto llrs = exact_marginals(r, 0.1);
            SpinMatrix mwd = mwd_decode(r).final;
            int t = 0;
            for (int a = 0; a < 4; ++a)
                for (int b = a + 1; b < 4; ++b, ++t)
                    CHECK((llrs[t] < 0 ? -1 : 1) == mwd.at(a, b));
        }
    }
}
