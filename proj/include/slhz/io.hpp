#pragma once

#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "channels.hpp"
#include "code.hpp"
#include "decoders.hpp"

namespace slhz {

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt_prob(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace detail

// Plain-text dump, one row of 0/1 digits per line, for cross-implementation
// comparison of generator/check matrices.
inline void dump_bit_matrix(std::ostream& os, const BitMatrix& m) {
    for (int r = 0; r < m.rows(); ++r) os << m.row_string(r) << '\n';
}

inline void write_spin_matrix_csv(std::ostream& os, const SpinMatrix& x) {
    for (int i = 0; i < x.dim(); ++i) {
        for (int j = 0; j < x.dim(); ++j) {
            if (j) os << ',';
            os << static_cast<int>(x.at(i, j));
        }
        os << '\n';
    }
}

inline SpinMatrix read_spin_matrix_csv(std::istream& is) {
    std::vector<std::vector<int>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::vector<int> row;
        std::stringstream ss(line);
        std::string cell;
        int col = 0;
        while (std::getline(ss, cell, ',')) {
            ++col;
            try {
                size_t used = 0;
                int v = std::stoi(cell, &used);
                while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
                if (used != cell.size() || (v != 1 && v != -1)) throw std::invalid_argument("");
                row.push_back(v);
            } catch (...) {
                throw parse_error("spin matrix: row " + std::to_string(lineno) + ", column " +
                                  std::to_string(col) + ": expected +1 or -1, got '" + cell + "'");
            }
        }
        rows.push_back(std::move(row));
    }
    const int k = static_cast<int>(rows.size());
    if (k < 2) throw parse_error("spin matrix: expected at least 2 rows");
    SpinMatrix x(k);
    for (int i = 0; i < k; ++i) {
        if (static_cast<int>(rows[i].size()) != k)
            throw parse_error("spin matrix: row " + std::to_string(i + 1) + " has " +
                              std::to_string(rows[i].size()) + " columns, expected " + std::to_string(k));
        if (rows[i][i] != 1)
            throw parse_error("spin matrix: row " + std::to_string(i + 1) + ": diagonal entry must be +1");
        for (int j = i + 1; j < k; ++j) {
            if (rows[i][j] != rows[j][i])
                throw parse_error("spin matrix: entry (" + std::to_string(i + 1) + "," +
                                  std::to_string(j + 1) + ") is not symmetric");
            x.set(i, j, static_cast<int8_t>(rows[i][j]));
        }
    }
    return x;
}

inline void write_instance(std::ostream& os, const Instance& inst) {
    os << "# slhz instance\n";
    os << "k: " << inst.k << '\n';
    os << "seed: " << inst.seed << '\n';
    os << "coupling_bound: " << detail::fmt_full(inst.coupling_bound) << '\n';
    os << "couplings:";
    for (double j : inst.couplings) os << ' ' << detail::fmt_full(j);
    os << '\n';
    if (inst.ground_state) {
        os << "ground_state:";
        for (int8_t s : *inst.ground_state) os << ' ' << static_cast<int>(s);
        os << '\n';
        os << "ground_energy: " << detail::fmt_full(*inst.ground_energy) << '\n';
        os << "degenerate: " << (inst.degenerate ? 1 : 0) << '\n';
    }
}

inline Instance read_instance(std::istream& is) {
    Instance inst;
    std::string line;
    bool have_k = false, have_couplings = false;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw parse_error("instance: line " + std::to_string(lineno) + ": expected 'key: value'");
        std::string key = line.substr(0, colon);
        std::stringstream val(line.substr(colon + 1));
        try {
            if (key == "k") {
                val >> inst.k;
                have_k = true;
            } else if (key == "seed") {
                val >> inst.seed;
            } else if (key == "coupling_bound") {
                val >> inst.coupling_bound;
            } else if (key == "couplings") {
                double v;
                while (val >> v) inst.couplings.push_back(v);
                have_couplings = true;
            } else if (key == "ground_state") {
                LogicalState z;
                int s;
                while (val >> s) {
                    if (s != 1 && s != -1) throw parse_error("");
                    z.push_back(static_cast<int8_t>(s));
                }
                inst.ground_state = std::move(z);
            } else if (key == "ground_energy") {
                double e;
                val >> e;
                inst.ground_energy = e;
            } else if (key == "degenerate") {
                int d;
                val >> d;
                inst.degenerate = d != 0;
            } else {
                throw parse_error("");
            }
            if (val.fail() && key != "couplings" && key != "ground_state")
                throw parse_error("");
        } catch (...) {
            throw parse_error("instance: line " + std::to_string(lineno) + ": bad value for key '" + key + "'");
        }
    }
    if (!have_k || !have_couplings) throw parse_error("instance: missing k or couplings");
    if (static_cast<int>(inst.couplings.size()) != pair_count(inst.k))
        throw parse_error("instance: coupling count " + std::to_string(inst.couplings.size()) +
                          " != C(k,2) = " + std::to_string(pair_count(inst.k)));
    if (inst.ground_state && static_cast<int>(inst.ground_state->size()) != inst.k)
        throw parse_error("instance: ground state length != k");
    return inst;
}

inline void write_outcome_csv_row(std::ostream& os, const DecodeOutcome& out, int distance_to_truth) {
    os << to_string(out.status) << ',' << out.iterations_used << ',';
    for (size_t t = 0; t < out.flips_per_iteration.size(); ++t) {
        if (t) os << ';';
        os << out.flips_per_iteration[t];
    }
    os << ',';
    if (distance_to_truth >= 0) os << distance_to_truth;
    os << '\n';
}

}  // namespace slhz
