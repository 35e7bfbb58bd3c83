#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace slhz {

// Thrown when a request exceeds a hard size cap (e.g. brute-force limits).
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline int pair_count(int k) { return k * (k - 1) / 2; }

// Canonical pair order: (0,1),(0,2),...,(0,K-1),(1,2),... (i < j, lexicographic).
inline int pair_rank(int k, int i, int j) {
    return i * (2 * k - i - 1) / 2 + (j - i - 1);
}

inline std::pair<int, int> pair_unrank(int k, int t) {
    int i = 0;
    int row = k - 1;
    while (t >= row) {
        t -= row;
        --row;
        ++i;
    }
    return {i, i + 1 + t};
}

// K x K symmetric +-1 matrix with immutable unit diagonal. Houses physical
// spin states (code-states, readouts, error patterns alike).
class SpinMatrix {
public:
    SpinMatrix() : k_(0) {}
    explicit SpinMatrix(int k) : k_(k), m_(static_cast<size_t>(k) * k, int8_t{1}) {
        if (k < 1) throw std::invalid_argument("SpinMatrix: dimension must be >= 1");
    }

    static SpinMatrix all_one(int k) { return SpinMatrix(k); }

    int dim() const { return k_; }

    int8_t at(int i, int j) const { return m_[static_cast<size_t>(i) * k_ + j]; }

    void set(int i, int j, int8_t v) {
        if (i == j) throw std::invalid_argument("SpinMatrix: diagonal is fixed at +1");
        if (v != 1 && v != -1) throw std::invalid_argument("SpinMatrix: entries must be +-1");
        m_[static_cast<size_t>(i) * k_ + j] = v;
        m_[static_cast<size_t>(j) * k_ + i] = v;
    }

    void flip(int i, int j) { set(i, j, static_cast<int8_t>(-at(i, j))); }

    const int8_t* row(int i) const { return m_.data() + static_cast<size_t>(i) * k_; }

    bool operator==(const SpinMatrix&) const = default;

private:
    int k_;
    std::vector<int8_t> m_;
};

// Length-K +-1 vector of logical spins.
using LogicalState = std::vector<int8_t>;

inline SpinMatrix encode(const LogicalState& z) {
    int k = static_cast<int>(z.size());
    SpinMatrix m(k);
    for (int i = 0; i < k; ++i) {
        if (z[i] != 1 && z[i] != -1) throw std::invalid_argument("encode: logical spins must be +-1");
        for (int j = i + 1; j < k; ++j) m.set(i, j, static_cast<int8_t>(z[i] * z[j]));
    }
    return m;
}

// x is a code-state iff x_ij = x_0i * x_0j for all i < j, which is
// equivalent to x = Z^T Z for Z_j = x_0j (and to all syndromes being +1).
inline bool is_code_state(const SpinMatrix& x) {
    int k = x.dim();
    for (int i = 1; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (x.at(i, j) != x.at(0, i) * x.at(0, j)) return false;
    return true;
}

inline LogicalState logical_from_code_state(const SpinMatrix& x) {
    LogicalState z(x.dim(), 1);
    for (int j = 1; j < x.dim(); ++j) z[j] = x.at(0, j);
    return z;
}

inline std::vector<int8_t> vector_view(const SpinMatrix& x) {
    int k = x.dim();
    std::vector<int8_t> v;
    v.reserve(pair_count(k));
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) v.push_back(x.at(i, j));
    return v;
}

inline SpinMatrix matrix_view(const std::vector<int8_t>& v) {
    // invert n_v = k(k-1)/2
    int k = 1;
    while (pair_count(k) < static_cast<int>(v.size())) ++k;
    if (pair_count(k) != static_cast<int>(v.size()))
        throw std::invalid_argument("matrix_view: vector length is not a pair count C(k,2)");
    SpinMatrix m(k);
    int t = 0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) m.set(i, j, v[t++]);
    return m;
}

struct CodeParams {
    int k = 0;
    int n_v = 0;   // physical spins, C(K,2)
    int n_c3 = 0;  // weight-3 checks, C(K,3)
    int n_c4 = 0;  // weight-4 checks, C(K-1,2)

    static CodeParams for_size(int k) {
        if (k < 2) throw std::invalid_argument("CodeParams: k must be >= 2");
        CodeParams p;
        p.k = k;
        p.n_v = pair_count(k);
        p.n_c3 = k * (k - 1) * (k - 2) / 6;
        p.n_c4 = (k - 1) * (k - 2) / 2;
        return p;
    }
};

// Dense binary matrix stored as row bitsets; used for the generator and
// parity-check matrices and their mod-2 orthogonality checks.
class BitMatrix {
public:
    BitMatrix() : rows_(0), cols_(0), words_(0) {}
    BitMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), words_((cols + 63) / 64),
          bits_(static_cast<size_t>(rows) * words_, 0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void set(int r, int c) { bits_[static_cast<size_t>(r) * words_ + c / 64] |= 1ull << (c % 64); }

    bool get(int r, int c) const {
        return (bits_[static_cast<size_t>(r) * words_ + c / 64] >> (c % 64)) & 1u;
    }

    int row_weight(int r) const {
        int w = 0;
        for (int t = 0; t < words_; ++t) w += __builtin_popcountll(bits_[static_cast<size_t>(r) * words_ + t]);
        return w;
    }

    int col_weight(int c) const {
        int w = 0;
        for (int r = 0; r < rows_; ++r) w += get(r, c);
        return w;
    }

    // true iff this * other^T == 0 (mod 2); requires equal column counts
    bool orthogonal_mod2(const BitMatrix& other) const {
        if (cols_ != other.cols_) throw std::invalid_argument("orthogonal_mod2: column mismatch");
        for (int r = 0; r < rows_; ++r) {
            const uint64_t* a = bits_.data() + static_cast<size_t>(r) * words_;
            for (int s = 0; s < other.rows_; ++s) {
                const uint64_t* b = other.bits_.data() + static_cast<size_t>(s) * words_;
                int parity = 0;
                for (int t = 0; t < words_; ++t) parity ^= __builtin_popcountll(a[t] & b[t]) & 1;
                if (parity) return false;
            }
        }
        return true;
    }

    std::string row_string(int r) const {
        std::string s(cols_, '0');
        for (int c = 0; c < cols_; ++c)
            if (get(r, c)) s[c] = '1';
        return s;
    }

private:
    int rows_, cols_, words_;
    std::vector<uint64_t> bits_;
};

// Parity-encoding code for K logical spins: generator, weight-3 and weight-4
// parity-check matrices, and Tanner-graph adjacency in canonical order.
//
// Canonical orders:
//   pairs    (i,j), i<j, lexicographic
//   triples  (a,b,c), a<b<c, lexicographic
//   weight-4 checks: unit cells of the (row,col) grid with the diagonal fixed
//     at +1. Cell (r,c), 0 <= r < c <= K-2, has corners (r,c), (r,c+1),
//     (r+1,c+1) and, when r+1 < c, (r+1,c); cells are enumerated row-major.
//     Cells with r+1 == c touch the diagonal and reduce to weight 3.
struct PECode {
    CodeParams params;
    BitMatrix generator;  // K x n_v, two 1s per column
    BitMatrix check3;     // n_c3 x n_v, regular: row weight 3, column weight K-2
    BitMatrix check4;     // n_c4 x n_v, row/column weights at most 4

    std::vector<std::array<int, 3>> triples;        // check3 row -> logical triple
    std::vector<std::pair<int, int>> cells;         // check4 row -> (r,c) cell
    std::vector<std::array<int, 3>> cn3_members;    // check3 row -> pair indices
    std::vector<std::vector<int>> cn4_members;      // check4 row -> 3 or 4 pair indices
    std::vector<std::vector<int>> vn3_checks;       // pair -> adjacent weight-3 checks
    std::vector<std::vector<int>> vn4_checks;       // pair -> adjacent weight-4 checks

    static PECode build(int k) {
        if (k < 4) throw std::invalid_argument("PECode: k must be >= 4 (weight-4 checks need k >= 4)");
        PECode code;
        code.params = CodeParams::for_size(k);
        const int n_v = code.params.n_v;

        code.generator = BitMatrix(k, n_v);
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                int p = pair_rank(k, i, j);
                code.generator.set(i, p);
                code.generator.set(j, p);
            }

        code.check3 = BitMatrix(code.params.n_c3, n_v);
        code.triples.reserve(code.params.n_c3);
        code.cn3_members.reserve(code.params.n_c3);
        code.vn3_checks.assign(n_v, {});
        int row = 0;
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b)
                for (int c = b + 1; c < k; ++c) {
                    std::array<int, 3> members = {pair_rank(k, a, b), pair_rank(k, b, c), pair_rank(k, a, c)};
                    code.triples.push_back({a, b, c});
                    code.cn3_members.push_back(members);
                    for (int p : members) {
                        code.check3.set(row, p);
                        code.vn3_checks[p].push_back(row);
                    }
                    ++row;
                }

        code.check4 = BitMatrix(code.params.n_c4, n_v);
        code.cells.reserve(code.params.n_c4);
        code.cn4_members.reserve(code.params.n_c4);
        code.vn4_checks.assign(n_v, {});
        row = 0;
        for (int r = 0; r < k - 1; ++r)
            for (int c = r + 1; c < k - 1; ++c) {
                std::vector<int> members = {pair_rank(k, r, c), pair_rank(k, r, c + 1)};
                if (r + 1 < c) members.push_back(pair_rank(k, r + 1, c));
                members.push_back(pair_rank(k, r + 1, c + 1));
                code.cells.emplace_back(r, c);
                for (int p : members) {
                    code.check4.set(row, p);
                    code.vn4_checks[p].push_back(row);
                }
                code.cn4_members.push_back(std::move(members));
                ++row;
            }

        return code;
    }
};

// +-1 syndrome of every weight-3 check: values[t] = x_ab x_bc x_ac.
inline std::vector<int8_t> syndrome3(const PECode& code, const SpinMatrix& x) {
    std::vector<int8_t> s;
    s.reserve(code.triples.size());
    for (const auto& t : code.triples)
        s.push_back(static_cast<int8_t>(x.at(t[0], t[1]) * x.at(t[1], t[2]) * x.at(t[0], t[2])));
    return s;
}

// +-1 syndrome of every weight-4 check (plaquette product, diagonal = +1).
inline std::vector<int8_t> syndrome4(const PECode& code, const SpinMatrix& x) {
    std::vector<int8_t> s;
    s.reserve(code.cells.size());
    for (const auto& [r, c] : code.cells) {
        int v = x.at(r, c) * x.at(r, c + 1) * x.at(r + 1, c + 1);
        if (r + 1 < c) v *= x.at(r + 1, c);
        s.push_back(static_cast<int8_t>(v));
    }
    return s;
}

}  // namespace slhz
