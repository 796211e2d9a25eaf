#pragma once

#include <algorithm>
#include <map>
#include <ostream>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "perles/complex.hpp"
#include "perles/error.hpp"

namespace perles {

using BigInt = boost::multiprecision::cpp_int;

/**
 * Sparse integer matrix with exact entries. Columns are stored as maps from
 * row index to nonzero value.
 */
class IntegerMatrix {
  public:
    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), col_(cols) {}

    static IntegerMatrix from_dense(const std::vector<std::vector<long long>>& dense) {
        std::size_t cols = dense.empty() ? 0 : dense[0].size();
        IntegerMatrix m(dense.size(), cols);
        for (std::size_t r = 0; r < dense.size(); ++r) {
            require(dense[r].size() == cols, "IntegerMatrix: ragged rows");
            for (std::size_t c = 0; c < cols; ++c)
                if (dense[r][c] != 0) m.set(r, c, dense[r][c]);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    BigInt at(std::size_t r, std::size_t c) const {
        auto it = col_[c].find(r);
        return it == col_[c].end() ? BigInt(0) : it->second;
    }

    void set(std::size_t r, std::size_t c, const BigInt& value) {
        require(r < rows_ && c < cols_, "IntegerMatrix: index out of range");
        if (value == 0)
            col_[c].erase(r);
        else
            col_[c][r] = value;
    }

    const std::map<std::size_t, BigInt>& column(std::size_t c) const { return col_[c]; }

    std::size_t nonzeros() const {
        std::size_t n = 0;
        for (const auto& c : col_) n += c.size();
        return n;
    }

    friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
        require(a.cols_ == b.rows_, "IntegerMatrix: shape mismatch in product");
        IntegerMatrix out(a.rows_, b.cols_);
        for (std::size_t c = 0; c < b.cols_; ++c) {
            std::map<std::size_t, BigInt> acc;
            for (const auto& [k, bv] : b.col_[c])
                for (const auto& [r, av] : a.col_[k]) acc[r] += av * bv;
            for (auto& [r, v] : acc)
                if (v != 0) out.col_[c].emplace(r, std::move(v));
        }
        return out;
    }

    bool is_zero() const {
        return std::all_of(col_.begin(), col_.end(), [](const auto& c) { return c.empty(); });
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::map<std::size_t, BigInt>> col_;
};

struct SmithForm {
    std::size_t rank = 0;
    std::vector<BigInt> divisors;  // d_1 | d_2 | ... | d_rank, all positive
};

namespace detail {

// Rewrites positive diagonal entries into a divisibility chain with the same
// invariant factors (diag(a, b) ~ diag(gcd, lcm)).
inline void normalize_chain(std::vector<BigInt>& d) {
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            if (d[j] % d[i] == 0) continue;
            BigInt g = boost::multiprecision::gcd(d[i], d[j]);
            BigInt l = d[i] / g * d[j];
            d[i] = g;
            d[j] = l;
        }
    std::sort(d.begin(), d.end());
}

// Smith diagonalization of a dense block, smallest-absolute-value pivoting.
inline std::vector<BigInt> dense_smith_diagonal(std::vector<std::vector<BigInt>> a) {
    std::vector<BigInt> diag;
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        while (true) {
            // smallest nonzero |entry| in the trailing block
            std::size_t pr = rows, pc = cols;
            for (std::size_t r = t; r < rows; ++r)
                for (std::size_t c = t; c < cols; ++c)
                    if (a[r][c] != 0 && (pr == rows || abs(a[r][c]) < abs(a[pr][pc]))) {
                        pr = r;
                        pc = c;
                    }
            if (pr == rows) return diag;
            std::swap(a[t], a[pr]);
            for (auto& row : a) std::swap(row[t], row[pc]);
            bool clean = true;
            for (std::size_t r = t + 1; r < rows; ++r) {
                if (a[r][t] == 0) continue;
                BigInt q = a[r][t] / a[t][t];
                for (std::size_t c = t; c < cols; ++c) a[r][c] -= q * a[t][c];
                if (a[r][t] != 0) clean = false;
            }
            for (std::size_t c = t + 1; c < cols; ++c) {
                if (a[t][c] == 0) continue;
                BigInt q = a[t][c] / a[t][t];
                for (std::size_t r = t; r < rows; ++r) a[r][c] -= q * a[r][t];
                if (a[t][c] != 0) clean = false;
            }
            if (clean) break;
        }
        diag.push_back(abs(a[t][t]));
    }
    return diag;
}

}  // namespace detail

/**
 * Rank and elementary divisors. Unit pivots are eliminated first on the sparse
 * structure (each contributes a divisor 1); the block left without unit
 * entries is diagonalized densely.
 */
inline SmithForm smith_normal_form(const IntegerMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::map<std::size_t, BigInt>> row(rows);
    std::vector<std::map<std::size_t, BigInt>> col(cols);  // mirrors row (values kept in both)
    for (std::size_t c = 0; c < cols; ++c)
        for (const auto& [r, v] : m.column(c)) {
            row[r].emplace(c, v);
            col[c].emplace(r, v);
        }

    auto set_entry = [&](std::size_t r, std::size_t c, BigInt v) {
        if (v == 0) {
            row[r].erase(c);
            col[c].erase(r);
        } else {
            row[r][c] = v;
            col[c][r] = std::move(v);
        }
    };

    std::size_t unit_pivots = 0;
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t c = 0; c < cols; ++c) {
            if (col[c].empty()) continue;
            // unit entry in the sparsest row
            std::size_t best = rows;
            for (const auto& [r, v] : col[c])
                if ((v == 1 || v == -1) && (best == rows || row[r].size() < row[best].size())) best = r;
            if (best == rows) continue;
            const BigInt pivot = row[best].at(c);
            const std::vector<std::pair<std::size_t, BigInt>> pivot_row(row[best].begin(), row[best].end());
            std::vector<std::pair<std::size_t, BigInt>> targets;
            for (const auto& [r, v] : col[c])
                if (r != best) targets.emplace_back(r, v);
            for (const auto& [r, v] : targets) {
                BigInt factor = v * pivot;  // pivot is its own inverse
                for (const auto& [pc, pv] : pivot_row) {
                    auto it = row[r].find(pc);
                    BigInt updated = (it == row[r].end() ? BigInt(0) : it->second) - factor * pv;
                    set_entry(r, pc, std::move(updated));
                }
            }
            // column c now has only the pivot; clearing the pivot row by
            // column operations touches nothing else, so drop both.
            for (const auto& [pc, pv] : pivot_row) col[pc].erase(best);
            row[best].clear();
            ++unit_pivots;
            progress = true;
        }
    }

    std::vector<std::size_t> live_rows, live_cols;
    for (std::size_t r = 0; r < rows; ++r)
        if (!row[r].empty()) live_rows.push_back(r);
    for (std::size_t c = 0; c < cols; ++c)
        if (!col[c].empty()) live_cols.push_back(c);

    SmithForm out;
    if (!live_rows.empty()) {
        std::vector<std::vector<BigInt>> dense(live_rows.size(), std::vector<BigInt>(live_cols.size()));
        std::map<std::size_t, std::size_t> col_pos;
        for (std::size_t j = 0; j < live_cols.size(); ++j) col_pos[live_cols[j]] = j;
        for (std::size_t i = 0; i < live_rows.size(); ++i)
            for (const auto& [c, v] : row[live_rows[i]]) dense[i][col_pos[c]] = v;
        out.divisors = detail::dense_smith_diagonal(std::move(dense));
        detail::normalize_chain(out.divisors);
    }
    out.divisors.insert(out.divisors.begin(), unit_pivots, BigInt(1));
    out.rank = out.divisors.size();
    return out;
}

/**
 * Boundary map from k-faces (columns) to (k-1)-faces (rows), both in
 * lexicographic order; omitting the i-th vertex carries sign (-1)^i.
 */
inline IntegerMatrix boundary_matrix(const SimplicialComplex& k_cx, int k) {
    require(k >= 1 && k <= k_cx.dim(), "boundary_matrix: k out of range");
    auto lower = k_faces(k_cx, k - 1);
    auto upper = k_faces(k_cx, k);
    IntegerMatrix m(lower.size(), upper.size());
    for (std::size_t c = 0; c < upper.size(); ++c) {
        const Simplex& s = upper[c];
        for (std::size_t i = 0; i < s.size(); ++i) {
            auto face = s.without(s[i]);
            auto r = static_cast<std::size_t>(std::lower_bound(lower.begin(), lower.end(), face) - lower.begin());
            m.set(r, c, i % 2 == 0 ? 1 : -1);
        }
    }
    return m;
}

/**
 * Unreduced integral homology. betti[0] counts components; torsion[k] holds
 * the divisors > 1 of the (k+1)-st boundary map.
 */
struct HomologyProfile {
    std::vector<long long> betti;
    std::vector<std::vector<BigInt>> torsion;

    bool torsion_free() const {
        return std::all_of(torsion.begin(), torsion.end(), [](const auto& t) { return t.empty(); });
    }
    friend bool operator==(const HomologyProfile&, const HomologyProfile&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const HomologyProfile& h) {
    os << "betti (";
    for (std::size_t i = 0; i < h.betti.size(); ++i) os << (i ? "," : "") << h.betti[i];
    os << ") torsion [";
    for (std::size_t i = 0; i < h.torsion.size(); ++i) {
        os << (i ? ";" : "");
        for (std::size_t j = 0; j < h.torsion[i].size(); ++j) os << (j ? "," : "") << h.torsion[i][j];
    }
    return os << ']';
}

inline HomologyProfile homology_profile(const SimplicialComplex& k_cx) {
    require(!k_cx.empty(), "homology_profile: empty complex");
    const int d = k_cx.dim();
    std::vector<std::size_t> face_count(static_cast<std::size_t>(d + 1));
    std::vector<SmithForm> snf(static_cast<std::size_t>(d + 2));  // snf[k] for boundary k
    for (int k = 0; k <= d; ++k) face_count[k] = k_faces(k_cx, k).size();
    for (int k = 1; k <= d; ++k) snf[k] = smith_normal_form(boundary_matrix(k_cx, k));
    HomologyProfile h;
    for (int k = 0; k <= d; ++k) {
        long long kernel = static_cast<long long>(face_count[k]) - static_cast<long long>(snf[k].rank);
        h.betti.push_back(kernel - static_cast<long long>(snf[k + 1].rank));
        std::vector<BigInt> tors;
        for (const auto& div : snf[k + 1].divisors)
            if (div > 1) tors.push_back(div);
        h.torsion.push_back(std::move(tors));
    }
    return h;
}

}  // namespace perles
