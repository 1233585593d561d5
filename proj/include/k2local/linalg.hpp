#pragma once

#include <cstdint>
#include <vector>

#include "field.hpp"

namespace k2local {

// Dense row-major matrix over F3.  Buckets are tiny, so no sparsity games.
struct F3Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<int8_t> a;  // entries in {-1,0,1}

    F3Matrix() = default;
    F3Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    int8_t& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    int8_t at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    void append_row(const std::vector<int8_t>& row) {
        rows += 1;
        a.insert(a.end(), row.begin(), row.end());
        if (cols == 0) cols = row.size();
    }

    static int8_t norm(int x) { return static_cast<int8_t>(((x % 3) + 4) % 3 - 1); }

    // in-place reduced row echelon form; returns pivot columns
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols && r < rows; ++c) {
            std::size_t sel = r;
            while (sel < rows && at(sel, c) == 0) ++sel;
            if (sel == rows) continue;
            for (std::size_t j = 0; j < cols; ++j) std::swap(at(sel, j), at(r, j));
            int8_t inv = at(r, c);  // 1 and -1 self-inverse
            for (std::size_t j = 0; j < cols; ++j) at(r, j) = norm(at(r, j) * inv);
            for (std::size_t i = 0; i < rows; ++i) {
                if (i == r || at(i, c) == 0) continue;
                int8_t f = at(i, c);
                for (std::size_t j = 0; j < cols; ++j) at(i, j) = norm(at(i, j) - f * at(r, j));
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    std::size_t rank() const {
        F3Matrix copy = *this;
        return copy.rref().size();
    }
};

// Row space helper: reduce once, then answer membership / solve queries.
struct RowSpace {
    F3Matrix m;                       // rref'd rows
    std::vector<std::size_t> pivots;  // pivot column per row

    explicit RowSpace(const F3Matrix& rows) : m(rows) { pivots = m.rref(); }

    std::size_t rank() const { return pivots.size(); }

    // reduce v against the rows; returns the residue
    std::vector<int8_t> residue(std::vector<int8_t> v) const {
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            int8_t f = v[pivots[r]];
            if (f == 0) continue;
            for (std::size_t j = 0; j < m.cols; ++j) v[j] = F3Matrix::norm(v[j] - f * m.at(r, j));
        }
        return v;
    }

    bool contains(const std::vector<int8_t>& v) const {
        auto r = residue(v);
        for (int8_t x : r)
            if (x != 0) return false;
        return true;
    }
};

// Kernel of the linear map x -> x*M (rows of the returned matrix span the
// kernel, coordinates in the row index space).
inline F3Matrix kernel(const F3Matrix& M) {
    // rref the augmented block [M | I]; rows whose left block vanishes give
    // kernel coordinates in the right block
    F3Matrix aug(M.rows, M.cols + M.rows);
    for (std::size_t i = 0; i < M.rows; ++i) {
        for (std::size_t j = 0; j < M.cols; ++j) aug.at(i, j) = M.at(i, j);
        aug.at(i, M.cols + i) = 1;
    }
    aug.rref();
    F3Matrix ker(0, M.rows);
    for (std::size_t i = 0; i < M.rows; ++i) {
        bool zero_left = true;
        for (std::size_t j = 0; j < M.cols; ++j)
            if (aug.at(i, j) != 0) { zero_left = false; break; }
        if (!zero_left) continue;
        std::vector<int8_t> row(M.rows);
        for (std::size_t j = 0; j < M.rows; ++j) row[j] = aug.at(i, M.cols + j);
        ker.append_row(row);
    }
    if (ker.rows == 0) ker.cols = M.rows;
    return ker;
}

// Basis of ker/im: rows of `cycles` spanning a subspace, rows of `boundaries`
// spanning a subspace of it; returns coordinate rows of quotient
// representatives, preferring representatives that reduce to single pivots.
inline F3Matrix quotient_basis(const F3Matrix& cycles, const F3Matrix& boundaries) {
    RowSpace bnd(boundaries);
    F3Matrix out(0, cycles.cols);
    F3Matrix seen = boundaries;  // grows as we add representatives
    RowSpace span(seen);
    for (std::size_t i = 0; i < cycles.rows; ++i) {
        std::vector<int8_t> row(cycles.cols);
        for (std::size_t j = 0; j < cycles.cols; ++j) row[j] = cycles.at(i, j);
        auto res = span.residue(row);
        bool zero = true;
        for (int8_t x : res)
            if (x != 0) { zero = false; break; }
        if (zero) continue;
        out.append_row(res);
        seen.append_row(res);
        span = RowSpace(seen);
    }
    return out;
}

}  // namespace k2local
