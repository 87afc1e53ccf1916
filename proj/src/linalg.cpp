#include "fillvol/linalg.hpp"

#include "fillvol/errors.hpp"

#include <algorithm>

namespace fillvol {

FieldSolution solve_field(const Ring& ring, const std::vector<std::vector<RElem>>& A,
                          const std::vector<RElem>& b) {
    if (!ring.is_field()) throw UnsupportedError("solve_field needs a field");
    const size_t m = A.size();
    const size_t n = m ? A[0].size() : 0;
    if (b.size() != m) throw DomainError("solve_field: rhs length mismatch");
    for (const auto& row : A)
        if (row.size() != n) throw DomainError("solve_field: ragged matrix");

    auto M = A;
    auto rhs = b;
    std::vector<int> pivot_col_of_row(m, -1);
    std::vector<int> pivot_row_of_col(n, -1);
    size_t rank = 0;
    for (size_t col = 0; col < n && rank < m; ++col) {
        size_t sel = m;
        for (size_t r = rank; r < m; ++r)
            if (!ring.is_zero(M[r][col])) {
                sel = r;
                break;
            }
        if (sel == m) continue;
        std::swap(M[sel], M[rank]);
        std::swap(rhs[sel], rhs[rank]);
        RElem inv = ring.inv(M[rank][col]);
        for (size_t c = col; c < n; ++c) M[rank][c] = ring.mul(inv, M[rank][c]);
        rhs[rank] = ring.mul(inv, rhs[rank]);
        for (size_t r = 0; r < m; ++r) {
            if (r == rank || ring.is_zero(M[r][col])) continue;
            RElem f = M[r][col];
            for (size_t c = col; c < n; ++c)
                M[r][c] = ring.sub(M[r][c], ring.mul(f, M[rank][c]));
            rhs[r] = ring.sub(rhs[r], ring.mul(f, rhs[rank]));
        }
        pivot_col_of_row[rank] = static_cast<int>(col);
        pivot_row_of_col[col] = static_cast<int>(rank);
        ++rank;
    }

    FieldSolution out;
    out.rank = rank;
    bool consistent = true;
    for (size_t r = rank; r < m; ++r)
        if (!ring.is_zero(rhs[r])) consistent = false;
    if (consistent) {
        std::vector<RElem> x(n, ring.zero());
        for (size_t r = 0; r < rank; ++r) x[static_cast<size_t>(pivot_col_of_row[r])] = rhs[r];
        out.particular = std::move(x);
    }
    for (size_t col = 0; col < n; ++col) {
        if (pivot_row_of_col[col] >= 0) continue;
        std::vector<RElem> v(n, ring.zero());
        v[col] = ring.one();
        for (size_t r = 0; r < rank; ++r)
            v[static_cast<size_t>(pivot_col_of_row[r])] = ring.neg(M[r][col]);
        out.kernel.push_back(std::move(v));
    }
    return out;
}

namespace {

// Column operations tracked in V; brings M to column echelon form.
struct ColumnEchelon {
    IntMatrix H;  // m x n, echelon columns first
    IntMatrix V;  // n x n unimodular with A V = H
    std::vector<std::pair<size_t, size_t>> pivots;  // (row, column of H)
};

ColumnEchelon column_echelon(const IntMatrix& A) {
    const size_t m = A.size();
    const size_t n = m ? A[0].size() : 0;
    ColumnEchelon ce;
    ce.H = A;
    ce.V.assign(n, std::vector<Int>(n, 0));
    for (size_t i = 0; i < n; ++i) ce.V[i][i] = 1;

    auto col_addmul = [&](size_t dst, size_t src, const Int& f) {
        for (size_t r = 0; r < m; ++r) ce.H[r][dst] += f * ce.H[r][src];
        for (size_t r = 0; r < n; ++r) ce.V[r][dst] += f * ce.V[r][src];
    };
    auto col_swap = [&](size_t a, size_t bcol) {
        for (size_t r = 0; r < m; ++r) std::swap(ce.H[r][a], ce.H[r][bcol]);
        for (size_t r = 0; r < n; ++r) std::swap(ce.V[r][a], ce.V[r][bcol]);
    };
    auto col_negate = [&](size_t c) {
        for (size_t r = 0; r < m; ++r) ce.H[r][c] = -ce.H[r][c];
        for (size_t r = 0; r < n; ++r) ce.V[r][c] = -ce.V[r][c];
    };

    size_t next = 0;  // first non-pivot column
    for (size_t row = 0; row < m && next < n; ++row) {
        // gcd-eliminate row entries among columns next..n-1
        while (true) {
            size_t best = n;
            for (size_t c = next; c < n; ++c)
                if (ce.H[row][c] != 0 &&
                    (best == n || abs(ce.H[row][c]) < abs(ce.H[row][best])))
                    best = c;
            if (best == n) break;  // row clear, no pivot here
            bool others = false;
            for (size_t c = next; c < n; ++c) {
                if (c == best || ce.H[row][c] == 0) continue;
                Int q = ce.H[row][c] / ce.H[row][best];
                col_addmul(c, best, -q);
                if (ce.H[row][c] != 0) others = true;
            }
            if (!others) {
                if (ce.H[row][best] < 0) col_negate(best);
                col_swap(next, best);
                ce.pivots.emplace_back(row, next);
                ++next;
                break;
            }
        }
    }
    return ce;
}

}  // namespace

IntegerSolution solve_integer(const IntMatrix& A, const std::vector<Int>& b) {
    const size_t m = A.size();
    const size_t n = m ? A[0].size() : 0;
    if (b.size() != m) throw DomainError("solve_integer: rhs length mismatch");
    for (const auto& row : A)
        if (row.size() != n) throw DomainError("solve_integer: ragged matrix");

    ColumnEchelon ce = column_echelon(A);
    IntegerSolution out;

    // back-substitute through the echelon columns
    std::vector<Int> rem = b;
    std::vector<Int> y(n, 0);
    bool ok = true;
    for (const auto& [row, col] : ce.pivots) {
        Int p = ce.H[row][col];
        if (rem[row] % p != 0) {
            ok = false;
            break;
        }
        Int q = rem[row] / p;
        y[col] = q;
        for (size_t r = 0; r < m; ++r) rem[r] -= q * ce.H[r][col];
    }
    if (ok)
        for (size_t r = 0; r < m; ++r)
            if (rem[r] != 0) ok = false;
    if (ok) {
        std::vector<Int> x(n, 0);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) x[i] += ce.V[i][j] * y[j];
        out.particular = std::move(x);
    }
    for (size_t c = ce.pivots.size(); c < n; ++c) {
        std::vector<Int> v(n);
        for (size_t i = 0; i < n; ++i) v[i] = ce.V[i][c];
        out.kernel.push_back(std::move(v));
    }
    return out;
}

std::vector<std::vector<Int>> echelonize_lattice(const std::vector<std::vector<Int>>& basis) {
    if (basis.empty()) return {};
    const size_t n = basis[0].size();
    for (const auto& v : basis)
        if (v.size() != n) throw DomainError("echelonize_lattice: ragged basis");
    IntMatrix cols(n, std::vector<Int>(basis.size(), 0));
    for (size_t j = 0; j < basis.size(); ++j)
        for (size_t i = 0; i < n; ++i) cols[i][j] = basis[j][i];
    ColumnEchelon ce = column_echelon(cols);
    std::vector<std::vector<Int>> out;
    for (const auto& [row, col] : ce.pivots) {
        std::vector<Int> v(n);
        for (size_t i = 0; i < n; ++i) v[i] = ce.H[i][col];
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace fillvol
