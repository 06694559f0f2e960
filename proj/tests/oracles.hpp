// Test-only oracles, independent of the library paths they check.
#ifndef NCL_TESTS_ORACLES_HPP
#define NCL_TESTS_ORACLES_HPP

#include "ncl/ncl.hpp"

namespace ncl_test {

using namespace ncl;

using IntMatrix = std::vector<std::vector<Int>>;

// det(I - t M) by cofactor expansion over exact rational polynomials
inline Poly<Rat> det_one_minus_t(const IntMatrix& M) {
    size_t n = M.size();
    std::vector<std::vector<Poly<Rat>>> A(n, std::vector<Poly<Rat>>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            std::vector<Rat> c{Rat(i == j ? 1 : 0), Rat(-M[i][j])};
            A[i][j] = Poly<Rat>(std::move(c));
        }
    std::function<Poly<Rat>(std::vector<size_t>, std::vector<size_t>)> det =
        [&](std::vector<size_t> rows, std::vector<size_t> cols) -> Poly<Rat> {
        if (rows.size() == 1) return A[rows[0]][cols[0]];
        Poly<Rat> acc;
        for (size_t k = 0; k < cols.size(); ++k) {
            std::vector<size_t> sub_rows(rows.begin() + 1, rows.end());
            std::vector<size_t> sub_cols;
            for (size_t j = 0; j < cols.size(); ++j)
                if (j != k) sub_cols.push_back(cols[j]);
            auto minor = det(sub_rows, sub_cols);
            auto term = A[rows[0]][cols[k]] * minor;
            acc = (k % 2 == 0) ? acc + term : acc - term;
        }
        return acc;
    };
    std::vector<size_t> idx(n);
    for (size_t i = 0; i < n; ++i) idx[i] = i;
    return det(idx, idx);
}

inline IntMatrix mat_mul(const IntMatrix& A, const IntMatrix& B) {
    size_t n = A.size();
    IntMatrix C(n, std::vector<Int>(n, Int(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            for (size_t j = 0; j < n; ++j) C[i][j] += A[i][k] * B[k][j];
    return C;
}

inline Int mat_trace(const IntMatrix& A) {
    Int t = 0;
    for (size_t i = 0; i < A.size(); ++i) t += A[i][i];
    return t;
}

// traces of M^1..M^nmax by direct matrix powers
inline std::vector<Int> power_traces(const IntMatrix& M, int nmax) {
    std::vector<Int> tr;
    IntMatrix P = M;
    for (int n = 1; n <= nmax; ++n) {
        tr.push_back(mat_trace(P));
        if (n < nmax) P = mat_mul(P, M);
    }
    return tr;
}

// residue degrees of p in Q(zeta_d), p unramified: cycle lengths of
// multiplication by p on the primitive residues mod d
inline std::vector<u32> splitting_cycle_oracle(u32 d, u64 p) {
    std::vector<u32> degs;
    std::vector<bool> seen(d, false);
    for (u32 r = 0; r < d; ++r) {
        if (seen[r] || std::gcd<u64>(r, d) != 1) continue;
        u32 len = 0;
        u64 cur = r;
        while (!seen[cur]) {
            seen[cur] = true;
            cur = (cur * p) % d;
            ++len;
        }
        degs.push_back(len);
    }
    std::sort(degs.begin(), degs.end());
    return degs;
}

} // namespace ncl_test

#endif
