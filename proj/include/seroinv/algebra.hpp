#pragma once

// Invariant polynomials of the 2x2x2 count cube. Every evaluator is a
// template over the scalar ring so the same code runs on exact rationals,
// big integers or doubles.

#include "seroinv/counts.hpp"

#include <array>

namespace seroinv {

enum class Face { Minus, Plus, Sum };

template <class T>
struct Matrix2 {
    std::array<std::array<T, 2>, 2> m{};

    const T& operator()(int r, int c) const { return m[r][c]; }
    T det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

    friend bool operator==(const Matrix2&, const Matrix2&) = default;
};

template <class T>
struct InvariantSet {
    T f1{};
    T f3{};
    T f4{};
    std::array<T, kDiseases> f2{};
    std::array<T, kDiseases> g2{};
};

template <class T>
T eval_f1(const Cells<T>& a) {
    T n = a[0];
    for (int k = 1; k < kCells; ++k) n += a[k];
    return n;
}

/// The cubic f3, grouped by the two inscribed tetrahedra {0,3,5,6} and
/// {7,4,2,1} of the cube.
template <class T>
T eval_f3(const Cells<T>& a) {
    const T even = a[0] + a[3] + a[5] + a[6];
    const T odd = a[7] + a[4] + a[2] + a[1];
    const T diagonals = a[0] * a[7] + a[3] * a[4] + a[5] * a[2] + a[6] * a[1];
    const T skew = a[0] * a[7] * (a[0] - a[7]) + a[3] * a[4] * (a[3] - a[4]) +
                   a[5] * a[2] * (a[5] - a[2]) + a[6] * a[1] * (a[6] - a[1]);
    const T even_triples =
        a[3] * a[5] * a[6] + a[0] * a[5] * a[6] + a[0] * a[3] * a[6] + a[0] * a[3] * a[5];
    const T odd_triples =
        a[4] * a[2] * a[1] + a[7] * a[2] * a[1] + a[7] * a[4] * a[1] + a[7] * a[4] * a[2];
    return (even - odd) * diagonals - T(2) * skew + T(2) * (even_triples - odd_triples);
}

/// Cayley's hyperdeterminant of the count cube.
template <class T>
T eval_f4(const Cells<T>& a) {
    const std::array<T, 4> d{a[0] * a[7], a[3] * a[4], a[5] * a[2], a[6] * a[1]};
    T squares = d[0] * d[0] + d[1] * d[1] + d[2] * d[2] + d[3] * d[3];
    T tetra = a[0] * a[3] * a[5] * a[6] + a[7] * a[4] * a[2] * a[1];
    T cross = d[0] * d[1] + d[0] * d[2] + d[0] * d[3] + d[1] * d[2] + d[1] * d[3] + d[2] * d[3];
    return squares + T(4) * tetra - T(2) * cross;
}

/// The 2x2 face of the cube with disease `disease` fixed to `face`. Rows
/// follow the lower remaining disease, columns the higher one, each in
/// (-, +) order. With this layout det A_+(1) = a4 a7 - a5 a6.
template <class T>
Matrix2<T> layer(const Cells<T>& a, int disease, Face face) {
    require_disease(disease);
    int row_disease = disease == 1 ? 2 : 1;
    int col_disease = disease == 3 ? 2 : 3;
    const int fixed = disease_bit(disease);
    Matrix2<T> out;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            const int base = (r ? disease_bit(row_disease) : 0) | (c ? disease_bit(col_disease) : 0);
            switch (face) {
                case Face::Minus: out.m[r][c] = a[base]; break;
                case Face::Plus: out.m[r][c] = a[base | fixed]; break;
                case Face::Sum: out.m[r][c] = a[base] + a[base | fixed]; break;
            }
        }
    }
    return out;
}

template <class T>
T eval_f2(const Cells<T>& a, int disease) {
    return layer(a, disease, Face::Sum).det();
}

template <class T>
T eval_g2(const Cells<T>& a, int disease) {
    return layer(a, disease, Face::Plus).det() - layer(a, disease, Face::Minus).det();
}

/// Analytic gradient of f4. Cell k sits on the main diagonal pair
/// {k, 7-k} and in one of the two tetrahedra.
template <class T>
Cells<T> grad_f4(const Cells<T>& a) {
    auto diag = [&](int k) { return a[k] * a[kCells - 1 - k]; };
    auto parity = [](int k) { return (((k >> 2) ^ (k >> 1) ^ k) & 1); };
    Cells<T> g;
    for (int k = 0; k < kCells; ++k) {
        const int partner = kCells - 1 - k;
        T others = T(0);
        T tetra = T(1);
        for (int m = 0; m < kCells; ++m) {
            if (m != k && m != partner && m < kCells - 1 - m) others += diag(m);
            if (m != k && parity(m) == parity(k)) tetra *= a[m];
        }
        const T own = diag(k);
        g[k] = T(2) * a[partner] * (own - others) + T(4) * tetra;
    }
    return g;
}

template <class T>
InvariantSet<T> invariants(const Cells<T>& a) {
    InvariantSet<T> inv;
    inv.f1 = eval_f1(a);
    inv.f3 = eval_f3(a);
    inv.f4 = eval_f4(a);
    for (int i = 1; i <= kDiseases; ++i) {
        inv.f2[i - 1] = eval_f2(a, i);
        inv.g2[i - 1] = eval_g2(a, i);
    }
    return inv;
}

inline InvariantSet<Exact> invariants(const CountVector& a) { return invariants(a.cells()); }

}  // namespace seroinv
