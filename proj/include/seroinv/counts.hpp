#pragma once

#include "seroinv/errors.hpp"
#include "seroinv/exact.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

namespace seroinv {

inline constexpr int kCells = 8;
inline constexpr int kDiseases = 3;

template <class T>
using Cells = std::array<T, kCells>;

// Antibody status k packs one bit per disease: disease 1 is bit value 4,
// disease 2 is 2, disease 3 is 1. So k = 6 is (+,+,-) and k = 0 is (-,-,-).
constexpr int disease_bit(int disease) { return 1 << (kDiseases - disease); }

constexpr bool is_positive(int cell, int disease) { return (cell & disease_bit(disease)) != 0; }

inline void require_disease(int disease) {
    if (disease < 1 || disease > kDiseases) {
        throw Error(ErrorCode::InvalidDiseaseIndex,
                    "disease index must be 1, 2 or 3, got " + std::to_string(disease));
    }
}

/// The eight observed proband counts of one cohort, held as exact
/// nonnegative rationals (integers in normal use; fractional expected
/// counts are accepted).
class CountVector {
public:
    CountVector() = default;

    explicit CountVector(const std::array<Exact, kCells>& cells) : cells_(cells) {
        for (int k = 0; k < kCells; ++k) {
            if (cells_[k] < 0) {
                throw std::invalid_argument("count a" + std::to_string(k) + " is negative");
            }
        }
    }

    template <class Int>
        requires std::is_integral_v<Int>
    static CountVector from_integers(const std::array<Int, kCells>& counts) {
        std::array<Exact, kCells> cells;
        std::transform(counts.begin(), counts.end(), cells.begin(),
                       [](Int c) { return Exact(static_cast<long long>(c)); });
        return CountVector(cells);
    }

    /// Each double is converted exactly (binary fraction), not rounded.
    static CountVector from_doubles(std::span<const double, kCells> counts) {
        std::array<Exact, kCells> cells;
        std::transform(counts.begin(), counts.end(), cells.begin(),
                       [](double c) { return Exact(c); });
        return CountVector(cells);
    }

    const Exact& operator[](int k) const { return cells_[k]; }
    const std::array<Exact, kCells>& cells() const { return cells_; }

    Exact total() const {
        Exact n = 0;
        for (const auto& c : cells_) n += c;
        return n;
    }

    bool is_integral() const {
        return std::all_of(cells_.begin(), cells_.end(),
                           [](const Exact& c) { return seroinv::is_integral(c); });
    }

    std::array<double, kCells> to_doubles() const {
        std::array<double, kCells> out;
        std::transform(cells_.begin(), cells_.end(), out.begin(),
                       [](const Exact& c) { return to_double(c); });
        return out;
    }

    CountVector scaled(const Exact& factor) const {
        auto cells = cells_;
        for (auto& c : cells) c *= factor;
        return CountVector(cells);
    }

    /// Flips every disease sign: a_k <-> a_{7-k}.
    CountVector mirrored() const {
        std::array<Exact, kCells> cells;
        for (int k = 0; k < kCells; ++k) cells[k] = cells_[kCells - 1 - k];
        return CountVector(cells);
    }

    /// Relabels disease axes: new disease d takes the role of old disease
    /// `order[d-1]`.
    CountVector permuted(const std::array<int, kDiseases>& order) const {
        std::array<Exact, kCells> cells;
        for (int k = 0; k < kCells; ++k) {
            int source = 0;
            for (int d = 1; d <= kDiseases; ++d) {
                if (is_positive(k, d)) source |= disease_bit(order[d - 1]);
            }
            cells[k] = cells_[source];
        }
        return CountVector(cells);
    }

    friend bool operator==(const CountVector&, const CountVector&) = default;

private:
    std::array<Exact, kCells> cells_{};
};

}  // namespace seroinv
