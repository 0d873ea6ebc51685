#pragma once

#include <array>
#include <optional>
#include <stdexcept>

#include "strata/morphism.hpp"

namespace strata {

/// dim Hom of a resolution template: degree-legal cells only.
inline int hom_space_dim(const StratumShape& shape) {
    int d = 0;
    for (int b : shape.target.twists)
        for (int a : shape.source.twists)
            if (b - a >= 0) d += mono_count(b - a);
    return d;
}

/// dim Aut of one twisted sum (twist-legal invertible endomorphisms).
inline int aut_dim(const TwistedSum& t) {
    int d = 0;
    for (int i : t.twists)
        for (int j : t.twists)
            if (i - j >= 0) d += mono_count(i - j);
    return d;
}

/// dim of the equivalence group acting on the template; the two scalar
/// centers act identically, hence the -1.
inline int group_dim(const StratumShape& shape) {
    return aut_dim(shape.source) + aut_dim(shape.target) - 1;
}

/// Moduli dimension of semistable Kronecker modules: m, n dimension
/// vector over the three-dimensional base space.
inline int kronecker_moduli_dim(int m, int n) { return 3 * m * n - m * m - n * n + 1; }

struct DimensionEntry {
    Stratum label;
    int dimension = 0;
    int codimension = 0;
    std::optional<int> parameter_dim; // hom dim minus group dim
    std::optional<int> fibration_dim; // base plus fibre count
};

/// Dimensions of the seven strata inside the 37-dimensional moduli space.
/// Every entry carries at least one derivation route; where both exist
/// they are checked against each other.
inline const std::array<DimensionEntry, 7>& dimension_table() {
    static const std::array<DimensionEntry, 7> table = [] {
        std::array<DimensionEntry, 7> t{};
        auto param = [](Stratum s) {
            const auto& sh = shape_of(s);
            return hom_space_dim(sh) - group_dim(sh);
        };
        t[0] = {Stratum::X0, 37, 0, param(Stratum::X0), std::nullopt};
        // base: Kronecker moduli of the 3x4 linear block, a plane of
        // cokernel pairs, and projective fibres of constant dimension
        t[1] = {Stratum::X1, 34, 3, std::nullopt, kronecker_moduli_dim(4, 3) + 2 + 20};
        t[2] = {Stratum::X2, 34, 3, param(Stratum::X2), std::nullopt};
        t[3] = {Stratum::X3, 32, 5, std::nullopt, 4 + kronecker_moduli_dim(2, 3) + 22};
        t[4] = {Stratum::X4, 32, 5, param(Stratum::X4), std::nullopt};
        t[5] = {Stratum::X5, 30, 7, std::nullopt, 2 + 4 + 24};
        t[6] = {Stratum::X6, 28, 9, param(Stratum::X6), 2 + 27 - 1};
        for (auto& e : t) {
            if (e.parameter_dim && *e.parameter_dim != e.dimension)
                throw std::logic_error("parameter-count route disagrees");
            if (e.fibration_dim && *e.fibration_dim != e.dimension)
                throw std::logic_error("fibration route disagrees");
            if (e.codimension != 37 - e.dimension)
                throw std::logic_error("codimension ledger broken");
        }
        return t;
    }();
    return table;
}

inline int stratum_dimension(Stratum s) { return dimension_table()[static_cast<int>(s)].dimension; }

} // namespace strata
