#pragma once

#include <optional>
#include <vector>

#include "strata/matrix.hpp"
#include "strata/morphism.hpp"

namespace strata {

/// A matrix of linear forms as a triple of scalar coefficient matrices
/// (M_X, M_Y, M_Z), each n x m.
template <class F>
struct KroneckerModule {
    int m = 0, n = 0;
    Matrix<F> mx, my, mz;
};

/// Reads a block of linear forms into its coefficient triple.
template <class F>
KroneckerModule<F> kronecker_from_linear(const F& k, const Morphism<F>& phi, int row0, int rows,
                                         int col0, int cols) {
    KroneckerModule<F> km;
    km.m = cols;
    km.n = rows;
    km.mx = Matrix<F>(rows, cols, k.zero());
    km.my = Matrix<F>(rows, cols, k.zero());
    km.mz = Matrix<F>(rows, cols, k.zero());
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const auto& e = phi.at(row0 + i, col0 + j);
            if (e.degree != 1) throw std::invalid_argument("kronecker block entry not linear");
            km.mx.at(i, j) = e.coeffs[mono_index(1, 1, 0)];
            km.my.at(i, j) = e.coeffs[mono_index(1, 0, 1)];
            km.mz.at(i, j) = e.coeffs[mono_index(1, 0, 0)];
        }
    return km;
}

/// Dimension of M_X A' + M_Y A' + M_Z A' for A' spanned by the given vectors.
template <class F>
int kronecker_image_dim(const F& k, const KroneckerModule<F>& km,
                        const std::vector<std::vector<typename F::Elem>>& span) {
    std::vector<std::vector<typename F::Elem>> images;
    for (const auto& v : span) {
        images.push_back(mat_vec(k, km.mx, v));
        images.push_back(mat_vec(k, km.my, v));
        images.push_back(mat_vec(k, km.mz, v));
    }
    return rank(k, matrix_from_rows(k, images, km.n));
}

// ---------------------------------------------------------------------------
// Rational-subspace enumeration over F_p, via canonical RREF matrices.
// ---------------------------------------------------------------------------

/// Calls fn for every s-dimensional subspace of F_p^n, passing a row basis
/// in reduced echelon form. fn returns true to stop early; the function
/// returns whether a callback stopped the walk.
template <class Fn>
bool for_each_subspace(const PrimeField& k, int n, int s, Fn&& fn) {
    if (s == 0) return false;
    std::vector<int> pivots(s);
    std::vector<std::vector<PrimeField::Elem>> basis(
        s, std::vector<PrimeField::Elem>(static_cast<size_t>(n), 0));

    // iterate over pivot-column combinations
    for (int i = 0; i < s; ++i) pivots[i] = i;
    for (;;) {
        // free positions: entries right of each pivot, excluding pivot columns
        std::vector<std::pair<int, int>> free_pos;
        for (int i = 0; i < s; ++i)
            for (int c = pivots[i] + 1; c < n; ++c) {
                bool is_piv = false;
                for (int t = 0; t < s; ++t)
                    if (pivots[t] == c) is_piv = true;
                if (!is_piv) free_pos.emplace_back(i, c);
            }
        std::vector<PrimeField::Elem> vals(free_pos.size(), 0);
        for (;;) {
            for (int i = 0; i < s; ++i) {
                std::fill(basis[i].begin(), basis[i].end(), 0);
                basis[i][pivots[i]] = 1;
            }
            for (size_t t = 0; t < free_pos.size(); ++t)
                basis[free_pos[t].first][free_pos[t].second] = vals[t];
            if (fn(basis)) return true;
            // odometer over F_p values
            size_t t = 0;
            while (t < vals.size() && ++vals[t] == k.modulus()) vals[t++] = 0;
            if (t == vals.size() && !vals.empty()) break;
            if (vals.empty()) break;
        }
        // next pivot combination
        int i = s - 1;
        while (i >= 0 && pivots[i] == n - s + i) --i;
        if (i < 0) break;
        ++pivots[i];
        for (int t = i + 1; t < s; ++t) pivots[t] = pivots[t - 1] + 1;
    }
    return false;
}

struct KroneckerWitness {
    std::vector<std::vector<PrimeField::Elem>> subspace_basis; // violating A'
    int image_dim = 0;
};

/// King-style slope test: semistable iff every nonzero proper subspace
/// A' of F^m satisfies m * dim(image A') >= n * dim A'. Violations are
/// searched through rational target-side subspaces: A' maps into some
/// subspace T of dimension ceil(n a / m) - 1 iff A' lies in the joint
/// preimage kernel, so it suffices to scan the T's (at most O(p^2) for
/// n <= 3) instead of all source subspaces.
inline std::optional<KroneckerWitness> kronecker_instability_witness(
    const PrimeField& k, const KroneckerModule<PrimeField>& km) {
    if (km.m <= 0 || km.n <= 0) throw std::invalid_argument("kronecker: empty module");
    for (int a = 1; a < km.m; ++a) {
        long long req = (static_cast<long long>(km.n) * a + km.m - 1) / km.m;
        int t = static_cast<int>(req) - 1; // max allowed image dimension of a violator
        std::optional<KroneckerWitness> found;
        auto check_perp = [&](const std::vector<std::vector<PrimeField::Elem>>& perp) {
            // A_T = common kernel of w M_X, w M_Y, w M_Z over covectors w of T-perp
            std::vector<std::vector<PrimeField::Elem>> rows;
            for (const auto& w : perp) {
                auto wrow = [&](const Matrix<PrimeField>& m) {
                    std::vector<PrimeField::Elem> r(static_cast<size_t>(km.m), 0);
                    for (int j = 0; j < km.m; ++j)
                        for (int i = 0; i < km.n; ++i)
                            r[j] = k.add(r[j], k.mul(w[i], m.at(i, j)));
                    return r;
                };
                rows.push_back(wrow(km.mx));
                rows.push_back(wrow(km.my));
                rows.push_back(wrow(km.mz));
            }
            auto ker = kernel_basis(k, matrix_from_rows(k, rows, km.m));
            if (static_cast<int>(ker.size()) >= a) {
                KroneckerWitness w;
                w.subspace_basis.assign(ker.begin(), ker.begin() + a);
                w.image_dim = kronecker_image_dim(k, km, w.subspace_basis);
                found = std::move(w);
                return true;
            }
            return false;
        };
        if (t == 0) {
            // image must vanish entirely: T-perp is the full dual space
            auto id = Matrix<PrimeField>::identity(km.n, k);
            std::vector<std::vector<PrimeField::Elem>> full;
            for (int i = 0; i < km.n; ++i) full.push_back(id.row(i));
            if (check_perp(full) && found) return found;
        } else if (t < km.n) {
            if (for_each_subspace(k, km.n, km.n - t, check_perp) && found) return found;
        }
        // t >= n never constrains: any subspace satisfies the bound at this a
    }
    return std::nullopt;
}

inline bool kronecker_semistable(const PrimeField& k, const KroneckerModule<PrimeField>& km) {
    return !kronecker_instability_witness(k, km).has_value();
}

} // namespace strata
