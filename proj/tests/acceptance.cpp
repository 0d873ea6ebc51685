// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Everything is exact; no tolerances anywhere.

#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "strata/dimensions.hpp"
#include "strata/geometry.hpp"
#include "strata/io.hpp"

using namespace strata;

namespace {

int failures = 0;

void criterion(int n, const std::string& what, const std::function<void()>& body) {
    try {
        body();
        std::cout << "criterion " << n << ": PASS  " << what << "\n";
    } catch (const std::exception& e) {
        ++failures;
        std::cout << "criterion " << n << ": FAIL  " << what << " -- " << e.what() << "\n";
    }
}

void expect(bool ok, const std::string& msg) {
    if (!ok) throw std::runtime_error(msg);
}

std::vector<std::vector<Morphism<PrimeField>>> g_samples(7);

// Independent exhaustive semistability oracle (see test_kronecker.cpp for
// the unit-test twin): lists every proper nonzero subspace of F_p^m by
// scanning all a x m matrices and deduplicating their row spaces, then
// checks the slope inequality on each one directly.
const std::vector<std::vector<std::vector<PrimeField::Elem>>>& all_proper_subspaces(
    const PrimeField& k, int m) {
    static std::map<std::pair<std::uint64_t, int>,
                    std::vector<std::vector<std::vector<PrimeField::Elem>>>>
        cache;
    auto key = std::make_pair(k.modulus(), m);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto p = k.modulus();
    std::vector<std::vector<std::vector<PrimeField::Elem>>> spaces;
    std::set<std::vector<PrimeField::Elem>> seen;
    for (int a = 1; a < m; ++a) {
        long long total = 1;
        for (int t = 0; t < a * m; ++t) total *= p;
        for (long long code = 0; code < total; ++code) {
            Matrix<PrimeField> mat(a, m, 0);
            long long c = code;
            for (int i = 0; i < a; ++i)
                for (int j = 0; j < m; ++j) {
                    mat.at(i, j) = static_cast<PrimeField::Elem>(c % p);
                    c /= p;
                }
            if (static_cast<int>(rref(k, mat).size()) != a) continue;
            std::vector<PrimeField::Elem> sig;
            for (int i = 0; i < a; ++i)
                for (int j = 0; j < m; ++j) sig.push_back(mat.at(i, j));
            sig.push_back(static_cast<PrimeField::Elem>(a));
            if (!seen.insert(sig).second) continue;
            std::vector<std::vector<PrimeField::Elem>> basis;
            for (int i = 0; i < a; ++i) basis.push_back(mat.row(i));
            spaces.push_back(std::move(basis));
        }
    }
    return cache[key] = std::move(spaces);
}

bool oracle_semistable(const PrimeField& k, const KroneckerModule<PrimeField>& km) {
    for (const auto& basis : all_proper_subspaces(k, km.m)) {
        std::vector<std::vector<PrimeField::Elem>> images;
        for (const auto& v : basis) {
            images.push_back(mat_vec(k, km.mx, v));
            images.push_back(mat_vec(k, km.my, v));
            images.push_back(mat_vec(k, km.mz, v));
        }
        long long a = static_cast<long long>(basis.size());
        if (km.m * static_cast<long long>(rank(k, matrix_from_rows(k, images, km.n))) <
            km.n * a)
            return false;
    }
    return true;
}

} // namespace

int main() {
    PrimeField k(101);

    criterion(1, "table reproduction: 100 samples per stratum, exact triples", [&] {
        for (int s = 0; s < 7; ++s) {
            auto label = static_cast<Stratum>(s);
            auto batch = stratified_sample(k, label, 100, split_seed(1001, s));
            auto want = expected_profile(label);
            for (const auto& phi : batch.samples) {
                auto p = cohomology_profile(k, phi);
                expect(p.h0_minus1 == want.h0_minus1 && p.h1_0 == want.h1_0 &&
                           p.h0_omega == want.h0_omega,
                       std::string("profile mismatch on ") + stratum_name(label));
            }
            g_samples[s] = std::move(batch.samples);
        }
    });

    criterion(2, "Hilbert polynomial: chi(F(m)) = 6m+2 for m in {-2..3} on every sample", [&] {
        for (int s = 0; s < 7; ++s) {
            expect(!g_samples[s].empty(), "criterion 1 samples unavailable");
            for (const auto& phi : g_samples[s])
                for (int m = -2; m <= 3; ++m)
                    expect(h0_twist(k, phi, m) - h1_twist(k, phi, m) == 6 * m + 2,
                           "Euler characteristic off at twist " + std::to_string(m));
        }
    });

    criterion(3, "h1(F(1)) = 1 exactly on X6 samples, 0 on X0..X5", [&] {
        for (int s = 0; s < 7; ++s) {
            expect(!g_samples[s].empty(), "criterion 1 samples unavailable");
            for (const auto& phi : g_samples[s])
                expect(h1_twist(k, phi, 1) == (s == 6 ? 1 : 0),
                       std::string("h1(F(1)) wrong on ") + stratum_name(static_cast<Stratum>(s)));
        }
    });

    criterion(4, "dimension ledger: (37,34,34,32,32,30,28), codim 37-dim, routes agree", [&] {
        const int dims[7] = {37, 34, 34, 32, 32, 30, 28};
        const int codims[7] = {0, 3, 3, 5, 5, 7, 9};
        const auto& table = dimension_table(); // construction re-checks both routes
        for (int s = 0; s < 7; ++s) {
            expect(table[s].dimension == dims[s], "dimension mismatch");
            expect(table[s].codimension == codims[s], "codimension mismatch");
            expect(table[s].parameter_dim || table[s].fibration_dim, "no derivation route");
            if (table[s].parameter_dim)
                expect(*table[s].parameter_dim == dims[s], "parameter route disagrees");
            if (table[s].fibration_dim)
                expect(*table[s].fibration_dim == dims[s], "fibration route disagrees");
        }
    });

    criterion(5, "Kronecker decider equals exhaustive oracle over F2, F3", [&] {
        for (std::uint64_t p : {2ull, 3ull}) {
            PrimeField kp(p);
            for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 3}, {4, 3}, {2, 2}}) {
                std::mt19937_64 rng(split_seed(5000 + p, static_cast<std::uint64_t>(m * 8 + n)));
                std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
                for (int trial = 0; trial < 100; ++trial) {
                    KroneckerModule<PrimeField> km;
                    km.m = m;
                    km.n = n;
                    km.mx = Matrix<PrimeField>(n, m, 0);
                    km.my = Matrix<PrimeField>(n, m, 0);
                    km.mz = Matrix<PrimeField>(n, m, 0);
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < m; ++j) {
                            km.mx.at(i, j) = dist(rng);
                            km.my.at(i, j) = dist(rng);
                            km.mz.at(i, j) = dist(rng);
                        }
                    expect(kronecker_semistable(kp, km) == oracle_semistable(kp, km),
                           "decider/oracle disagreement at p=" + std::to_string(p) + " (m,n)=(" +
                               std::to_string(m) + "," + std::to_string(n) + ")");
                }
            }
        }
    });

    criterion(6, "pattern deciders: certificates replay, non-reachable survives 1000 probes", [&] {
        auto probe_x0 = [&](const Morphism<PrimeField>& phi, const X0Decision& dec,
                            std::uint64_t seed) {
            for (int probe = 0; probe < 1000; ++probe) {
                auto g = random_equivalence(k, phi, split_seed(seed, probe));
                auto moved = apply_equivalence(k, g, phi);
                if (!dec.pattern1.reachable)
                    expect(!has_x0_pattern(k, moved, 1), "probe reached pattern 1");
                if (!dec.pattern2.reachable)
                    expect(!has_x0_pattern(k, moved, 2), "probe reached pattern 2");
                if (!dec.pattern3.reachable)
                    expect(!has_x0_pattern(k, moved, 3), "probe reached pattern 3");
            }
        };
        // 150 generic + 50 planted samples per decider
        for (int trial = 0; trial < 200; ++trial) {
            auto seed = split_seed(6001, trial);
            auto phi = random_morphism(k, shape_of(Stratum::X0), seed);
            if (trial % 4 == 3) {
                int pattern = trial % 3 + 1;
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j) {
                        bool zero = (pattern == 1 && i == 0 && j >= 1) ||
                                    (pattern == 2 && i <= 1 && j >= 2) ||
                                    (pattern == 3 && i <= 2 && j == 3);
                        if (zero) phi.at(i, j) = poly_zero(k, phi.required_degree(i, j));
                    }
                phi = apply_equivalence(k, random_equivalence(k, phi, seed + 1), phi);
            }
            auto dec = x0_patterns(k, phi);
            int idx = 1;
            for (const auto* d : {&dec.pattern1, &dec.pattern2, &dec.pattern3}) {
                if (d->reachable && d->certificate) {
                    auto replay = apply_equivalence(k, *d->certificate, phi);
                    expect(has_x0_pattern(k, replay, idx),
                           "x0 certificate failed to replay pattern " + std::to_string(idx));
                } else if (d->reachable) {
                    expect(!d->note.empty(), "reachable without certificate or note");
                }
                ++idx;
            }
            probe_x0(phi, dec, seed + 2);
        }
        for (int trial = 0; trial < 200; ++trial) {
            auto seed = split_seed(6002, trial);
            auto phi = random_morphism(k, shape_of(Stratum::X2), seed);
            if (trial % 4 == 3) {
                int form = trial % 3 + 1;
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) {
                        bool zero = (form == 1 && i >= 1 && j == 2) ||
                                    (form == 2 && i >= 1 && j == 1) ||
                                    (form == 3 && i == 2 && j >= 1);
                        if (zero) phi.at(i, j) = poly_zero(k, phi.required_degree(i, j));
                    }
                phi = apply_equivalence(k, random_equivalence(k, phi, seed + 1), phi);
            }
            auto dec = x2_forms(k, phi);
            int idx = 1;
            for (const auto* d : {&dec.form1, &dec.form2, &dec.form3}) {
                if (d->reachable) {
                    expect(d->certificate.has_value(), "x2 reachable without certificate");
                    auto replay = apply_equivalence(k, *d->certificate, phi);
                    expect(has_x2_form(k, replay, idx),
                           "x2 certificate failed to replay form " + std::to_string(idx));
                }
                ++idx;
            }
            for (int probe = 0; probe < 1000; ++probe) {
                auto g = random_equivalence(k, phi, split_seed(seed + 2, probe));
                auto moved = apply_equivalence(k, g, phi);
                if (!dec.form1.reachable) expect(!has_x2_form(k, moved, 1), "probe reached form 1");
                if (!dec.form2.reachable) expect(!has_x2_form(k, moved, 2), "probe reached form 2");
                if (!dec.form3.reachable) expect(!has_x2_form(k, moved, 3), "probe reached form 3");
            }
        }
    });

    criterion(7, "constructors: x6 over 100 seeds, x4 over 50 seeds, exact incidence", [&] {
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
            std::mt19937_64 rng(split_seed(7001, seed));
            auto x = strata::detail::random_point(k, rng);
            auto phi = construct_x6(k, x, seed);
            expect(k.is_zero(eval_at(k, determinant(k, phi), x)), "x6 det does not vanish at x");
            expect(classify(k, phi).outcome == "X6", "x6 output misclassified");
        }
        std::vector<PointP2<PrimeField>> pts{
            normalize_point(k, {1, 0, 0}), normalize_point(k, {0, 1, 0}),
            normalize_point(k, {0, 0, 1}), normalize_point(k, {1, 1, 1}),
            normalize_point(k, {1, 2, 3})};
        auto conic = conic_through(k, pts);
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            auto phi = construct_x4(k, pts, seed);
            auto d = determinant(k, phi);
            for (const auto& p : pts)
                expect(k.is_zero(eval_at(k, d, p)), "x4 det does not vanish at an input point");
            auto block = poly_sub(k, poly_mul(k, phi.at(0, 1), phi.at(1, 2)),
                                  poly_mul(k, phi.at(0, 2), phi.at(1, 1)));
            int i0 = 0;
            while (k.is_zero(conic.coeffs[i0])) ++i0;
            auto c = k.div(block.coeffs[i0], conic.coeffs[i0]);
            expect(!k.is_zero(c) && block == poly_scale(k, c, conic),
                   "x4 linear block quadric is not the conic up to scalar");
            expect(classify(k, phi).outcome == "X4", "x4 output misclassified");
        }
    });

    criterion(8, "duality: dual of every template has Hilbert polynomial 6m+4", [&] {
        for (int s = 0; s < 7; ++s) {
            expect(!g_samples[s].empty(), "criterion 1 samples unavailable");
            const auto& phi = g_samples[s].front();
            auto dual = dual_resolution(k, phi);
            auto h = hilbert_polynomial(k, dual);
            expect(h.first == 6 && h.second == 4, "dual Hilbert polynomial is not 6m+4");
        }
    });

    criterion(9, "h0 rank formula equals the shape formula whenever injectivity holds", [&] {
        for (int s = 0; s < 7; ++s) {
            expect(!g_samples[s].empty(), "criterion 1 samples unavailable");
            const auto& shape = shape_of(static_cast<Stratum>(s));
            for (int i = 0; i < 3 && i < static_cast<int>(g_samples[s].size()); ++i) {
                const auto& phi = g_samples[s][i];
                for (int m = -2; m <= 3; ++m) {
                    long long shape_formula = 0;
                    for (int b : shape.target.twists) shape_formula += h0_line(b + m);
                    for (int a : shape.source.twists) shape_formula -= h0_line(a + m);
                    expect(h0_twist(k, phi, m) == shape_formula,
                           "rank formula disagrees with the shape formula");
                }
            }
        }
    });

    std::cout << (failures == 0 ? "ACCEPTANCE: all criteria passed"
                                : "ACCEPTANCE: " + std::to_string(failures) + " criteria failed")
              << "\n";
    return failures == 0 ? 0 : 1;
}
