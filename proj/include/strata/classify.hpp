#pragma once

#include <optional>
#include <string>
#include <vector>

#include "strata/cohomology.hpp"
#include "strata/deciders.hpp"
#include "strata/kronecker.hpp"
#include "strata/morphism.hpp"

namespace strata {

/// Expected cohomological profile per stratum.
inline CohomologyProfile expected_profile(Stratum s) {
    static const long long table[7][4] = {
        {0, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 1, 0}, {0, 1, 2, 0},
        {1, 1, 3, 0}, {1, 2, 4, 0}, {2, 3, 6, 1},
    };
    const auto& r = table[static_cast<int>(s)];
    CohomologyProfile p;
    p.h0_minus1 = r[0];
    p.h1_0 = r[1];
    p.h0_omega = r[2];
    p.h1_plus1 = r[3];
    return p;
}

struct PredicateOutcome {
    std::string name;
    bool value = false;
};

struct CertificateRecord {
    std::string name;
    std::string witness;
    std::optional<EquivalenceElement<PrimeField>> equivalence;
};

struct StratumReport {
    std::string outcome; // "X0".."X6", "rejected", "unrecognized-shape"
    std::optional<Stratum> shape; // matched resolution template
    std::vector<PredicateOutcome> predicates;
    std::vector<CertificateRecord> certificates;
    std::optional<CohomologyProfile> cohomology;
    std::string det;
    bool table_mismatch = false;
    std::vector<std::string> notes;

    bool classified() const { return shape && outcome == stratum_name(*shape); }
};

namespace detail {

inline std::vector<int> sorted(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

/// Permutation sending input twist positions to the template order.
inline std::optional<std::vector<int>> twist_permutation(const std::vector<int>& tpl,
                                                         const std::vector<int>& in) {
    if (tpl.size() != in.size()) return std::nullopt;
    std::vector<int> perm(tpl.size());
    std::vector<bool> used(in.size(), false);
    for (size_t i = 0; i < tpl.size(); ++i) {
        bool ok = false;
        for (size_t j = 0; j < in.size(); ++j) {
            if (!used[j] && in[j] == tpl[i]) {
                perm[i] = static_cast<int>(j);
                used[j] = true;
                ok = true;
                break;
            }
        }
        if (!ok) return std::nullopt;
    }
    return perm;
}

} // namespace detail

/// Matches the twist multisets against the seven templates and reorders
/// rows and columns into template order.
template <class F>
std::optional<std::pair<Stratum, Morphism<F>>> canonical_shape(const F& k,
                                                               const Morphism<F>& phi) {
    for (const auto& shape : stratum_shapes()) {
        auto rp = detail::twist_permutation(shape.target.twists, phi.target.twists);
        auto cp = detail::twist_permutation(shape.source.twists, phi.source.twists);
        if (!rp || !cp) continue;
        auto out = zero_morphism(k, shape.source, shape.target);
        for (int i = 0; i < out.rows(); ++i)
            for (int j = 0; j < out.cols(); ++j) out.at(i, j) = phi.at((*rp)[i], (*cp)[j]);
        return {{shape.label, std::move(out)}};
    }
    return std::nullopt;
}

namespace detail {

inline std::string witness_to_string(const KroneckerWitness& w) {
    std::string s = "subspace";
    for (const auto& v : w.subspace_basis) s += " " + vec_to_string(v);
    s += " image dim " + std::to_string(w.image_dim);
    return s;
}

inline void pattern_results(StratumReport& rep, const std::string& prefix,
                            std::initializer_list<std::pair<const char*, const PatternDecision*>> ds) {
    for (const auto& [name, d] : ds) {
        rep.predicates.push_back({prefix + "." + name + "_free", !d->reachable});
        if (d->reachable) {
            CertificateRecord c;
            c.name = prefix + "." + name;
            c.witness = d->witness.empty() ? d->note : d->witness;
            c.equivalence = d->certificate;
            rep.certificates.push_back(std::move(c));
        }
        if (!d->note.empty()) rep.notes.push_back(prefix + "." + name + ": " + d->note);
    }
}

} // namespace detail

/// Full classification of a resolution matrix over a prime field.
/// Degree-illegal entries throw; every other anomaly is reported in-band.
inline StratumReport classify(const PrimeField& k, const Morphism<PrimeField>& phi) {
    auto violations = validate_morphism(k, phi);
    if (!violations.empty()) {
        std::string msg = "degree-violating cells:";
        for (const auto& v : violations)
            msg += " (" + std::to_string(v.row) + "," + std::to_string(v.col) + ") expects " +
                   std::to_string(v.required_degree) + " got " + std::to_string(v.actual_degree);
        throw std::invalid_argument(msg);
    }

    StratumReport rep;
    auto canon = canonical_shape(k, phi);
    if (!canon) {
        rep.outcome = "unrecognized-shape";
        return rep;
    }
    auto [label, c] = *canon;
    rep.shape = label;

    auto d = determinant(k, c);
    rep.det = poly_to_string(k, d);
    bool inj = !poly_is_zero(k, d);
    rep.predicates.push_back({"injective", inj});
    if (!inj) {
        rep.outcome = "rejected";
        return rep;
    }

    bool member = true;
    auto pred = [&](const std::string& name, bool v) {
        rep.predicates.push_back({name, v});
        member = member && v;
    };

    switch (label) {
        case Stratum::X0: {
            auto dec = x0_patterns(k, c);
            detail::pattern_results(rep, "x0",
                                    {{"pattern1", &dec.pattern1},
                                     {"pattern2", &dec.pattern2},
                                     {"pattern3", &dec.pattern3}});
            member = dec.pattern_free();
            break;
        }
        case Stratum::X1: {
            bool corner = true;
            for (int i = 0; i < 3; ++i) corner = corner && poly_is_zero(k, c.at(i, 4));
            pred("corner_block_zero", corner);
            auto km = kronecker_from_linear(k, c, 0, 3, 0, 4);
            auto w = kronecker_instability_witness(k, km);
            pred("linear_block_semistable", !w.has_value());
            if (w) rep.certificates.push_back(
                {"x1.kronecker_witness", detail::witness_to_string(*w), std::nullopt});
            pred("cokernel_pair_independent",
                 forms_independent(k, std::vector<HomPoly<PrimeField>>{c.at(3, 4), c.at(4, 4)}));
            break;
        }
        case Stratum::X2: {
            auto dec = x2_forms(k, c);
            detail::pattern_results(
                rep, "x2",
                {{"form1", &dec.form1}, {"form2", &dec.form2}, {"form3", &dec.form3}});
            member = dec.form_free();
            break;
        }
        case Stratum::X3: {
            pred("corner_block_zero",
                 poly_is_zero(k, c.at(0, 2)) && poly_is_zero(k, c.at(0, 3)));
            bool lin_nonzero = !poly_is_zero(k, c.at(0, 1));
            pred("pivot_linear_nonzero", lin_nonzero);
            pred("quadratic_not_multiple",
                 lin_nonzero && !poly_divides(k, c.at(0, 1), c.at(0, 0)));
            pred("minors_independent", minors_independent(k, c, 1, 2));
            break;
        }
        case Stratum::X4: {
            auto dec = x4_condition(k, c);
            pred("conic_nonzero", dec.conic_nonzero);
            pred("minors_independent_mod_conic", dec.minors_independent_mod_conic);
            break;
        }
        case Stratum::X5: {
            pred("top_row_independent",
                 forms_independent(k, std::vector<HomPoly<PrimeField>>{c.at(0, 0), c.at(0, 1)}));
            bool lin_nonzero = !poly_is_zero(k, c.at(1, 2));
            pred("middle_linear_nonzero", lin_nonzero);
            pred("quadratic_not_multiple",
                 lin_nonzero && !poly_divides(k, c.at(1, 2), c.at(2, 2)));
            break;
        }
        case Stratum::X6: {
            pred("linear_column_independent",
                 forms_independent(k, std::vector<HomPoly<PrimeField>>{c.at(0, 1), c.at(1, 1)}));
            break;
        }
    }

    rep.cohomology = cohomology_profile(k, c);
    rep.outcome = member ? stratum_name(label) : "rejected";
    if (member && !(*rep.cohomology == expected_profile(label))) {
        rep.table_mismatch = true;
        rep.notes.push_back("cohomology profile disagrees with the classification table");
    }
    return rep;
}

/// Twist multisets of the seven templates are pairwise distinct, so shape
/// matching is unambiguous.
inline bool shapes_pairwise_distinct() {
    const auto& shapes = stratum_shapes();
    for (size_t i = 0; i < shapes.size(); ++i)
        for (size_t j = i + 1; j < shapes.size(); ++j) {
            if (detail::sorted(shapes[i].source.twists) == detail::sorted(shapes[j].source.twists) &&
                detail::sorted(shapes[i].target.twists) == detail::sorted(shapes[j].target.twists))
                return false;
        }
    return true;
}

} // namespace strata
