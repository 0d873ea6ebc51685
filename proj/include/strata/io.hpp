#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "strata/classify.hpp"
#include "strata/geometry.hpp"

namespace strata {

inline constexpr const char* kVersion = "0.1.0";

using nlohmann::json;

inline json field_to_json(const FieldSpec& spec) {
    if (spec.kind == FieldSpec::Kind::Rational) return json("rational");
    return json{{"prime", spec.prime}};
}

inline FieldSpec field_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "rational") return FieldSpec::make_rational();
        throw std::invalid_argument("unknown field tag: " + j.get<std::string>());
    }
    if (j.is_object() && j.contains("prime"))
        return FieldSpec::make_prime(j["prime"].get<std::uint64_t>());
    throw std::invalid_argument("field must be \"rational\" or {\"prime\": p}");
}

/// Parsed morphism file; exactly one of the two morphisms is set.
struct MorphismFile {
    FieldSpec field;
    std::optional<Morphism<PrimeField>> prime;
    std::optional<Morphism<RationalField>> rational;
};

namespace detail {

template <class F>
Morphism<F> morphism_from_json_impl(const F& k, const json& j) {
    Morphism<F> phi;
    phi.source.twists = j.at("source").get<std::vector<int>>();
    phi.target.twists = j.at("target").get<std::vector<int>>();
    const auto& rows = j.at("entries");
    if (!rows.is_array() || static_cast<int>(rows.size()) != phi.rows())
        throw std::invalid_argument("entries must have one row per target summand");
    phi.entries.reserve(static_cast<size_t>(phi.rows()) * phi.cols());
    for (int i = 0; i < phi.rows(); ++i) {
        const auto& row = rows[i];
        if (!row.is_array() || static_cast<int>(row.size()) != phi.cols())
            throw std::invalid_argument("entry row " + std::to_string(i) + " has wrong length");
        for (int j2 = 0; j2 < phi.cols(); ++j2) {
            auto p = parse_poly(k, row[j2].get<std::string>());
            phi.entries.push_back(coerce_cell(k, p, phi.required_degree(i, j2)));
        }
    }
    return phi;
}

template <class F>
json morphism_to_json_impl(const F& k, const Morphism<F>& phi, const FieldSpec& spec) {
    json rows = json::array();
    for (int i = 0; i < phi.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < phi.cols(); ++j) row.push_back(poly_to_string(k, phi.at(i, j)));
        rows.push_back(std::move(row));
    }
    return json{{"field", field_to_json(spec)},
                {"source", phi.source.twists},
                {"target", phi.target.twists},
                {"entries", std::move(rows)}};
}

} // namespace detail

inline MorphismFile morphism_from_json(const json& j) {
    MorphismFile f;
    f.field = field_from_json(j.at("field"));
    if (f.field.kind == FieldSpec::Kind::Prime) {
        PrimeField k(f.field.prime);
        f.prime = detail::morphism_from_json_impl(k, j);
    } else {
        RationalField k;
        f.rational = detail::morphism_from_json_impl(k, j);
    }
    return f;
}

inline json morphism_to_json(const MorphismFile& f) {
    if (f.prime) {
        PrimeField k(f.field.prime);
        return detail::morphism_to_json_impl(k, *f.prime, f.field);
    }
    RationalField k;
    return detail::morphism_to_json_impl(k, *f.rational, f.field);
}

inline json report_to_json(const StratumReport& rep, const FieldSpec& spec,
                           std::optional<std::uint64_t> seed = std::nullopt) {
    json j;
    j["version"] = kVersion;
    j["field"] = field_to_json(spec);
    if (seed) j["seed"] = *seed;
    j["label"] = rep.outcome;
    json preds = json::array();
    for (const auto& p : rep.predicates) preds.push_back({{"name", p.name}, {"value", p.value}});
    j["predicates"] = std::move(preds);
    json certs = json::array();
    for (const auto& c : rep.certificates) {
        json cj{{"name", c.name}, {"witness", c.witness}};
        if (c.equivalence && spec.kind == FieldSpec::Kind::Prime) {
            PrimeField k(spec.prime);
            auto autos = [&](const Morphism<PrimeField>& a) {
                json rows = json::array();
                for (int i = 0; i < a.rows(); ++i) {
                    json row = json::array();
                    for (int jj = 0; jj < a.cols(); ++jj)
                        row.push_back(poly_to_string(k, a.at(i, jj)));
                    rows.push_back(std::move(row));
                }
                return rows;
            };
            cj["source_auto"] = autos(c.equivalence->source_auto);
            cj["target_auto"] = autos(c.equivalence->target_auto);
        }
        certs.push_back(std::move(cj));
    }
    j["certificates"] = std::move(certs);
    if (rep.cohomology) {
        j["cohomology"] = {{"h0m1", rep.cohomology->h0_minus1},
                           {"h1", rep.cohomology->h1_0},
                           {"h0omega", rep.cohomology->h0_omega},
                           {"h1p1", rep.cohomology->h1_plus1}};
    } else {
        j["cohomology"] = nullptr;
    }
    j["det"] = rep.det;
    if (rep.table_mismatch) j["table_mismatch"] = true;
    j["notes"] = rep.notes;
    return j;
}

/// Points file: JSON list of coordinate triples, each coordinate a
/// field-parsed scalar string.
template <class F>
std::vector<PointP2<F>> points_from_json(const F& k, const json& j) {
    if (!j.is_array()) throw std::invalid_argument("points file must be a JSON list");
    std::vector<PointP2<F>> pts;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 3)
            throw std::invalid_argument("each point needs three coordinates");
        std::array<typename F::Elem, 3> c;
        for (int i = 0; i < 3; ++i) {
            auto p = parse_poly(k, t[i].get<std::string>());
            if (p.degree != 0) throw std::invalid_argument("point coordinates must be scalars");
            c[i] = p.coeffs[0];
        }
        pts.push_back(normalize_point(k, c));
    }
    return pts;
}

// ---------------------------------------------------------------------------
// Rational inputs: classification by reduction modulo several good primes
// ---------------------------------------------------------------------------

inline const std::vector<std::uint64_t>& reduction_prime_pool() {
    static const std::vector<std::uint64_t> pool{101, 103, 107, 109, 113, 127};
    return pool;
}

inline Morphism<PrimeField> reduce_mod(const PrimeField& k, const RationalField&,
                                       const Morphism<RationalField>& phi) {
    Morphism<PrimeField> r;
    r.source = phi.source;
    r.target = phi.target;
    for (const auto& e : phi.entries) {
        HomPoly<PrimeField> p(e.degree);
        for (size_t i = 0; i < e.coeffs.size(); ++i) p.coeffs[i] = k.from_rational(e.coeffs[i]);
        r.entries.push_back(std::move(p));
    }
    return r;
}

/// Classifies a rational matrix through reduction mod three distinct good
/// primes; unanimity is required, otherwise the outcome is marked
/// indeterminate.
inline StratumReport classify_rational(const Morphism<RationalField>& phi) {
    RationalField q;
    std::vector<StratumReport> reports;
    std::vector<std::uint64_t> used;
    for (std::uint64_t p : reduction_prime_pool()) {
        if (used.size() == 3) break;
        PrimeField k(p);
        try {
            auto r = classify(k, reduce_mod(k, q, phi));
            reports.push_back(std::move(r));
            used.push_back(p);
        } catch (const std::domain_error&) {
            // denominator divisible by p; try the next prime
        }
    }
    if (used.size() < 3) throw std::invalid_argument("no three primes avoid the denominators");
    auto agree = [](const StratumReport& a, const StratumReport& b) {
        if (a.outcome != b.outcome) return false;
        if (a.predicates.size() != b.predicates.size()) return false;
        for (size_t i = 0; i < a.predicates.size(); ++i)
            if (a.predicates[i].name != b.predicates[i].name ||
                a.predicates[i].value != b.predicates[i].value)
                return false;
        if (a.cohomology.has_value() != b.cohomology.has_value()) return false;
        return !a.cohomology || *a.cohomology == *b.cohomology;
    };
    if (!agree(reports[0], reports[1]) || !agree(reports[0], reports[2])) {
        StratumReport rep;
        rep.outcome = "indeterminate (bad prime suspected)";
        for (size_t i = 0; i < used.size(); ++i)
            rep.notes.push_back("mod " + std::to_string(used[i]) + ": " + reports[i].outcome);
        return rep;
    }
    auto rep = reports[0];
    for (auto& c : rep.certificates) {
        if (c.equivalence) c.witness += " (mod " + std::to_string(used[0]) + ")";
        c.equivalence.reset();
    }
    if (phi.rows() == phi.cols()) rep.det = poly_to_string(q, determinant(q, phi));
    rep.notes.push_back("rational input: unanimous over primes " + std::to_string(used[0]) + ", " +
                        std::to_string(used[1]) + ", " + std::to_string(used[2]));
    return rep;
}

inline StratumReport classify_file(const MorphismFile& f) {
    if (f.prime) {
        PrimeField k(f.field.prime);
        return classify(k, *f.prime);
    }
    return classify_rational(*f.rational);
}

} // namespace strata
