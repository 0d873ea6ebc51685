#include <pybind11/pybind11.h>

#include "strata/dimensions.hpp"
#include "strata/io.hpp"

namespace py = pybind11;
using namespace strata;

namespace {

std::string classify_str(const std::string& text) {
    auto file = morphism_from_json(json::parse(text));
    auto rep = classify_file(file);
    return report_to_json(rep, file.field).dump();
}

std::string cohomology_str(const std::string& text, int twist) {
    auto file = morphism_from_json(json::parse(text));
    json row{{"twist", twist}};
    if (file.prime) {
        PrimeField k(file.field.prime);
        row["h0"] = h0_twist(k, *file.prime, twist);
        row["h1"] = h1_twist(k, *file.prime, twist);
    } else {
        RationalField k;
        row["h0"] = h0_twist(k, *file.rational, twist);
        row["h1"] = h1_twist(k, *file.rational, twist);
    }
    return row.dump();
}

std::string dimension_table_str() {
    json rows = json::array();
    for (const auto& e : dimension_table())
        rows.push_back({{"label", e.label},
                        {"dimension", e.dimension},
                        {"codimension", e.codimension}});
    return rows.dump();
}

std::string sample_str(const std::string& label_name, std::uint64_t prime, int count,
                       std::uint64_t seed) {
    auto label = stratum_from_name(label_name);
    if (!label) throw std::invalid_argument("unknown stratum label: " + label_name);
    auto spec = FieldSpec::make_prime(prime);
    PrimeField k(prime);
    auto batch = stratified_sample(k, *label, count, seed);
    json out{{"attempts", batch.attempts}, {"rejections", batch.rejections}};
    json samples = json::array();
    for (const auto& phi : batch.samples) {
        MorphismFile f;
        f.field = spec;
        f.prime = phi;
        samples.push_back(morphism_to_json(f));
    }
    out["samples"] = std::move(samples);
    return out.dump();
}

std::string construct_x6_str(std::uint64_t prime, const std::string& point_text,
                             std::uint64_t seed) {
    auto spec = FieldSpec::make_prime(prime);
    PrimeField k(prime);
    auto pts = points_from_json(k, json::parse(point_text));
    if (pts.size() != 1) throw std::invalid_argument("construct_x6 needs one point");
    MorphismFile f;
    f.field = spec;
    f.prime = construct_x6(k, pts[0], seed);
    return morphism_to_json(f).dump();
}

std::string construct_x4_str(std::uint64_t prime, const std::string& points_text,
                             std::uint64_t seed) {
    auto spec = FieldSpec::make_prime(prime);
    PrimeField k(prime);
    auto pts = points_from_json(k, json::parse(points_text));
    if (pts.size() != 5) throw std::invalid_argument("construct_x4 needs five points");
    MorphismFile f;
    f.field = spec;
    f.prime = construct_x4(k, pts, seed);
    return morphism_to_json(f).dump();
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact classification of plane sheaf resolutions";
    m.attr("__version__") = kVersion;
    m.def("classify_json", &classify_str, py::arg("morphism_json"),
          "classify a morphism given as a JSON string; returns the report as JSON");
    m.def("cohomology_json", &cohomology_str, py::arg("morphism_json"), py::arg("twist"),
          "h0 and h1 of the cokernel at one twist, as JSON");
    m.def("dimension_table_json", &dimension_table_str,
          "the stratum dimension ledger as JSON");
    m.def("sample_json", &sample_str, py::arg("label"), py::arg("prime"), py::arg("count"),
          py::arg("seed"), "rejection-sample morphisms from one stratum, as JSON");
    m.def("construct_x6_json", &construct_x6_str, py::arg("prime"), py::arg("point_json"),
          py::arg("seed"), "build an X6 matrix whose support passes through a point");
    m.def("construct_x4_json", &construct_x4_str, py::arg("prime"), py::arg("points_json"),
          py::arg("seed"), "build an X4 matrix through five given points");
}
