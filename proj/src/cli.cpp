#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "strata/dimensions.hpp"
#include "strata/io.hpp"

namespace strata {

namespace {

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << text;
}

PointP2<PrimeField> parse_point_arg(const PrimeField& k, const std::string& arg) {
    std::array<PrimeField::Elem, 3> c;
    std::stringstream ss(arg);
    std::string tok;
    for (int i = 0; i < 3; ++i) {
        if (!std::getline(ss, tok, ','))
            throw std::invalid_argument("point needs three comma-separated coordinates");
        auto p = parse_poly(k, tok);
        if (p.degree != 0) throw std::invalid_argument("point coordinates must be scalars");
        c[i] = p.coeffs[0];
    }
    return normalize_point(k, c);
}

int cmd_classify(const std::string& path, std::ostream& out) {
    auto file = morphism_from_json(load_json(path));
    auto rep = classify_file(file);
    out << report_to_json(rep, file.field).dump() << "\n";
    return 0;
}

template <class F>
json cohom_rows(const F& k, const Morphism<F>& phi, std::optional<int> twist) {
    json rows = json::array();
    int lo = twist.value_or(-2), hi = twist.value_or(3);
    for (int m = lo; m <= hi; ++m)
        rows.push_back({{"twist", m}, {"h0", h0_twist(k, phi, m)}, {"h1", h1_twist(k, phi, m)}});
    return rows;
}

int cmd_cohom(const std::string& path, std::optional<int> twist, std::ostream& out) {
    auto file = morphism_from_json(load_json(path));
    json j{{"version", kVersion}, {"field", field_to_json(file.field)}};
    if (file.prime) {
        PrimeField k(file.field.prime);
        j["twists"] = cohom_rows(k, *file.prime, twist);
        j["h0omega"] = h0_omega(k, *file.prime);
    } else {
        RationalField k;
        j["twists"] = cohom_rows(k, *file.rational, twist);
        j["h0omega"] = h0_omega(k, *file.rational);
    }
    out << j.dump() << "\n";
    return 0;
}

int cmd_table(std::uint64_t prime, int samples, std::uint64_t seed, const std::string& out_path,
              std::ostream& out) {
    PrimeField k(prime);
    json rows = json::array();
    std::string md = "| stratum | samples | h0(F(-1)) | h1(F) | h0(F@Omega1(1)) | h1(F(1)) | agrees |\n"
                     "|---|---|---|---|---|---|---|\n";
    for (int s = 0; s < 7; ++s) {
        auto label = static_cast<Stratum>(s);
        auto batch = stratified_sample(k, label, samples, split_seed(seed, s));
        auto expect = expected_profile(label);
        bool agree = true;
        CohomologyProfile seen;
        for (size_t i = 0; i < batch.samples.size(); ++i) {
            auto p = cohomology_profile(k, batch.samples[i]);
            if (i == 0) seen = p;
            agree = agree && p == expect && p == seen;
        }
        rows.push_back({{"stratum", stratum_name(label)},
                        {"samples", samples},
                        {"observed",
                         {{"h0m1", seen.h0_minus1},
                          {"h1", seen.h1_0},
                          {"h0omega", seen.h0_omega},
                          {"h1p1", seen.h1_plus1}}},
                        {"agrees", agree}});
        md += "| " + std::string(stratum_name(label)) + " | " + std::to_string(samples) + " | " +
              std::to_string(seen.h0_minus1) + " | " + std::to_string(seen.h1_0) + " | " +
              std::to_string(seen.h0_omega) + " | " + std::to_string(seen.h1_plus1) + " | " +
              (agree ? "yes" : "NO") + " |\n";
        out << json{{"version", kVersion},
                    {"field", field_to_json(FieldSpec::make_prime(prime))},
                    {"seed", seed},
                    {"row", rows.back()}}
                   .dump()
            << "\n";
    }
    if (!out_path.empty()) write_text(out_path, md);
    out << md;
    return 0;
}

int cmd_dims(std::ostream& out) {
    out << "| stratum | dim | codim | parameter count | fibration |\n|---|---|---|---|---|\n";
    for (const auto& e : dimension_table()) {
        auto opt = [](const std::optional<int>& v) {
            return v ? std::to_string(*v) : std::string("-");
        };
        out << "| " << stratum_name(e.label) << " | " << e.dimension << " | " << e.codimension
            << " | " << opt(e.parameter_dim) << " | " << opt(e.fibration_dim) << " |\n";
        if (37 - e.dimension != e.codimension) throw std::logic_error("ledger broken");
    }
    out << "ambient dimension 37; 37 - dim = codim holds on every row\n";
    return 0;
}

int cmd_construct(const std::string& kind, const std::string& point_arg,
                  const std::string& points_path, std::uint64_t prime, std::uint64_t seed,
                  const std::string& out_path, std::ostream& out) {
    PrimeField k(prime);
    auto spec = FieldSpec::make_prime(prime);
    Morphism<PrimeField> phi;
    json extra;
    if (kind == "x6") {
        if (point_arg.empty()) throw std::invalid_argument("construct x6 needs --point");
        auto x = parse_point_arg(k, point_arg);
        phi = construct_x6(k, x, seed);
        auto d = determinant(k, phi);
        extra["det_at_point"] = k.to_string(eval_at(k, d, x));
    } else if (kind == "x4") {
        if (points_path.empty()) throw std::invalid_argument("construct x4 needs --points");
        auto pts = points_from_json(k, load_json(points_path));
        if (pts.size() != 5) throw std::invalid_argument("construct x4 needs five points");
        phi = construct_x4(k, pts, seed);
        auto d = determinant(k, phi);
        json vals = json::array();
        for (const auto& p : pts) vals.push_back(k.to_string(eval_at(k, d, p)));
        extra["det_at_points"] = vals;
    } else {
        throw std::invalid_argument("construct kind must be x6 or x4");
    }
    MorphismFile file;
    file.field = spec;
    file.prime = phi;
    if (!out_path.empty()) write_text(out_path, morphism_to_json(file).dump() + "\n");
    auto rep = classify(k, phi);
    auto j = report_to_json(rep, spec, seed);
    j["construct"] = extra;
    out << j.dump() << "\n";
    return 0;
}

int cmd_sample(const std::string& label_name, std::uint64_t prime, int n, std::uint64_t seed,
               const std::string& out_dir, std::ostream& out) {
    auto label = stratum_from_name(label_name);
    if (!label) throw std::invalid_argument("unknown stratum label: " + label_name);
    PrimeField k(prime);
    auto spec = FieldSpec::make_prime(prime);
    auto batch = stratified_sample(k, *label, n, seed);
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        for (size_t i = 0; i < batch.samples.size(); ++i) {
            MorphismFile file;
            file.field = spec;
            file.prime = batch.samples[i];
            write_text(out_dir + "/" + label_name + "_" + std::to_string(i) + ".json",
                       morphism_to_json(file).dump() + "\n");
        }
    }
    json stats{{"version", kVersion},
               {"field", field_to_json(spec)},
               {"seed", seed},
               {"label", label_name},
               {"accepted", batch.samples.size()},
               {"draws", batch.attempts},
               {"rejections", batch.rejections}};
    out << stats.dump() << "\n";
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact classification lab for plane sheaf resolution matrices"};
    app.require_subcommand(1);

    std::uint64_t prime = 101, seed = 42;
    int samples = 100;
    std::string in_path, out_path, point_arg, points_path, kind, label;
    std::optional<int> twist;

    auto* classify_cmd = app.add_subcommand("classify", "classify a morphism file");
    classify_cmd->add_option("file", in_path)->required();

    auto* cohom_cmd = app.add_subcommand("cohom", "cohomology of a morphism file");
    cohom_cmd->add_option("file", in_path)->required();
    int twist_val = 0;
    auto* twist_opt = cohom_cmd->add_option("--twist", twist_val);

    auto* table_cmd = app.add_subcommand("table", "reproduce the classification table");
    table_cmd->add_option("--field-prime", prime);
    table_cmd->add_option("--samples", samples);
    table_cmd->add_option("--seed", seed);
    table_cmd->add_option("--out", out_path);

    app.add_subcommand("dims", "stratum dimension ledger");

    auto* construct_cmd = app.add_subcommand("construct", "build a stratum member");
    construct_cmd->add_option("kind", kind)->required();
    construct_cmd->add_option("--point", point_arg);
    construct_cmd->add_option("--points", points_path);
    construct_cmd->add_option("--field-prime", prime);
    construct_cmd->add_option("--seed", seed);
    construct_cmd->add_option("--out", out_path);

    auto* sample_cmd = app.add_subcommand("sample", "draw accepted samples of a stratum");
    sample_cmd->add_option("label", label)->required();
    sample_cmd->add_option("--field-prime", prime);
    sample_cmd->add_option("--samples", samples);
    sample_cmd->add_option("--seed", seed);
    sample_cmd->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (classify_cmd->parsed()) return cmd_classify(in_path, out);
        if (cohom_cmd->parsed()) {
            if (twist_opt->count()) twist = twist_val;
            return cmd_cohom(in_path, twist, out);
        }
        if (table_cmd->parsed()) return cmd_table(prime, samples, seed, out_path, out);
        if (app.get_subcommand("dims")->parsed()) return cmd_dims(out);
        if (construct_cmd->parsed())
            return cmd_construct(kind, point_arg, points_path, prime, seed, out_path, out);
        if (sample_cmd->parsed()) return cmd_sample(label, prime, samples, seed, out_path, out);
    } catch (const parse_error& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        err << "failure: " << e.what() << "\n";
        return 3;
    }
    return 2;
}

} // namespace strata
