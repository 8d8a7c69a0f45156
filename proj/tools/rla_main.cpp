// rla: construct restricted Lie algebras of Cartan type over prime fields,
// compute tori / centralizer ranks / weight decompositions / module
// composition factors, and run the whole verification table.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rla/json_io.hpp"
#include "rla/modules.hpp"
#include "rla/tori.hpp"
#include "rla/verification.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInvalid = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw rla::JsonError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw rla::JsonError("cannot write file: " + path);
    out << text;
}

rla::FamilySpec spec_from_flags(const std::string& family, int n, int r, uint32_t p) {
    auto fam = rla::parse_family_token(family);
    if (!fam) throw std::invalid_argument("unknown family token: " + family);
    rla::FamilySpec spec;
    spec.family = *fam;
    spec.p = p;
    bool wants_r = *fam == rla::Family::H || *fam == rla::Family::Hprime ||
                   *fam == rla::Family::P;
    if (wants_r) {
        if (r < 0 && n >= 0) {
            if (n % 2 != 0) throw std::invalid_argument(family + ": --n must be even (2r)");
            spec.size = static_cast<uint32_t>(n);
        } else if (r >= 0) {
            spec.size = 2 * static_cast<uint32_t>(r);
        } else {
            throw std::invalid_argument(family + ": need --r (or even --n)");
        }
    } else {
        if (n < 0) throw std::invalid_argument(family + ": need --n");
        spec.size = static_cast<uint32_t>(n);
    }
    spec.validate();
    return spec;
}

struct LoadedAlgebra {
    rla::AlgebraDocument doc;
    rla::FamilySpec spec;
    rla::Torus torus;
};

LoadedAlgebra load_with_torus(const std::string& path) {
    LoadedAlgebra out;
    out.doc = rla::algebra_from_json(read_file(path));
    if (!out.doc.spec)
        throw rla::JsonError("algebra name '" + out.doc.algebra.name() +
                             "' does not identify a known family");
    out.spec = *out.doc.spec;
    size_t mu = rla::family_expectations(out.spec).mu;
    if (!out.doc.torus_coords.empty()) {
        std::vector<rla::Element> elems;
        for (const auto& c : out.doc.torus_coords) elems.push_back(out.doc.algebra.element(c));
        out.torus = rla::verify_torus(out.doc.algebra, std::move(elems),
                                      rla::TorusProvenance::registered, mu);
    } else {
        out.torus = rla::registered_torus_of(out.spec, out.doc.algebra);
    }
    return out;
}

std::vector<uint32_t> parse_p_list(const std::string& text) {
    std::vector<uint32_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(static_cast<uint32_t>(std::stoul(item)));
        rla::fp::check_modulus(out.back());
    }
    if (out.empty()) throw std::invalid_argument("empty prime list");
    return out;
}

int cmd_build(const std::string& family, int n, int r, uint32_t p, const std::string& out) {
    rla::FamilySpec spec = spec_from_flags(family, n, r, p);
    rla::Algebra g = rla::build_family(spec);
    rla::Torus t = rla::registered_torus_of(spec, g);
    std::vector<rla::FpVec> coords;
    for (const auto& e : t.basis) coords.push_back(e.coords);
    write_output(out, rla::algebra_to_json(g, coords));
    return kExitOk;
}

int cmd_invariants(const std::string& path, uint64_t seed, size_t budget, bool no_search) {
    LoadedAlgebra loaded = load_with_torus(path);
    rla::ReportOptions opts;
    opts.seed = seed;
    opts.search_budget = budget;
    opts.run_search = !no_search;
    rla::InvariantReport rep =
        rla::invariant_report_for(loaded.doc.algebra, loaded.torus, loaded.spec, opts);
    std::cout << rla::invariant_report_to_json(rep);
    return rep.all_pass() ? kExitOk : kExitMismatch;
}

int cmd_rank(const std::string& path) {
    LoadedAlgebra loaded = load_with_torus(path);
    size_t rank = rla::rank_via_torus(loaded.doc.algebra, loaded.torus);
    nlohmann::ordered_json j;
    j["algebra"] = loaded.doc.algebra.name();
    j["p"] = loaded.doc.algebra.p();
    j["mu_reference"] = *loaded.torus.mu_reference;
    j["rank"] = rank;
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_centralizer(const std::string& path, const std::string& element_csv,
                    const std::string& element_json_path, const std::string& dk_poly,
                    const std::string& out) {
    rla::AlgebraDocument doc = rla::algebra_from_json(read_file(path));
    rla::Algebra g = doc.algebra;

    std::vector<rla::Element> elems;
    if (!element_csv.empty()) {
        rla::FpVec coords;
        std::stringstream ss(element_csv);
        std::string item;
        while (std::getline(ss, item, ','))
            coords.push_back(static_cast<uint32_t>(std::stoul(item)) % g.p());
        elems.push_back(g.element(std::move(coords)));
    }
    if (!element_json_path.empty())
        elems.push_back(
            g.element(rla::element_coords_from_json(read_file(element_json_path), g)));
    if (!dk_poly.empty()) {
        size_t m = g.realization_dim();
        uint32_t nvars = 0;
        size_t pw = 1;
        while (pw < m) {
            pw *= g.p();
            ++nvars;
        }
        if (pw != m) throw std::invalid_argument("--dk-poly: algebra is not realized on A(n)");
        rla::TruncPoly f = rla::parse_truncpoly(dk_poly, nvars, g.p());
        auto coords = g.solve_derivation(rla::contact_derivation(f));
        if (!coords)
            throw std::invalid_argument("--dk-poly: D_K(poly) is not a member of the algebra");
        elems.push_back(g.element(*coords));
    }
    rla::Algebra c = g.centralizer(elems, "C(" + g.name() + ")");
    write_output(out, rla::algebra_to_json(c));
    return kExitOk;
}

int cmd_weights(const std::string& path) {
    LoadedAlgebra loaded = load_with_torus(path);
    rla::WeightDecomposition wd =
        rla::adjoint_weight_decomposition(loaded.doc.algebra, loaded.torus);
    nlohmann::ordered_json j;
    j["algebra"] = loaded.doc.algebra.name();
    j["p"] = loaded.doc.algebra.p();
    nlohmann::ordered_json torus = nlohmann::ordered_json::array();
    for (const auto& e : loaded.torus.basis) torus.push_back(e.coords);
    j["torus"] = std::move(torus);
    nlohmann::ordered_json spaces = nlohmann::ordered_json::array();
    for (const auto& ws : wd.spaces) {
        nlohmann::ordered_json s;
        s["weight"] = ws.weight;
        s["dim"] = ws.basis.size();
        s["zero"] = ws.is_zero_weight;
        s["basis"] = ws.basis;
        spaces.push_back(std::move(s));
    }
    j["spaces"] = std::move(spaces);
    j["total_dim"] = wd.total_dim;
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_quotient(const std::string& path, bool by_derived, const std::string& ideal_json,
                 const std::string& out) {
    rla::AlgebraDocument doc = rla::algebra_from_json(read_file(path));
    rla::Algebra g = doc.algebra;
    std::vector<rla::FpVec> rows;
    if (by_derived) {
        for (size_t j = 0; j < g.dim(); ++j)
            for (size_t i = 0; i < j; ++i) {
                const auto& sc = g.structure_constant(i, j);
                if (!sc.empty()) rows.push_back(rla::from_sparse(sc, g.dim()));
            }
        rows = rla::canonical_span(g.p(), rows, g.dim());
    } else if (!ideal_json.empty()) {
        auto j = nlohmann::ordered_json::parse(read_file(ideal_json));
        for (const auto& rj : j.at("coords")) {
            rla::FpVec row = rj.get<rla::FpVec>();
            if (row.size() != g.dim()) throw rla::JsonError("ideal row has wrong length");
            rows.push_back(std::move(row));
        }
    } else {
        throw std::invalid_argument("quotient: need --by-derived or --ideal-json");
    }
    rla::Ideal n = g.ideal(rows);
    rla::Algebra q = g.quotient(n, g.name() + "/n");
    write_output(out, rla::algebra_to_json(q));
    return kExitOk;
}

int cmd_module(uint32_t p, int lambda, const std::string& in_path,
               const std::string& algebra_path, uint64_t seed, const std::string& out) {
    rla::RestrictedModule v;
    if (!in_path.empty()) {
        if (algebra_path.empty())
            throw std::invalid_argument("module --in needs --algebra <file>");
        rla::AlgebraDocument doc = rla::algebra_from_json(read_file(algebra_path));
        v = rla::module_from_json(read_file(in_path), doc.algebra);
    } else {
        if (lambda < 0) throw std::invalid_argument("module: need --lambda (with --p)");
        v = rla::density_module(p, static_cast<uint32_t>(lambda));
    }
    rla::CompositionData cf = rla::composition_factors(v, seed);
    nlohmann::ordered_json j;
    j["algebra"] = v.algebra.name() + "@" + std::to_string(v.algebra.p());
    j["dimV"] = v.dim_v;
    j["factor_dims"] = cf.factor_dims;
    j["all_trivial"] = cf.all_trivial;
    std::cout << j.dump(2) << "\n";
    if (!out.empty()) write_output(out, rla::module_to_json(v));
    return kExitOk;
}

int cmd_verify_paper(const std::string& p_csv, uint32_t max_n, uint64_t seed, size_t budget,
                     size_t threads, const std::string& out) {
    rla::VerifyOptions opts;
    opts.p_list = parse_p_list(p_csv);
    opts.max_n = max_n;
    opts.seed = seed;
    opts.search_budget = budget;
    opts.threads = threads;
    rla::VerifyPaperReport report = rla::verify_paper(opts);
    std::string json = rla::verify_report_to_json(report, opts);
    if (!out.empty()) {
        write_output(out, json);
        std::cout << rla::verify_report_summary(report);
    } else {
        std::cout << json;
        std::cerr << rla::verify_report_summary(report);
    }
    return report.all_pass() ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"restricted Lie algebras of Cartan type over prime fields"};
    app.require_subcommand(1);

    // build
    auto* build = app.add_subcommand("build", "construct a Cartan-family algebra as JSON");
    std::string family, out_path;
    int n_flag = -1, r_flag = -1;
    uint32_t p_flag = 3;
    build->add_option("--family", family, "W | S | H | Hprime | Kpp | K | P")->required();
    build->add_option("--n", n_flag, "n (W/S/K families; 2r for H/P accepted)");
    build->add_option("--r", r_flag, "r (H/Hprime/P families)");
    build->add_option("--p", p_flag, "odd prime")->required();
    build->add_option("-o,--out", out_path, "output path (default stdout)");

    // invariants
    auto* invariants = app.add_subcommand("invariants", "verify family invariants of a file");
    std::string in_path;
    uint64_t seed = 0;
    size_t budget = 200;
    bool no_search = false;
    invariants->add_option("file", in_path, "algebra JSON")->required();
    invariants->add_option("--seed", seed, "seed for randomized search");
    invariants->add_option("--budget", budget, "mu-search budget");
    invariants->add_flag("--no-search", no_search, "skip the randomized torus search");

    // rank
    auto* rank = app.add_subcommand("rank", "centralizer rank at the stored torus");
    std::string rank_path;
    rank->add_option("file", rank_path, "algebra JSON")->required();

    // centralizer
    auto* cent = app.add_subcommand("centralizer", "centralizer of given elements");
    std::string cent_in, cent_elem, cent_elem_json, cent_dk, cent_out;
    cent->add_option("--in", cent_in, "algebra JSON")->required();
    cent->add_option("--element", cent_elem, "coordinates c0,c1,...");
    cent->add_option("--element-json", cent_elem_json, "element JSON file");
    cent->add_option("--dk-poly", cent_dk, "centralize D_K(poly), e.g. \"1+x3\"");
    cent->add_option("-o,--out", cent_out, "output path (default stdout)");

    // weights
    auto* weights = app.add_subcommand("weights", "weight decomposition at the stored torus");
    std::string weights_path;
    weights->add_option("file", weights_path, "algebra JSON")->required();

    // quotient
    auto* quot = app.add_subcommand("quotient", "quotient by a p-ideal");
    std::string quot_in, quot_ideal, quot_out;
    bool quot_derived = false;
    quot->add_option("--in", quot_in, "algebra JSON")->required();
    quot->add_flag("--by-derived", quot_derived, "quotient by the derived subalgebra");
    quot->add_option("--ideal-json", quot_ideal, "JSON file {\"coords\":[[...],...]}");
    quot->add_option("-o,--out", quot_out, "output path (default stdout)");

    // module
    auto* module = app.add_subcommand("module", "density modules and composition factors");
    uint32_t mod_p = 5;
    int mod_lambda = -1;
    std::string mod_in, mod_algebra, mod_out;
    uint64_t mod_seed = 0;
    module->add_option("--p", mod_p, "prime (density module)");
    module->add_option("--lambda", mod_lambda, "density parameter in [0,p)");
    module->add_option("--in", mod_in, "module JSON to analyze");
    module->add_option("--algebra", mod_algebra, "algebra JSON for --in");
    module->add_option("--seed", mod_seed, "seed for the composition-series search");
    module->add_option("-o,--out", mod_out, "write the module JSON here");

    // verify-paper
    auto* verify = app.add_subcommand("verify-paper", "run the whole verification table");
    std::string verify_p = "3,5", verify_out;
    uint32_t verify_max_n = 5;
    uint64_t verify_seed = 0;
    size_t verify_budget = 200, verify_threads = 0;
    verify->add_option("--p", verify_p, "comma-separated primes (default 3,5)");
    verify->add_option("--max-n", verify_max_n, "largest family size to include");
    verify->add_option("--seed", verify_seed, "seed for all randomized procedures");
    verify->add_option("--budget", verify_budget, "mu-search budget");
    verify->add_option("--threads", verify_threads, "parallelism cap (also RLA_THREADS)");
    verify->add_option("-o,--out", verify_out, "write the report JSON here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) return cmd_build(family, n_flag, r_flag, p_flag, out_path);
        if (invariants->parsed()) return cmd_invariants(in_path, seed, budget, no_search);
        if (rank->parsed()) return cmd_rank(rank_path);
        if (cent->parsed())
            return cmd_centralizer(cent_in, cent_elem, cent_elem_json, cent_dk, cent_out);
        if (weights->parsed()) return cmd_weights(weights_path);
        if (quot->parsed()) return cmd_quotient(quot_in, quot_derived, quot_ideal, quot_out);
        if (module->parsed())
            return cmd_module(mod_p, mod_lambda, mod_in, mod_algebra, mod_seed, mod_out);
        if (verify->parsed())
            return cmd_verify_paper(verify_p, verify_max_n, verify_seed, verify_budget,
                                    verify_threads, verify_out);
    } catch (const rla::JsonError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}
