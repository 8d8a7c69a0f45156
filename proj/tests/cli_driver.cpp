// End-to-end checks of the rla binary: argv[1] is the binary, argv[2] a
// scratch directory. Uses the library itself to validate emitted JSON.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "rla/json_io.hpp"

namespace fs = std::filesystem;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++failures;
        std::fprintf(stderr, "FAILED: %s\n", what.c_str());
    }
}

struct RunResult {
    int exit_code;
    std::string out;
};

std::string g_binary;
fs::path g_work;

RunResult run(const std::string& args) {
    static int counter = 0;
    fs::path outfile = g_work / ("out" + std::to_string(counter++) + ".txt");
    std::string cmd = g_binary + " " + args + " > " + outfile.string() + " 2>&1";
    int rc = std::system(cmd.c_str());
    int code = -1;
    if (rc != -1) code = WEXITSTATUS(rc);
    std::ifstream in(outfile);
    std::ostringstream os;
    os << in.rdbuf();
    return RunResult{code, os.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: rla_cli_tests <rla-binary> <workdir>\n");
        return 2;
    }
    g_binary = argv[1];
    g_work = argv[2];
    fs::create_directories(g_work);

    // build: K(3)@p5 has dimension 125 and a stored torus
    fs::path k3p5 = g_work / "k3p5.json";
    auto r = run("build --family K --n 3 --p 5 -o " + k3p5.string());
    expect(r.exit_code == 0, "build K(3)@p5 exits 0");
    {
        rla::AlgebraDocument doc = rla::algebra_from_json(slurp(k3p5));
        expect(doc.algebra.dim() == 125, "built K(3)@p5 has dim 125");
        expect(doc.torus_coords.size() == 2, "stored torus has 2 generators");
    }

    // invalid spec: even contact size
    r = run("build --family K --n 4 --p 5");
    expect(r.exit_code == 2, "build K(4) exits 2");

    // build P(2)@p3 and check dim 9
    fs::path p2 = g_work / "p2.json";
    r = run("build --family P --r 1 --p 3 -o " + p2.string());
    expect(r.exit_code == 0, "build P(2)@p3 exits 0");
    {
        rla::AlgebraDocument doc = rla::algebra_from_json(slurp(p2));
        expect(doc.algebra.dim() == 9, "built P(2)@p3 has dim 9");
    }

    // K(3)@p3: invariants pass (rank 2 branch) and rank prints 2
    fs::path k3p3 = g_work / "k3p3.json";
    r = run("build --family K --n 3 --p 3 -o " + k3p3.string());
    expect(r.exit_code == 0, "build K(3)@p3 exits 0");
    r = run("invariants " + k3p3.string() + " --no-search");
    expect(r.exit_code == 0, "invariants K(3)@p3 all pass");
    r = run("rank " + k3p3.string());
    expect(r.exit_code == 0, "rank K(3)@p3 exits 0");
    {
        auto j = nlohmann::ordered_json::parse(r.out);
        expect(j.at("rank").get<int>() == 2, "rank K(3)@p3 = 2");
    }

    // W(1)@p3 invariants and weights
    fs::path w1 = g_work / "w1.json";
    r = run("build --family W --n 1 --p 3 -o " + w1.string());
    expect(r.exit_code == 0, "build W(1)@p3 exits 0");
    r = run("invariants " + w1.string());
    expect(r.exit_code == 0, "invariants W(1)@p3 all pass");
    r = run("weights " + w1.string());
    expect(r.exit_code == 0, "weights W(1)@p3 exits 0");
    {
        auto j = nlohmann::ordered_json::parse(r.out);
        expect(j.at("spaces").size() == 3, "W(1)@p3 has three weight spaces");
    }

    // corrupted file
    fs::path corrupt = g_work / "corrupt.json";
    std::ofstream(corrupt) << "{\"p\":3,\"name\":\"W(1)\"";
    r = run("invariants " + corrupt.string());
    expect(r.exit_code == 2, "corrupted file exits 2");

    // centralizer of D_K(1+x3) in K''(3)@p3 is the Poisson algebra, dim 9
    fs::path kpp = g_work / "kpp3.json";
    r = run("build --family Kpp --n 3 --p 3 -o " + kpp.string());
    expect(r.exit_code == 0, "build K''(3)@p3 exits 0");
    fs::path cent = g_work / "cent.json";
    r = run("centralizer --in " + kpp.string() + " --dk-poly \"1+x3\" -o " + cent.string());
    expect(r.exit_code == 0, "centralizer exits 0");
    {
        rla::AlgebraDocument doc = rla::algebra_from_json(slurp(cent));
        expect(doc.algebra.dim() == 9, "C(D_K(1+x3)) has dim 9");
    }

    // quotient by the derived subalgebra: one-dimensional
    fs::path quot = g_work / "quot.json";
    r = run("quotient --in " + kpp.string() + " --by-derived -o " + quot.string());
    expect(r.exit_code == 0, "quotient exits 0");
    {
        rla::AlgebraDocument doc = rla::algebra_from_json(slurp(quot));
        expect(doc.algebra.dim() == 1, "K''(3)/K(3) has dim 1");
    }

    // density module factors at p = 5
    r = run("module --p 5 --lambda 0");
    expect(r.exit_code == 0, "module lambda=0 exits 0");
    {
        auto j = nlohmann::ordered_json::parse(r.out);
        auto dims = j.at("factor_dims").get<std::vector<size_t>>();
        expect((dims == std::vector<size_t>{1, 4}), "factors of lambda=0 are {1,4}");
    }

    // module round trip through a file
    fs::path mod = g_work / "density.json";
    r = run("module --p 3 --lambda 1 -o " + mod.string());
    expect(r.exit_code == 0, "module write exits 0");
    fs::path w1p3 = g_work / "w1_formod.json";
    run("build --family W --n 1 --p 3 -o " + w1p3.string());
    r = run("module --in " + mod.string() + " --algebra " + w1p3.string());
    expect(r.exit_code == 0, "module read exits 0");

    // small verify-paper run: W(1)@p7 only
    r = run("verify-paper --p 7 --max-n 1 --budget 40");
    expect(r.exit_code == 0, "verify-paper --p 7 --max-n 1 passes");
    expect(r.out.find("W(1)@p7") != std::string::npos, "report mentions W(1)@p7");

    if (failures == 0) std::printf("cli driver: all checks passed\n");
    return failures == 0 ? 0 : 1;
}
