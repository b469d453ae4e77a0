// Drives the installed CLI binary through every exit code.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
    if (!ok) {
        ++failures;
        std::cerr << "FAIL: " << what << "\n";
    }
}

int run(const std::string& binary, const std::string& input, const std::string& args = "") {
    std::string path = "cli_case.datum";
    std::ofstream(path) << input;
    std::string cmd = binary + " " + path + " " + args + " > cli_case.out 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const char* path) {
    std::ifstream in(path);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_exitcodes <sphroots binary>\n";
        return 2;
    }
    std::string bin = argv[1];

    // exit 0 + the example-1 roots in the result file
    int code = run(bin,
                   "group A 3\nlevi 2\npsi 1 1 0\npsi 0 1 1\nxi diff 1 2\n");
    check(code == 0, "example 1 exits 0, got " + std::to_string(code));
    std::string out = slurp("cli_case.out");
    check(out.find("status ok") != std::string::npos, "status ok");
    check(out.find("spherical_root 1 1 0") != std::string::npos, "root a1+a2");
    check(out.find("spherical_root 0 1 1") != std::string::npos, "root a2+a3");
    check(out.find("rank 2") != std::string::npos, "rank 2");
    check(out.find("lattice_basis 1/2 0 -1/2") != std::string::npos, "half lattice vector");

    // exit 1: malformed psi vector
    code = run(bin, "group A 3\nlevi 2\npsi 1 x 0\n");
    check(code == 1, "malformed psi exits 1, got " + std::to_string(code));

    // exit 2: not spherical at a primitive pair
    code = run(bin, "group B 3\nlevi 1 3\npsi 0 1 0\n", "--algorithm base");
    check(code == 2, "non-spherical primitive exits 2, got " + std::to_string(code));

    // exit 3: unknown module
    code = run(bin, "group C 4\nlevi 3 4\npsi 0 1 0 0\npsi 1 1 0 0\n");
    check(code == 3, "unknown module exits 3, got " + std::to_string(code));

    // exit 4: validation failure (closure violated)
    code = run(bin, "group A 3\nlevi 2\npsi 1 1 1\n");
    check(code == 4, "closure violation exits 4, got " + std::to_string(code));

    // --algorithm optimized on example 3 uses two degenerations
    code = run(bin,
               "group A 6\nlevi 1 4\npsi 1 1 0 0 0 0\npsi 1 1 1 1 1 1\n"
               "psi 0 0 0 1 1 1\npsi 0 0 0 0 0 1\n",
               "--algorithm optimized --trace");
    check(code == 0, "example 3 optimized exits 0, got " + std::to_string(code));
    out = slurp("cli_case.out");
    check(out.find("degenerations_optimized 2") != std::string::npos,
          "example 3 optimized degeneration count");
    check(out.find("spherical_root 0 0 0 1 1 0") != std::string::npos, "root a4+a5");

    // --branching two and --output agree with the default path
    code = run(bin, "group A 3\nlevi 1\npsi 1 1 0\npsi 1 1 1\n",
               "--branching two --output cli_case.res");
    check(code == 0, "--branching two exits 0");
    out = slurp("cli_case.res");
    check(out.find("rank 3") != std::string::npos, "--output file holds the result");

    // --data pointing at the shipped file behaves like the built-in registry
    code = run(bin, "group A 3\nlevi 2\npsi 1 1 0\npsi 0 1 1\nxi diff 1 2\n",
               std::string("--data ") + SPHROOTS_SOURCE_DATA_FILE);
    check(code == 0, "--data with the shipped file exits 0");

    // --lattice adjoint rejects the half-integral xi vector
    code = run(bin, "group A 3\nlevi 2\npsi 1 1 0\npsi 0 1 1\nxi 1/2 0 -1/2\n",
               "--lattice adjoint");
    check(code == 1, "--lattice adjoint makes the half weight unparseable, got " +
                         std::to_string(code));

    if (failures) {
        std::cerr << failures << " CLI check(s) failed\n";
        return 1;
    }
    std::cout << "all CLI exit-code checks passed\n";
    return 0;
}
