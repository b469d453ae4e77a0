#include "sphroots/engine.hpp"
#include "sphroots/errors.hpp"
#include "sphroots/io.hpp"
#include "sphroots/sphdata.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

enum ExitCode {
    ExitOk = 0,
    ExitParse = 1,
    ExitNotSpherical = 2,
    ExitUnknownModule = 3,
    ExitValidation = 4,
};

void emit(const sphroots::ResultFile& result, const std::string& output_path) {
    std::string text = sphroots::serialize_result(result);
    if (output_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output_path);
        out << text;
    }
}

std::string trace_line(const sphroots::TraceStep& s) {
    std::string t = s.kind;
    if (!s.detail.empty()) t += " " + s.detail;
    if (!s.before.empty()) t += " before=" + s.before;
    if (!s.after.empty()) t += " after=" + s.after;
    return t;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spherical roots of regularly embedded spherical subgroups"};
    std::string input_path, output_path, data_path;
    std::string algorithm = "auto", branching = "all", lattice_override;
    bool want_trace = false;

    app.add_option("input", input_path, "datum description file")->required();
    app.add_option("--algorithm", algorithm, "base | optimized | both (default: both when applicable)")
        ->check(CLI::IsMember({"auto", "base", "optimized", "both"}));
    app.add_option("--branching", branching, "two | all recursion branches")
        ->check(CLI::IsMember({"two", "all"}));
    app.add_flag("--trace", want_trace, "record the degeneration trace");
    app.add_option("--lattice", lattice_override, "override the lattice model: sc | adjoint")
        ->check(CLI::IsMember({"sc", "adjoint"}));
    app.add_option("--data", data_path, "registry data file override");
    app.add_option("--output", output_path, "write the result file here instead of stdout");
    CLI11_PARSE(app, argc, argv);

    auto t0 = std::chrono::steady_clock::now();
    sphroots::ResultFile result;

    auto finish = [&](const char* status, const std::string& detail, int code) {
        result.status = status;
        result.detail = detail;
        result.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - t0)
                               .count();
        emit(result, output_path);
        return code;
    };

    sphroots::DatumFile file;
    try {
        if (!data_path.empty())
            sphroots::set_active_registry(sphroots::Registry::load_file(data_path));
        std::ifstream in(input_path);
        if (!in) throw sphroots::ParseError(0, "cannot open " + input_path);
        file = sphroots::parse_datum_file(in);
        if (lattice_override == "sc") file.model = sphroots::LatticeModel::SimplyConnected;
        if (lattice_override == "adjoint") file.model = sphroots::LatticeModel::Adjoint;
    } catch (const sphroots::ParseError& e) {
        return finish("parse_error", e.what(), ExitParse);
    } catch (const std::exception& e) {
        return finish("parse_error", e.what(), ExitParse);
    }
    result.group = file.group;
    result.model = file.model;

    try {
        sphroots::SphericalDatum datum = sphroots::build_datum(file);

        sphroots::ValidationReport rep = sphroots::validate(datum);
        if (rep.unknown_module)
            return finish("unknown_module", rep.unknown_reason, ExitUnknownModule);
        if (!rep.violations.empty())
            return finish("invalid_datum", rep.violations.front(), ExitValidation);
        if (rep.not_spherical)
            return finish("not_spherical", rep.not_spherical_reason, ExitNotSpherical);

        bool optimizable = sphroots::normalize(datum).xi().rank() == 0;
        sphroots::SolveMode mode;
        if (algorithm == "base") mode = sphroots::SolveMode::Base;
        else if (algorithm == "optimized") mode = sphroots::SolveMode::Optimized;
        else if (algorithm == "both") mode = sphroots::SolveMode::Both;
        else mode = optimizable ? sphroots::SolveMode::Both : sphroots::SolveMode::Base;
        result.algorithm = mode == sphroots::SolveMode::Base
                               ? "base"
                               : (mode == sphroots::SolveMode::Optimized ? "optimized" : "both");

        sphroots::EngineOptions opts;
        opts.branch_all = branching == "all";
        opts.record_trace = want_trace;

        sphroots::SigmaResult sig = sphroots::spherical_roots(datum, mode, opts);
        result.rank = sig.rank;
        result.spherical_roots = sig.roots;
        result.lattice_basis = sphroots::weight_lattice(datum).basis_vectors();
        result.degenerations_base = sig.base_degenerations;
        result.degenerations_optimized = sig.optimized_degenerations;
        if (want_trace)
            for (const auto& s : sig.trace) result.trace.push_back(trace_line(s));
        std::sort(result.spherical_roots.begin(), result.spherical_roots.end(),
                  [](const sphroots::QVec& a, const sphroots::QVec& b) {
                      for (size_t i = 0; i < a.size(); ++i)
                          if (a[i] != b[i]) return a[i] < b[i];
                      return false;
                  });
        return finish("ok", "", ExitOk);
    } catch (const sphroots::NotSphericalError& e) {
        return finish("not_spherical", e.what(), ExitNotSpherical);
    } catch (const sphroots::UnknownModuleError& e) {
        return finish("unknown_module", e.what(), ExitUnknownModule);
    } catch (const sphroots::ParseError& e) {
        return finish("parse_error", e.what(), ExitParse);
    } catch (const std::exception& e) {
        return finish("error", e.what(), ExitValidation);
    }
}
