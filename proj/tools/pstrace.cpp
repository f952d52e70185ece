// Command-line front end: validate spec files, decompose algebras, inspect
// symmetric-functional spaces, and run the verification suite over single
// files or a corpus directory.

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <filesystem>
#include <iostream>

#include "pstrace/errors.hpp"
#include "pstrace/report.hpp"
#include "pstrace/spec_io.hpp"
#include "pstrace/suite.hpp"

using namespace pstrace;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitInputError = 2;

void emit(const std::vector<Report>& reports, bool as_json, bool timings) {
    if (as_json)
        std::cout << report_json(reports, timings) << "\n";
    else
        std::cout << report_text(reports);
}

int exit_code(const std::vector<Report>& reports) {
    for (const auto& r : reports)
        if (!r.all_pass()) return kExitVerificationFailure;
    return kExitPass;
}

std::vector<std::string> corpus_files(const std::string& dir) {
    std::vector<std::string> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    return files;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact pseudotrace toolkit for finite-dimensional and block-graded algebras"};
    app.require_subcommand(1);
    app.fallthrough();

    bool as_json = false;
    bool timings = false;
    app.add_flag("--json", as_json, "emit the machine-readable report");
    app.add_flag("--timings", timings, "include per-check timings in the JSON report");

    std::string path, idempotent = "unit", corner, corpus;

    auto* validate = app.add_subcommand("validate", "parse a spec file and run its invariants");
    validate->add_option("path", path, "spec file")->required();

    auto* decompose = app.add_subcommand("decompose", "radical and primitive decomposition");
    decompose->add_option("path", path, "spec file")->required();
    decompose->add_option("--idempotent", idempotent,
                          "\"unit\" or comma-separated exact coordinates");

    auto* slf = app.add_subcommand("slf", "symmetric linear functionals and the corner round trip");
    slf->add_option("path", path, "spec file")->required();
    slf->add_option("--corner", corner, "corner idempotent coordinates");

    auto* verify = app.add_subcommand("verify", "run the full verification suite");
    verify->add_option("path", path, "spec file");
    verify->add_option("--corpus", corpus, "directory of spec files");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) {
            std::vector<Report> reports;
            Report rep;
            rep.entry = path;
            CheckResult res;
            res.name = "validate";
            res.property = "file parses and every constructor invariant holds";
            try {
                AlgebraSpec spec = load_spec(path);
                rep.entry = spec.name;
                res.pass = true;
                res.witness = "{}";
            } catch (const ParseError&) {
                throw;  // input error path
            } catch (const Error& e) {
                res.pass = false;
                res.witness = std::string("{\"error\": \"") + e.what() + "\"}";
            }
            rep.checks.push_back(res);
            reports.push_back(rep);
            emit(reports, as_json, timings);
            return exit_code(reports);
        }

        if (decompose->parsed()) {
            AlgebraSpec spec = load_spec(path);
            if (spec.is_graded()) {
                std::cerr << "decompose expects a structure-constant entry\n";
                return kExitInputError;
            }
            const FiniteAlgebra& a = spec.finite();
            Element e = a.element(parse_coords(idempotent, a));
            std::vector<Report> reports{decompose_report(spec.name, a, e)};
            emit(reports, as_json, timings);
            return exit_code(reports);
        }

        if (slf->parsed()) {
            AlgebraSpec spec = load_spec(path);
            std::optional<std::string> c;
            if (!corner.empty()) c = corner;
            std::vector<Report> reports{slf_report(spec, c)};
            emit(reports, as_json, timings);
            return exit_code(reports);
        }

        // verify
        std::vector<std::string> files;
        if (!corpus.empty()) {
            files = corpus_files(corpus);
            if (files.empty()) {
                std::cerr << "warning: corpus directory has no spec files; passing vacuously\n";
                emit({}, as_json, timings);
                return kExitPass;
            }
        } else if (!path.empty()) {
            files.push_back(path);
        } else {
            std::cerr << "verify needs a path or --corpus\n";
            return kExitInputError;
        }

        // load failures from constructor invariants become failed entries so
        // the rest of the corpus still gets a full report
        std::vector<AlgebraSpec> specs;
        std::vector<Report> broken;
        for (const auto& f : files) {
            try {
                specs.push_back(load_spec(f));
            } catch (const ParseError&) {
                throw;
            } catch (const Error& e) {
                Report rep;
                rep.entry = std::filesystem::path(f).stem().string();
                CheckResult res;
                res.name = "load";
                res.property = "constructor invariants hold";
                res.pass = false;
                res.witness = std::string("{\"error\": \"") + e.what() + "\"}";
                rep.checks.push_back(std::move(res));
                broken.push_back(std::move(rep));
            }
        }

        std::vector<Report> reports(specs.size());
        // entries are independent; reports stay ordered by file name
#pragma omp parallel for schedule(dynamic) if (specs.size() > 1)
        for (long i = 0; i < static_cast<long>(specs.size()); ++i)
            reports[static_cast<std::size_t>(i)] = verify_entry(specs[static_cast<std::size_t>(i)]);

        for (auto& rep : broken) reports.push_back(std::move(rep));
        std::sort(reports.begin(), reports.end(),
                  [](const Report& x, const Report& y) { return x.entry < y.entry; });
        emit(reports, as_json, timings);
        return exit_code(reports);
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitInputError;
    } catch (const Error& e) {
        // constructor invariants are verification failures, not input errors
        std::cerr << e.what() << "\n";
        return kExitVerificationFailure;
    }
}
