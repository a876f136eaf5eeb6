#include "dgc/task.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;

#ifndef DGC_CORPUS_DIR
#define DGC_CORPUS_DIR "corpus"
#endif

static fs::path corpus_dir()
{
    if (const char* e = std::getenv("DGC_CORPUS"))
        return e;
    return DGC_CORPUS_DIR;
}

static std::vector<fs::path> corpus_files()
{
    std::vector<fs::path> out;
    for (auto& e : fs::directory_iterator(corpus_dir()))
        if (e.path().extension() == ".toml")
            out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

static void print_summary(const dgc::TaskSpec& s, const dgc::RunOutcome& r)
{
    auto& res = r.report["result"];
    std::cerr << s.name << ": invariants " << (r.invariants_ok ? "ok" : "FAILED");
    if (res.contains("betti"))
        std::cerr << ", betti " << res["betti"].dump();
    if (res.contains("hp"))
        std::cerr << ", hp " << res["hp"].dump();
    if (!r.resolved)
        std::cerr << ", unresolved";
    std::cerr << " (" << r.timing["total_seconds"].get<double>() << " s)\n";
}

int main(int argc, char** argv)
{
    CLI::App app{"weak completions, tubes and rigid cohomology at desk scale"};
    app.require_subcommand(1);

    std::string task_path, backend, out_path;
    bool strict = false;
    auto* run = app.add_subcommand("run", "run a task file and write its JSON report");
    run->add_option("task", task_path, "task file (TOML)")->required();
    run->add_flag("--strict", strict, "fail when a degree is unresolved");
    run->add_option("--backend", backend, "override the backend")
        ->check(CLI::IsMember({"rational", "padic", "both"}));
    run->add_option("--out", out_path, "report path; wall-clock goes to <out>.timing.json");

    auto* examples = app.add_subcommand("examples", "list the shipped corpus");
    auto* verify = app.add_subcommand("verify", "run every corpus task and its invariants");
    verify->add_flag("--strict", strict, "fail when a degree is unresolved");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            dgc::TaskSpec spec = dgc::load_task(task_path);
            dgc::RunOutcome r = dgc::run_task(spec, backend);
            std::string text = dgc::dump_report(r.report);
            if (out_path.empty()) {
                std::cout << text;
            } else {
                std::ofstream(out_path) << text;
                std::ofstream(out_path + ".timing.json") << dgc::dump_report(r.timing);
            }
            print_summary(spec, r);
            return dgc::exit_status(r, strict);
        }
        if (*examples) {
            for (auto& f : corpus_files()) {
                dgc::TaskSpec s = dgc::load_task(f.string());
                std::cout << s.name << "  [" << dgc::to_string(s.kind) << "]  " << s.description
                          << "\n";
            }
            return 0;
        }
        if (*verify) {
            int status = 0;
            for (auto& f : corpus_files()) {
                dgc::TaskSpec s = dgc::load_task(f.string());
                dgc::RunOutcome r = dgc::run_task(s);
                print_summary(s, r);
                status = std::max(status, dgc::exit_status(r, strict));
            }
            std::cerr << (status == 0 ? "verify: all invariants hold\n" : "verify: FAILED\n");
            return status;
        }
    } catch (const dgc::TaskError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
