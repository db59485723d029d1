#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "arckit/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"arckit: truncated power series, finite projections and certified arcs"};

    std::string script_path;
    std::string out_path;
    unsigned search_bound = 16;
    unsigned max_steps = 0;
    bool quiet = false;

    app.add_option("--script", script_path, "script file to run")->required();
    app.add_option("--out", out_path, "write the certificate or report here");
    app.add_option("--search-bound", search_bound,
                   "max-norm bound for direction enumeration");
    app.add_option("--max-steps", max_steps,
                   "projection step budget (0: one step per generator)");
    app.add_flag("--quiet", quiet, "suppress the report on stdout");

    CLI11_PARSE(app, argc, argv);

    std::ifstream in(script_path);
    if (!in) {
        std::cerr << "cannot open script '" << script_path << "'\n";
        return 2;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();

    arckit::RunOptions options;
    options.search_bound = search_bound;
    if (max_steps > 0) options.max_steps = max_steps;
    options.quiet = quiet;

    arckit::RunResult result = arckit::run_script_text(buffer.str(), options);

    if (!quiet) {
        if (result.exit_code == 0)
            std::cout << result.report;
        else
            std::cerr << result.report;
    } else if (result.exit_code != 0) {
        std::cerr << result.report;
    }

    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write '" << out_path << "'\n";
            return 2;
        }
        out << (result.document ? *result.document : result.report);
    } else if (result.document && !quiet) {
        std::cout << *result.document;
    }
    return result.exit_code;
}
