#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "rht/runner.hpp"

namespace {

std::pair<int, int> parse_window(const std::string& text)
{
    auto colon = text.find(':', 1); /* allow a leading minus sign */
    if (colon == std::string::npos)
        throw rht::SpecParseError("--window expects A:B");
    try {
        return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
    } catch (const std::exception&) {
        throw rht::SpecParseError("--window expects integer bounds A:B");
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact-arithmetic kernel for rational homotopy models: Poincare duality, "
                 "free loop spaces, Hochschild cohomology, shriek maps and derivation "
                 "complexes"};
    app.require_subcommand(1);

    rht::RunOptions opt;
    std::string window_text;
    std::string json_path;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"catalog", "list the built-in example spaces and maps"},
        {"validate-pd", "check the Poincare duality axioms of a presentation"},
        {"cohomology", "Betti numbers of a cdga over a degree window"},
        {"loop-model", "free-loop-space model and its cohomology"},
        {"hh", "Hochschild cohomology of the loop model with self or dual coefficients"},
        {"shriek", "the wrong-way map f_! and its defining identities"},
        {"theorem1", "chain-level: CH(f_!) CH(f) = multiplication by the dual class"},
        {"theorem2", "HH(A;A) -> HH(A;B) is injective, with the chain retraction"},
        {"felix-injection", "H(f_*) on derivation homology is injective"},
        {"corollary", "dual-coefficient composite on HH is injective"},
        {"maps-pi", "rational homotopy groups of mapping spaces"},
    };

    for (const auto& [name, desc] : commands) {
        CLI::App* sub = app.add_subcommand(name, desc);
        if (name != "catalog") {
            sub->add_option("--example", opt.example, "catalog entry name");
            sub->add_option("--file", opt.file, "algebra spec JSON file");
            sub->add_option("--window", window_text, "degree window A:B");
        }
        if (name == "hh")
            sub->add_option("--coefficients", opt.coefficients, "self | dual");
        sub->add_flag("--hodge", opt.hodge, "emit per-word-length blocks");
        sub->add_flag("--verbose", opt.verbose, "include representatives");
        sub->add_option("--json", json_path, "write the machine report to PATH");
    }

    CLI11_PARSE(app, argc, argv);
    opt.command = app.get_subcommands().front()->get_name();

    try {
        if (!window_text.empty())
            opt.window = parse_window(window_text);

        auto t0 = std::chrono::steady_clock::now();
        rht::RunReport rep = rht::run_command(opt);
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();

        std::cout << rep.text;
        std::cout << "elapsed: " << ms << " ms\n";
        if (!json_path.empty()) {
            std::ofstream out(json_path);
            if (!out)
                throw rht::SpecParseError("cannot write " + json_path);
            out << rep.json.dump(2) << "\n";
        }
        return rep.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return rht::exit_code_for(e);
    }
}
