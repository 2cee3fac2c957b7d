#include <CLI11.hpp>
#include <iostream>

#include "tropdual/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Cosheaf homology, sheaf cohomology and Poincare duality for lattice polytopes"};
    app.require_subcommand(1);

    std::string fixture, report;
    std::vector<std::string> rings;
    std::optional<int> p, q;
    bool strict = false;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"check", "polytope and triangulation classification"},
        {"homology", "ranks of H_q(F_p), with torsion over Z"},
        {"cohomology", "ranks of H^q(F^p), with torsion over Z"},
        {"spectral", "E0 to E2 pages and their concentration"},
        {"fundamental-class", "the fundamental chain and whether it generates top homology"},
        {"duality", "cap maps, kernel and image identities, duality rank tables"},
        {"patchwork", "Betti numbers of the patchworked hypersurface"},
        {"all", "every check above"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("fixture,--fixture", fixture, "fixture JSON file")->required()->check(CLI::ExistingFile);
        sub->add_option("--ring", rings, "F2, Fp:<prime>, Q or Z (repeatable; default from fixture)");
        sub->add_option("--p", p, "coefficient degree")->check(CLI::NonNegativeNumber);
        sub->add_option("--q", q, "homological degree")->check(CLI::NonNegativeNumber);
        sub->add_flag("--strict-triangulation", strict, "reject non-regular triangulations");
        sub->add_option("--report", report, "write the JSON report here");
    }
    CLI11_PARSE(app, argc, argv);

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return tropdual::run_command(command, fixture, rings, p, q, strict, report, std::cout);
    } catch (const tropdual::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
