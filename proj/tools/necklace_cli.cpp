#include "necklace/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace {

std::string slurp(const std::string& path)
{
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

int main(int argc, char** argv)
{
    using namespace necklace::cli;

    CLI::App app{"necklace: cyclic words, necklace brackets and deformation complexes of symmetric quivers"};
    app.require_subcommand(1);

    CommandRequest req;
    std::vector<std::string> files;
    std::string format = "text";
    int w_min = 0;

    auto add_common = [&](CLI::App* sub, std::size_t inputs) {
        sub->add_option("files", files, "input files ('-' for stdin)")->required()->expected(static_cast<int>(inputs));
        sub->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));
    };

    add_common(app.add_subcommand("check-master", "check {W,W} = 0 for a potential"), 1);
    auto* derive = app.add_subcommand("derive", "left cyclic derivative with respect to one variable");
    add_common(derive, 1);
    derive->add_option("--var", req.variable, "variable name")->required();
    add_common(app.add_subcommand("bracket", "necklace bracket {f,g} of two potentials over one alphabet"), 2);
    add_common(app.add_subcommand("canonical", "canonical potential of a quiver given as JSON"), 1);
    auto* coh = app.add_subcommand("cohomology", "cohomology of the deformation complex per (n, w) block");
    add_common(coh, 1);
    coh->add_option("--selector", req.selector, "gcan, g or ghat")->check(CLI::IsMember({"gcan", "g", "ghat"}));
    coh->add_option("--n", req.n, "cohomological degrees")->delimiter(',');
    auto* wmin_opt = coh->add_option("--w-min", w_min, "smallest weight");
    coh->add_option("--w-max", req.w_max, "largest weight");
    coh->add_option("--threads", req.threads, "worker threads (default NECKLACE_THREADS or hardware)");
    add_common(app.add_subcommand("algebra", "extract the algebra of a cubic potential and check it"), 1);
    add_common(app.add_subcommand("classify", "validate a quiver or build one from Ext^1 dimensions"), 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : static_cast<int>(ExitCode::input_error);
    }

    req.command = app.get_subcommands().front()->get_name();
    if (wmin_opt->count() > 0)
        req.w_min = w_min;
    try {
        for (const auto& f : files)
            req.inputs.push_back(slurp(f));
    } catch (const std::exception& e) {
        std::cerr << "necklace: " << e.what() << "\n";
        return static_cast<int>(ExitCode::input_error);
    }

    const auto outcome = run_command(req);
    std::cout << render_report(outcome, format == "json" ? Format::json : Format::text);
    return outcome.exit_code;
}
