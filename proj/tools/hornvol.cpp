#include "hornvol/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace hornvol::cli;

namespace {

void add_triple(CLI::App* sub, std::string& algebra, std::string& l, std::string& m, std::string& n) {
    sub->add_option("algebra", algebra, "Algebra such as B2, A3, G2")->required();
    sub->add_option("lambda", l, "Dynkin labels, comma separated")->required();
    sub->add_option("mu", m, "Dynkin labels, comma separated")->required();
    sub->add_option("nu", n, "Dynkin labels, comma separated")->required();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Littlewood-Richardson multiplicities, BZ polygons and the B2 Horn volume function"};
    app.require_subcommand(1);
    std::string output_path;
    app.add_option("-o,--output", output_path, "Write the result to this file instead of stdout");
    app.fallthrough();

    LrOptions lr;
    auto* lr_cmd = app.add_subcommand("lr", "Tensor product multiplicity by several algorithms");
    add_triple(lr_cmd, lr.algebra, lr.lambda, lr.mu, lr.nu);
    lr_cmd->add_option("--method", lr.method)->check(CLI::IsMember({"klimyk", "steinberg", "bz", "all"}));
    lr_cmd->add_option("--format", lr.format)->check(CLI::IsMember({"text", "json"}));

    VolumeOptions vol;
    auto* vol_cmd = app.add_subcommand("volume", "Volume function J by independent routes");
    add_triple(vol_cmd, vol.algebra, vol.lambda, vol.mu, vol.nu);
    vol_cmd->add_option("--route", vol.route)->check(CLI::IsMember({"direct", "lr", "ehrhart", "polytope", "all"}));
    vol_cmd->add_option("--format", vol.format)->check(CLI::IsMember({"text", "json"}));

    GridOptions grid;
    auto* grid_cmd = app.add_subcommand("grid", "J and its density over the gamma plane");
    grid_cmd->add_option("alpha", grid.alpha)->required();
    grid_cmd->add_option("beta", grid.beta)->required();
    grid_cmd->add_option("--basis", grid.basis)->check(CLI::IsMember({"dynkin", "orthonormal"}));
    grid_cmd->add_option("--res", grid.resolution, "Grid intervals per axis");
    grid_cmd->add_option("--format", grid.format)->check(CLI::IsMember({"csv", "svg", "json"}));

    EhrhartOptions eh;
    auto* eh_cmd = app.add_subcommand("ehrhart", "Stretching quasi-polynomial of a triple");
    add_triple(eh_cmd, eh.algebra, eh.lambda, eh.mu, eh.nu);
    eh_cmd->add_option("--period", eh.period);
    eh_cmd->add_option("--smax", eh.smax);
    eh_cmd->add_option("--degree", eh.degree);
    eh_cmd->add_option("--format", eh.format)->check(CLI::IsMember({"text", "json"}));

    CovolumeOptions cov;
    auto* cov_cmd = app.add_subcommand("covolume", "Squared covolumes by Gram determinant and closed formula");
    cov_cmd->add_option("--family", cov.family);
    cov_cmd->add_option("--max-rank", cov.max_rank);
    cov_cmd->add_option("--format", cov.format)->check(CLI::IsMember({"md", "json"}));

    SampleOptions smp;
    auto* smp_cmd = app.add_subcommand("sample", "Monte Carlo check of the Horn density");
    smp_cmd->add_option("alpha", smp.alpha)->required();
    smp_cmd->add_option("beta", smp.beta)->required();
    smp_cmd->add_option("-n,--samples", smp.n);
    smp_cmd->add_option("--seed", smp.seed);
    smp_cmd->add_option("--group", smp.group)->check(CLI::IsMember({"b2", "so2"}));
    smp_cmd->add_option("--basis", smp.basis)->check(CLI::IsMember({"dynkin", "orthonormal"}));
    smp_cmd->add_option("--bins", smp.bins);
    smp_cmd->add_option("--threads", smp.threads);
    smp_cmd->add_option("--histogram", smp.histogram_csv, "Histogram CSV output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    CommandResult result;
    if (*lr_cmd) result = cmd_lr(lr);
    else if (*vol_cmd) result = cmd_volume(vol);
    else if (*grid_cmd) result = cmd_grid(grid);
    else if (*eh_cmd) result = cmd_ehrhart(eh);
    else if (*cov_cmd) result = cmd_covolume(cov);
    else if (*smp_cmd) result = cmd_sample(smp);

    if (result.exit_code == 2) {
        std::cerr << result.output;
        return 2;
    }
    if (!output_path.empty()) {
        std::ofstream out(output_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << output_path << "\n";
            return 2;
        }
        out << result.output;
    } else {
        std::cout << result.output;
    }
    return result.exit_code;
}
