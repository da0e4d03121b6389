#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "twyd/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"twyd: twisted Yetter-Drinfeld modules over finite abelian groups"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string instance_path;
    bool as_json = false;
    twyd::RunOptions opts;
    size_t cap = 0, degree_cap = 0;
    app.add_option("--instance", instance_path, "instance file");
    app.add_flag("--json", as_json, "machine-readable report");
    auto cap_opt = app.add_option("--cap", cap, "positive-root cap for the Weyl groupoid");
    auto dcap_opt = app.add_option("--degree-cap", degree_cap, "largest Nichols degree computed");

    app.add_subcommand("is-abelian", "is the cocycle abelian on the support of the module");
    app.add_subcommand("resolve", "pull the cocycle back to the hat group and solve for a coboundary");
    app.add_subcommand("dynkin", "generalized Dynkin diagram of a diagonal-type module");
    app.add_subcommand("verdict", "decide finiteness of the GK dimension of the Nichols algebra");
    auto rel = app.add_subcommand("relations", "low-degree relations of the Nichols algebra");
    rel->add_option("--degree", opts.degree, "degree")->default_val(2);
    auto en = app.add_subcommand("enumerate", "enumerate minimal nondiagonal objects");
    en->add_option("--n", opts.n, "order of the cocycle ratio")->required();
    app.add_subcommand("selftest", "quick internal checks");

    CLI11_PARSE(app, argc, argv);
    if (*cap_opt) opts.cap = cap;
    if (*dcap_opt) opts.degree_cap = degree_cap;
    std::string cmd = app.get_subcommands().front()->get_name();

    try {
        twyd::InstanceFile inst;
        if (cmd != "selftest") {
            if (instance_path.empty()) throw std::invalid_argument("--instance is required for " + cmd);
            std::ifstream in(instance_path);
            if (!in) throw std::invalid_argument("cannot read " + instance_path);
            std::stringstream buf;
            buf << in.rdbuf();
            inst = twyd::parse_instance(buf.str());
        }
        twyd::Report r = twyd::run_command(cmd, inst, opts);
        if (as_json) std::cout << r.data.dump(2) << "\n";
        else std::cout << r.text;
        return r.exit_code;
    } catch (const std::exception& e) {
        if (as_json) std::cout << twyd::json{{"command", cmd}, {"error", e.what()}}.dump(2) << "\n";
        else std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
