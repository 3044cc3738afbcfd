#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "orbifunctor/cli/commands.hpp"

using namespace orbifunctor;

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact homological algebra over finite categories"};
    app.require_subcommand(1, 1);

    std::string manifest_path;
    std::string report_path;
    std::optional<int> degree;
    std::optional<std::size_t> truncation;
    std::string mode;

    for (const auto& name : command_names()) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--manifest,-m", manifest_path, "Manifest JSON")->required()->check(CLI::ExistingFile);
        sub->add_option("--degree,-p", degree, "Single homological degree");
        sub->add_option("--truncation,-K", truncation, "Truncation bound K");
        sub->add_option("--mode", mode, "strict or almost")->check(CLI::IsMember({"strict", "almost"}));
        sub->add_option("--report,-o", report_path, "Write the JSON report here");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitInput;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    const auto start = std::chrono::steady_clock::now();
    try {
        RunOptions options;
        options.degree = degree;
        options.truncation = truncation;
        if (!mode.empty())
            options.mode = fg_mode_from_string(mode);
        const Manifest m = parse_manifest(read_file(manifest_path));
        const Report r = run(command, m, options);
        std::cout << r.to_table();
        if (!report_path.empty()) {
            std::ofstream out(report_path, std::ios::binary);
            if (!out)
                throw InputError("cannot write '" + report_path + "'");
            out << r.to_json();
        }
        const auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        std::cerr << command << ": " << ms << " ms\n";
        return r.pass() ? kExitPass : kExitFail;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const TruncationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: manifest: " << e.what() << "\n";
        return kExitInput;
    }
}
