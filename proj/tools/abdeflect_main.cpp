// abdeflect — scenario runner for the solenoid / double-slit deflection library.
//
//   abdeflect <scenario> [--key=value ...] [--config=FILE] [--out=DIR]
//
// Flags override config-file entries. Exit status 0 iff every enabled oracle
// passed its tolerance; 2 on usage errors.

#include <cstring>
#include <iostream>
#include <string>

#include "abdeflect/scenario.hpp"

namespace {

void print_usage(std::ostream& os) {
    os << "usage: abdeflect <scenario> [--key=value ...] [--config=FILE] [--out=DIR]\n\n"
       << "scenarios:\n";
    for (const auto& name : abdeflect::scenario_names()) os << "  " << name << "\n";
    os << "\nParameters are numeric key=value pairs; defaults for a scenario are\n"
       << "embedded in its report. Outputs: <scenario>.csv, <scenario>.report.txt,\n"
       << "<scenario>.summary.json in the --out directory (default: cwd).\n"
       << "ABDEFLECT_THREADS caps sweep parallelism.\n";
}

double parse_number(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty())
        throw abdeflect::UsageError("bad numeric value for --" + key + ": '" + text + "'");
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    using abdeflect::UsageError;
    try {
        if (argc < 2 || std::strcmp(argv[1], "--help") == 0 ||
            std::strcmp(argv[1], "-h") == 0) {
            print_usage(argc < 2 ? std::cerr : std::cout);
            return argc < 2 ? 2 : 0;
        }

        abdeflect::Scenario scenario;
        scenario.name = argv[1];

        std::map<std::string, double> from_flags;
        for (int i = 2; i < argc; ++i) {
            const std::string arg = argv[i];
            if (arg.rfind("--", 0) != 0)
                throw UsageError("unexpected argument '" + arg + "'");
            const auto eq = arg.find('=');
            if (eq == std::string::npos)
                throw UsageError("expected --key=value, got '" + arg + "'");
            const std::string key = arg.substr(2, eq - 2);
            const std::string value = arg.substr(eq + 1);
            if (key == "out") {
                scenario.output_dir = value;
            } else if (key == "config") {
                for (const auto& [k, v] : abdeflect::parse_config_file(value))
                    scenario.params.insert_or_assign(k, v);  // flags applied after, so they win
            } else {
                from_flags[key] = parse_number(key, value);
            }
        }
        for (const auto& [k, v] : from_flags) scenario.params.insert_or_assign(k, v);

        const auto report = abdeflect::run_scenario(scenario);
        std::cout << report.to_text();
        return report.all_pass() ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n\n";
        print_usage(std::cerr);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
