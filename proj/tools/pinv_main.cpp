#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>

#include <CLI11.hpp>

#include "pinv/report.hpp"

namespace {

// Exit codes: 0 success, 2 bad input (document, class, or usage),
// 3 internal invariant failure.
constexpr int exit_input = 2;
constexpr int exit_internal = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw pinv::input_error("cannot open file: " + path);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

// --class is either an index into the document's classes or an inline
// JSON descriptor; the selection replaces the document's class list.
void select_class(pinv::ComputationRequest& req, const std::string& arg) {
    const bool is_index =
        !arg.empty() && std::all_of(arg.begin(), arg.end(),
                                    [](char c) { return c >= '0' && c <= '9'; });
    if (is_index) {
        const std::size_t idx = std::stoul(arg);
        if (idx >= req.classes.size())
            throw pinv::input_error("--class index " + arg + " out of range (" +
                                    std::to_string(req.classes.size()) +
                                    " classes in the document)");
        req.classes = {req.classes[idx]};
        req.class_echoes = {req.class_echoes[idx]};
        return;
    }
    pinv::Json j;
    try {
        j = pinv::Json::parse(arg);
    } catch (const pinv::Json::parse_error& e) {
        throw pinv::input_error(std::string("--class is not valid JSON: ") + e.what());
    }
    req.classes = {pinv::parse_class(j, req.surface, "--class")};
    req.class_echoes = {j};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pinv: exact Poincare invariants of projective surfaces"};
    std::string command, surface_file, class_arg, format = "table", out_file;
    app.add_option("command", command,
                   "run | invariants | compute | wallcheck | components | "
                   "basic-classes | blowup | snf")
        ->required();
    app.add_option("--surface", surface_file, "request document (JSON)")->required();
    app.add_option("--class", class_arg,
                   "class to use: an index into the document's classes, or an "
                   "inline JSON descriptor");
    app.add_option("--format", format, "table (default) or json")
        ->check(CLI::IsMember({"table", "json"}));
    app.add_option("--out", out_file, "write the report to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_input;
    }

    try {
        static const std::vector<std::string> verbs = {
            "run",        "invariants", "compute", "wallcheck",
            "components", "basic-classes", "blowup", "snf"};
        if (std::find(verbs.begin(), verbs.end(), command) == verbs.end())
            throw pinv::input_error("unknown command \"" + command + "\"");

        auto request = pinv::parse_request(read_file(surface_file));
        if (command != "run") request.commands = {command};
        if (!class_arg.empty()) select_class(request, class_arg);

        const pinv::Json report = pinv::run(request);
        const std::string rendered =
            format == "json" ? pinv::render_json(report) : pinv::render_table(report);
        if (out_file.empty()) {
            std::cout << rendered;
        } else {
            std::ofstream out(out_file, std::ios::binary);
            if (!out) throw pinv::input_error("cannot write file: " + out_file);
            out << rendered;
        }
        return 0;
    } catch (const pinv::input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const pinv::engine_error& e) {
        std::cerr << "engine error: " << e.what() << "\n";
        return exit_internal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
}
