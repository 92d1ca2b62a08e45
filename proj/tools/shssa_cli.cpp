#include <cstdio>
#include <exception>

#include <CLI11.hpp>

#include "commands.hpp"
#include "shssa/errors.hpp"

namespace {

void report(const char* code, const std::string& msg) {
    std::string line = msg;
    for (char& c : line)
        if (c == '\n' || c == '\r') c = ' ';
    std::fprintf(stderr, "error[%s]: %s\n", code, line.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Singular spectrum analysis on shaped embeddings"};
    app.require_subcommand(1);
    shssa::cli::register_commands(app);
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::fputs(app.help().c_str(), stdout);
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        std::fputs(app.help("", CLI::AppFormatMode::All).c_str(), stdout);
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        report("usage", e.what());
        return 2;
    } catch (const shssa::ValidationError& e) {
        report(e.code().c_str(), e.what());
        return 2;
    } catch (const shssa::Error& e) {
        report(e.code().c_str(), e.what());
        return 1;
    } catch (const std::exception& e) {
        report("internal", e.what());
        return 1;
    }
    return 0;
}
