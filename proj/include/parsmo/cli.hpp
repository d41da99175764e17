#ifndef PARSMO_CLI_HPP
#define PARSMO_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace parsmo::cli {

// Entry point behind the `parsmo` binary. args[0] is the program name.
// Subcommands: train, fstar, predict. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Reads `key=value` lines ('#' starts a comment) into `--key value` pairs.
std::vector<std::string> config_file_args(const std::string& path);

// --fstar takes either a number or a file whose first token is the number.
double resolve_fstar(const std::string& spec);

}  // namespace parsmo::cli

#endif  // PARSMO_CLI_HPP
