#include <iostream>

#include "CLI11.hpp"
#include "theta_forge/cli/dispatch.hpp"

int main(int argc, char** argv) {
  using namespace theta_forge;
  CLI::App app{"Theta pairings and stable homology of graded hypersurface matrix factorizations"};
  app.require_subcommand(1);

  std::string path;
  std::size_t window = 0;
  std::string fibers;
  bool strict = false;
  for (const auto& name : cli::commands()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("spec", path, "JSON job specification")->required()->check(CLI::ExistingFile);
    sub->add_option("--window", window, "homological window (at least 2)");
    sub->add_option("--fibers", fibers, "comma separated fibers, e.g. Q,3,7");
    sub->add_flag("--strict", strict, "treat invalid fibers as failures");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  cli::Options opt;
  opt.strict = strict;
  if (window) opt.window = window;
  cli::Outcome out;
  try {
    if (!fibers.empty()) opt.fibers = cli::parse_fiber_list(fibers);
    out = cli::run_file(command, path, opt);
  } catch (const Error& e) {
    out = {cli::exit_code_for(e.code()), cli::error_report(e, path)};
  }
  std::cout << out.report.dump(2) << "\n";
  if (out.exit_code != 0 && out.report.contains("message"))
    std::cerr << "theta_forge: " << out.report["error"].get<std::string>() << ": "
              << out.report["message"].get<std::string>() << "\n";
  return out.exit_code;
}
