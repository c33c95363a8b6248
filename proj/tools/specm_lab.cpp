// specm-lab: runs DSL scripts against the library and reports verdicts.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "specm/dsl.hpp"

namespace {

int run_file(const std::string& path, const std::string& format, const std::string& domain, unsigned long seed) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "specm-lab: cannot read " << path << "\n";
    return 1;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  specm::Domain d = specm::Domain::closed(0, 1);
  if (!domain.empty()) {
    try {
      d = specm::parse_domain(domain);
    } catch (const specm::Error& e) {
      std::cerr << "specm-lab: --domain: " << e.what() << "\n";
      return 3;
    }
  }
  auto fmt = format == "json" ? specm::ReportFormat::Json : specm::ReportFormat::Text;
  auto result = specm::run_text(buf.str(), fmt, d, seed);
  std::cout << result.output;
  return result.exit_code;
}

/// Keeps every accepted line; each new command runs once against the
/// definitions seen so far.
int repl(unsigned long seed) {
  std::string accepted;
  size_t done = 0;
  std::string line;
  std::cout << "specm> " << std::flush;
  while (std::getline(std::cin, line)) {
    if (line == ":quit" || line == ":q") break;
    std::string candidate = accepted + line + "\n";
    try {
      specm::Script s = specm::parse(candidate);
      accepted = candidate;
      specm::Script fresh = s;
      fresh.commands.assign(s.commands.begin() + static_cast<long>(done), s.commands.end());
      done = s.commands.size();
      std::cout << specm::run(fresh, specm::ReportFormat::Text, seed).output;
    } catch (const specm::Error& e) {
      std::cout << e.what() << "\n";
    }
    std::cout << "specm> " << std::flush;
  }
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"specm-lab: exact experiments on rings of piecewise functions"};
  app.require_subcommand(1);

  std::string file, format = "text", domain;
  unsigned long seed = 0;
  auto* run = app.add_subcommand("run", "Run a DSL script");
  run->add_option("file", file, "Script path")->required();
  run->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
  run->add_option("--domain", domain, "Domain used when the script declares none, e.g. \"[0,1]\"");
  run->add_option("--seed", seed, "Seed for sampled cross-checks");

  auto* rp = app.add_subcommand("repl", "Interactive session");
  rp->add_option("--seed", seed, "Seed for sampled cross-checks");

  CLI11_PARSE(app, argc, argv);
  if (run->parsed()) return run_file(file, format, domain, seed);
  return repl(seed);
}
