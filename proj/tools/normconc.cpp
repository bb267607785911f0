// normconc command-line front end. Reads a JSON request (file or stdin), runs it
// through the C API and writes the report to stdout. Exit 0 on success, 2 on
// validation errors, 1 on internal failures.

#include "normconc/normconc.h"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

std::string read_input(const std::string& path) {
  std::ostringstream os;
  if (path == "-") {
    os << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    os << in.rdbuf();
  }
  return os.str();
}

std::uint64_t default_seed() {
  const char* env = std::getenv("NORMCONC_SEED");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 0);
  if (*end != '\0') throw std::runtime_error("NORMCONC_SEED is not an integer");
  return v;
}

// Appends the --output flag to a JSON object request; duplicate keys resolve to the
// last occurrence, so the flag wins over the file.
std::string with_output(std::string request, const std::string& output) {
  if (output.empty()) return request;
  const auto brace = request.find_last_of('}');
  if (brace == std::string::npos) return request;
  const auto prev = request.find_last_not_of(" \t\r\n", brace - 1);
  const bool empty = prev == std::string::npos || request[prev] == '{';
  request.insert(brace, std::string(empty ? "" : ",") + "\"output\":\"" + output + "\"");
  return request;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Psi-normal distance concentration bounds"};
  app.require_subcommand(1);
  std::string input = "-";
  std::string output;
  std::uint64_t seed = 0;
  bool seed_given = false;

  auto add_common = [&](CLI::App* sub, bool takes_input) {
    if (takes_input) sub->add_option("-i,--input", input, "JSON request file, '-' for stdin")->capture_default_str();
    sub->add_option("-o,--output", output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t s) { seed = s, seed_given = true; }, "default seed (overrides NORMCONC_SEED)");
  };
  add_common(app.add_subcommand("bound", "concentration bound for a set"), true);
  add_common(app.add_subcommand("allocate", "sample allocation under a budget"), true);
  add_common(app.add_subcommand("verify", "Monte Carlo check of bounds"), true);
  add_common(app.add_subcommand("sharpness", "interior-ball and curvature diagnostics"), true);
  auto* compare = app.add_subcommand("compare", "closed-form bound sweeps");
  add_common(compare, false);
  std::string example = "quadratic";
  double theta = 0.125;
  long n_max = 100;
  long n_min = 1;
  compare->add_option("--example", example, "example name")->check(CLI::IsMember({"quadratic"}))->capture_default_str();
  compare->add_option("--theta", theta, "level theta")->required();
  compare->add_option("--n-max", n_max, "largest N")->required();
  compare->add_option("--n-min", n_min, "smallest N")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  std::string request;
  try {
    if (command == "compare") {
      char buf[256];
      std::snprintf(buf, sizeof buf, "{\"example\":\"%s\",\"theta\":%.17g,\"n_max\":%ld,\"n_min\":%ld,\"output\":\"%s\"}",
                    example.c_str(), theta, n_max, n_min, output.empty() ? "csv" : output.c_str());
      request = buf;
    } else {
      request = with_output(read_input(input), output);
    }
    if (!seed_given) seed = default_seed();
  } catch (const std::exception& e) {
    std::cerr << "normconc: " << e.what() << '\n';
    return 2;
  }

  nc_context* ctx = nullptr;
  if (nc_context_create(seed, &ctx) != NC_OK) {
    std::cerr << "normconc: cannot create context\n";
    return 1;
  }
  char* text = nullptr;
  const nc_status st = nc_run(ctx, command.c_str(), request.c_str(), &text);
  int rc = 0;
  if (st == NC_OK) {
    std::fputs(text, stdout);
    nc_text_free(text);
  } else {
    std::cerr << "normconc: " << nc_status_name(st) << ": " << nc_last_error(ctx) << '\n';
    rc = st == NC_INTERNAL ? 1 : 2;
  }
  nc_context_destroy(ctx);
  return rc;
}
