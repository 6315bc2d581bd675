// Command-line front end over the pliml C API.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pliml/pliml.h"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

struct CliError {
  std::string message;
};

void check(pliml_status status) {
  if (status != PLIML_OK) throw CliError{std::string(pliml_status_name(status)) + ": " + pliml_last_error()};
}

using MapPtr = std::unique_ptr<pliml_map, decltype(&pliml_map_free)>;
using OrbitPtr = std::unique_ptr<pliml_orbit, decltype(&pliml_orbit_free)>;
using StrPtr = std::unique_ptr<char, decltype(&pliml_string_free)>;

StrPtr own(char* s) { return StrPtr(s, &pliml_string_free); }

std::string read_source(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{"io: cannot read '" + path + "'"};
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw CliError{"io: cannot write '" + path + "'"};
}

// `builtin:NAME`, `-` for standard input, or a file path.
MapPtr load_map(const std::string& source) {
  pliml_map* m = nullptr;
  if (source.rfind("builtin:", 0) == 0) {
    check(pliml_map_builtin(source.c_str() + 8, &m));
  } else {
    check(pliml_map_parse(read_source(source).c_str(), &m));
  }
  return MapPtr(m, &pliml_map_free);
}

MapPtr iterate_map(MapPtr map, unsigned n, std::size_t budget) {
  if (n <= 1) return map;
  pliml_map* out = nullptr;
  check(pliml_map_iterate(map.get(), n, budget, &out));
  return MapPtr(out, &pliml_map_free);
}

OrbitPtr load_orbit(const std::string& spec) {
  const bool inline_form = spec.rfind("const:", 0) == 0 || spec.find("period:") != std::string::npos;
  const std::string text = inline_form ? spec : read_source(spec);
  pliml_orbit* o = nullptr;
  check(pliml_orbit_parse(text.c_str(), &o));
  return OrbitPtr(o, &pliml_orbit_free);
}

struct MapSource {
  std::string builtin;
  std::string file;
  unsigned iterate = 1;

  void attach(CLI::App* cmd, bool with_iterate = true) {
    auto* b = cmd->add_option("--builtin", builtin, "Built-in map (see `pliml builtins`)");
    auto* f = cmd->add_option("--map", file, "Map file: one `x y` breakpoint per line, or builtin:NAME");
    b->excludes(f);
    if (with_iterate) cmd->add_option("--iterate", iterate, "Use the n-th iterate")->check(CLI::PositiveNumber);
  }

  MapPtr load(std::size_t budget = 0) const {
    std::string source = !builtin.empty() ? "builtin:" + builtin : file;
    if (source.empty()) throw CliError{"invalid_argument: give --builtin NAME or --map FILE"};
    return iterate_map(load_map(source), iterate, budget);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Piecewise-linear interval maps: zigzags, branch dynamics and inverse-limit certificates"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pliml_version()));
  std::string output;
  std::size_t budget = 0;

  auto* plot = app.add_subcommand("plot", "Render a map as SVG (or CSV)");
  MapSource plot_src;
  plot_src.attach(plot);
  unsigned width = 400;
  unsigned height = 400;
  std::vector<std::string> guides;
  std::vector<std::string> marks;
  bool diagonal = false;
  bool csv = false;
  plot->add_option("--width", width, "Canvas width in pixels")->check(CLI::PositiveNumber);
  plot->add_option("--height", height, "Canvas height in pixels")->check(CLI::PositiveNumber);
  plot->add_option("--guide", guides, "Dashed guides x = c and y = c");
  plot->add_option("--mark", marks, "Marked point x,y");
  plot->add_flag("--diagonal", diagonal, "Dashed diagonal y = x");
  plot->add_flag("--csv", csv, "Write breakpoints as CSV instead of SVG");
  plot->add_option("-o,--output", output, "Output file (default: standard output)");

  auto* analyze = app.add_subcommand("analyze", "Report critical set, zigzag set, orbits and leo verdict as JSON");
  MapSource analyze_src;
  analyze_src.attach(analyze);
  bool non_strict = false;
  std::string leo_epsilon;
  std::size_t orbit_budget = 0;
  analyze->add_flag("--non-strict", non_strict, "Allow ties in the zigzag extremum condition");
  analyze->add_option("--leo-epsilon", leo_epsilon, "Also report leo_uniform_N for this epsilon");
  analyze->add_option("--orbit-budget", orbit_budget, "Steps per critical orbit");
  analyze->add_option("-o,--output", output, "Output file");

  auto* certify = app.add_subcommand("certify", "Certify a backward orbit; exit 0 pass, 1 fail, 2 error");
  MapSource certify_src;
  certify_src.attach(certify, false);
  std::string pipeline = "minc";
  std::string orbit_spec;
  std::size_t stages = 10;
  unsigned jobs = 1;
  certify->add_option("--pipeline", pipeline, "minc (fixed map f_M) or general")
      ->check(CLI::IsMember({"minc", "general"}));
  certify->add_option("--orbit", orbit_spec, "const:q, `prefix: ... ; period: ...`, or a file")->required();
  certify->add_option("--stages", stages, "Explicitly verified stages")->check(CLI::PositiveNumber);
  certify->add_option("--jobs", jobs, "Worker threads for zigzag verdicts")->check(CLI::PositiveNumber);
  certify->add_option("--budget", budget, "Breakpoint budget for composed maps");
  certify->add_option("-o,--output", output, "Certificate file (default: standard output)");

  auto* compose = app.add_subcommand("compose", "Print outer o inner");
  std::string outer_src;
  std::string inner_src;
  compose->add_option("outer", outer_src, "builtin:NAME, file, or -")->required();
  compose->add_option("inner", inner_src, "builtin:NAME, file, or -")->required();
  compose->add_option("--budget", budget, "Breakpoint budget");
  compose->add_option("-o,--output", output, "Output file");

  auto* iterate = app.add_subcommand("iterate", "Print the n-th iterate");
  MapSource iterate_src;
  iterate_src.attach(iterate, false);
  unsigned n = 1;
  iterate->add_option("-n", n, "Iterate count")->required()->check(CLI::PositiveNumber);
  iterate->add_option("--budget", budget, "Breakpoint budget");
  iterate->add_option("-o,--output", output, "Output file");

  auto* verify = app.add_subcommand("verify", "Re-check a certificate; exit 0 when consistent and passing");
  std::string certificate_path;
  verify->add_option("certificate", certificate_path, "Certificate file or -")->required();

  auto* builtins = app.add_subcommand("builtins", "List built-in maps");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*plot) {
      auto map = plot_src.load();
      char* text = nullptr;
      if (csv) {
        check(pliml_plot_csv(map.get(), &text));
      } else {
        std::string guide_text;
        for (const auto& g : guides) guide_text += g + " ";
        std::string mark_text;
        for (const auto& m : marks) mark_text += m + " ";
        pliml_plot_options options{width, height, guide_text.c_str(), mark_text.c_str(), diagonal ? 1 : 0};
        check(pliml_plot_svg(map.get(), &options, &text));
      }
      write_output(output, own(text).get());
    } else if (*analyze) {
      auto map = analyze_src.load();
      pliml_analyze_options options{non_strict ? 1 : 0, orbit_budget, leo_epsilon.empty() ? nullptr : leo_epsilon.c_str()};
      char* text = nullptr;
      check(pliml_analyze(map.get(), &options, &text));
      write_output(output, own(text).get());
    } else if (*certify) {
      auto orbit = load_orbit(orbit_spec);
      pliml_certify_options options{stages, jobs, budget};
      char* cert = nullptr;
      char* summary = nullptr;
      int passed = 0;
      if (pipeline == "minc") {
        check(pliml_certify_minc(orbit.get(), &options, &cert, &passed, &summary));
      } else {
        auto map = certify_src.load(budget);
        check(pliml_certify_general(map.get(), orbit.get(), &options, &cert, &passed, &summary));
      }
      auto cert_text = own(cert);
      auto summary_text = own(summary);
      write_output(output, cert_text.get());
      std::cerr << summary_text.get();
      return passed ? 0 : kExitFail;
    } else if (*compose) {
      auto outer = load_map(outer_src);
      auto inner = load_map(inner_src);
      pliml_map* out = nullptr;
      check(pliml_map_compose(outer.get(), inner.get(), budget, &out));
      MapPtr result(out, &pliml_map_free);
      char* text = nullptr;
      check(pliml_map_to_text(result.get(), &text));
      write_output(output, own(text).get());
    } else if (*iterate) {
      auto map = iterate_map(iterate_src.load(), n, budget);
      char* text = nullptr;
      check(pliml_map_to_text(map.get(), &text));
      write_output(output, own(text).get());
    } else if (*verify) {
      const std::string text = read_source(certificate_path);
      int consistent = 0;
      int passed = 0;
      char* problems = nullptr;
      check(pliml_certificate_verify(text.c_str(), &consistent, &passed, &problems));
      auto problem_text = own(problems);
      std::cout << "consistent: " << (consistent ? "yes" : "no") << "\nresult: " << (passed ? "pass" : "fail") << "\n";
      std::cerr << problem_text.get();
      return consistent && passed ? 0 : kExitFail;
    } else if (*builtins) {
      char* names = nullptr;
      check(pliml_builtin_names(&names));
      std::cout << own(names).get();
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitError;
  }
  return 0;
}
