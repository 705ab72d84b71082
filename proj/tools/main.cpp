// Command line front end. Everything goes through the C API in multcert.h;
// output is one JSON document per invocation, terminated by a newline.
// Exit codes: 0 success, 1 domain or runtime failure, 2 usage.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "multcert.h"

namespace {

int exit_code_for(mcert_status s) {
  switch (s) {
    case MCERT_OK:
      return 0;
    case MCERT_USAGE:
    case MCERT_WRONG_LENGTH:
    case MCERT_INDEX_OUT_OF_RANGE:
    case MCERT_UNSUPPORTED_PRECISION:
      return 2;
    default:
      return 1;
  }
}

int report_error(mcert_status s) {
  std::fprintf(stderr, "%s\n", mcert_last_error_json());
  return exit_code_for(s);
}

int emit(const std::string& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::fwrite(doc.data(), 1, doc.size(), stdout);
    std::fputc('\n', stdout);
    return 0;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    std::fprintf(stderr, "cannot open output file: %s\n", out_path.c_str());
    return 1;
  }
  f << doc << '\n';
  f.flush();
  return f.good() ? 0 : 1;
}

// Takes ownership of doc.
int finish(mcert_status s, char* doc, const std::string& out_path) {
  if (s != MCERT_OK) {
    mcert_string_free(doc);
    return report_error(s);
  }
  std::string text = doc ? doc : "";
  mcert_string_free(doc);
  return emit(text, out_path);
}

bool slurp(const std::string& path, std::string* text) {
  if (path.empty()) {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    *text = ss.str();
    return true;
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) return false;
  std::ostringstream ss;
  ss << f.rdbuf();
  *text = ss.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"periodic orbit collections with independent multipliers"};
  // --h is the difference step below, so help stays on the long flag only.
  app.set_help_flag("--help", "print help and exit");
  app.set_version_flag("--version", mcert_version());
  app.require_subcommand(1);

  std::int64_t n = 0;
  std::int64_t m = 0;
  std::vector<std::int64_t> periods;
  std::string out_path;
  std::string in_path;
  mcert_options opts;
  mcert_options_init(&opts);

  auto add_output = [&](CLI::App* c) {
    c->set_help_flag("--help", "print help and exit");
    c->add_option("--output", out_path, "write the document to this file instead of stdout");
  };
  auto add_numeric = [&](CLI::App* c) {
    c->add_option("--h", opts.h, "central difference step, in [1e-8, 1e-4]");
    c->add_option("--precision-bits", opts.precision_bits,
                  "working precision for the finite differences (0 = hardware)");
  };

  CLI::App* count = app.add_subcommand("count", "periodic point counts for z -> z^n");
  count->add_option("--n", n, "map degree, >= 2")->required();
  count->add_option("--m", m, "minimal period, >= 1")->required();
  add_output(count);

  CLI::App* enumerate =
      app.add_subcommand("enumerate", "residues of minimal period m with orbit representatives");
  enumerate->add_option("--n", n, "map degree, >= 2")->required();
  enumerate->add_option("--m", m, "minimal period, >= 1")->required();
  add_output(enumerate);

  CLI::App* derivs = app.add_subcommand(
      "derivs", "multiplier derivatives: closed form against finite differences");
  derivs->add_option("--n", n, "map degree, >= 2")->required();
  derivs->add_option("--m", m, "minimal period, >= 1")->required();
  add_numeric(derivs);
  add_output(derivs);

  CLI::App* cert =
      app.add_subcommand("cert", "construct and verify a certificate for a period tuple");
  cert->add_option("--n", n, "map degree, >= 3")->required();
  cert->add_option("--periods", periods, "2n-2 period labels, comma separated")
      ->required()
      ->delimiter(',');
  cert->add_option("--tol", opts.tol, "verification tolerance");
  cert->add_option("--max-backtrack", opts.max_backtrack, "search node budget");
  add_numeric(cert);
  add_output(cert);

  CLI::App* explore =
      app.add_subcommand("explore", "certificate search without the structural guarantees");
  explore->add_option("--n", n, "map degree, >= 3")->required();
  explore->add_option("--periods", periods, "2n-2 period labels, comma separated")
      ->required()
      ->delimiter(',');
  explore->add_option("--tol", opts.tol, "verification tolerance");
  explore->add_option("--max-backtrack", opts.max_backtrack, "search node budget");
  add_numeric(explore);
  add_output(explore);

  CLI::App* verify = app.add_subcommand("verify", "recheck a stored certificate document");
  verify->add_option("--input", in_path, "certificate file (default: stdin)");
  verify->add_option("--tol", opts.tol, "verification tolerance");
  add_numeric(verify);
  add_output(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (count->parsed()) {
    char* doc = nullptr;
    mcert_status s = mcert_count_json(n, m, &doc);
    return finish(s, doc, out_path);
  }
  if (enumerate->parsed()) {
    char* doc = nullptr;
    mcert_status s = mcert_enumerate_json(n, m, &doc);
    return finish(s, doc, out_path);
  }
  if (derivs->parsed()) {
    char* doc = nullptr;
    mcert_status s = mcert_derivs_json(n, m, &opts, &doc);
    return finish(s, doc, out_path);
  }
  if (cert->parsed() || explore->parsed()) {
    mcert_cert* handle = nullptr;
    mcert_status s =
        cert->parsed()
            ? mcert_cert_construct(n, periods.data(), std::int64_t(periods.size()),
                                   &opts, &handle)
            : mcert_cert_explore(n, periods.data(), std::int64_t(periods.size()),
                                 &opts, &handle);
    if (s != MCERT_OK) return report_error(s);
    char* doc = nullptr;
    s = mcert_cert_to_json(handle, &doc);
    mcert_cert_free(handle);
    return finish(s, doc, out_path);
  }
  if (verify->parsed()) {
    std::string text;
    if (!slurp(in_path, &text)) {
      std::fprintf(stderr, "cannot open input file: %s\n", in_path.c_str());
      return 2;
    }
    mcert_cert* handle = nullptr;
    mcert_status s = mcert_cert_parse(text.c_str(), &handle);
    if (s != MCERT_OK) return report_error(s);
    char* doc = nullptr;
    s = mcert_cert_verify(handle, &opts, &doc);
    mcert_cert_free(handle);
    return finish(s, doc, out_path);
  }
  return 2;
}
