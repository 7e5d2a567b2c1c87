// Batch front end: each positional argument is a scenario JSON file, which is
// parsed, validated, executed, and reported independently.  Exit codes:
//   0  success (and, under --assert, the claim was certified in every file)
//   1  --assert given and some file's claim was refuted or not certified
//   2  malformed scenario (parse/validation error) or unusable file
//   3  numeric failure the library refused to paper over

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include <specfold/errors.hpp>

#include "scenario.hpp"

namespace {

struct Options {
  std::string assert_claim;
  std::string report_path;
  std::string csv_path;
  bool reproducible = false;
};

struct FileOutput {
  std::string out_text;
  std::string err_text;
  int exit_code = 0;
};

bool write_file(const std::string& path, const std::string& content, std::string& error) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) {
    error = "cannot write " + path;
    return false;
  }
  return true;
}

FileOutput process_file(const std::string& path, const Options& options) {
  FileOutput result;
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    result.err_text = "error (" + path + "): cannot open file\n";
    result.exit_code = 2;
    return result;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();

  try {
    nlohmann::json spec = specfold::cli::parse_scenario(buffer.str());
    specfold::cli::Outcome outcome = specfold::cli::run_scenario(spec, options.csv_path);

    std::istringstream human(outcome.human);
    std::string line;
    bool first = true;
    while (std::getline(human, line)) {
      result.out_text += (first ? path + ": " : "  ") + line + "\n";
      first = false;
    }

    if (!options.assert_claim.empty()) {
      bool certified = std::find(outcome.certified.begin(), outcome.certified.end(),
                                 options.assert_claim) != outcome.certified.end();
      result.out_text +=
          "assert " + options.assert_claim + ": " + (certified ? "certified" : "not certified") + "\n";
      result.exit_code = certified ? 0 : 1;
    }

    std::string error;
    for (const auto& [artifact_path, content] : outcome.artifacts) {
      if (!write_file(artifact_path, content, error)) {
        result.err_text += "error (" + path + "): " + error + "\n";
        result.exit_code = 2;
        return result;
      }
    }

    std::string report = specfold::cli::render_report(spec, outcome, options.reproducible);
    if (options.report_path.empty()) {
      result.out_text += report;
    } else if (!write_file(options.report_path, report, error)) {
      result.err_text += "error (" + path + "): " + error + "\n";
      result.exit_code = 2;
    }
  } catch (const specfold::NumericError& failure) {
    result.err_text += "error (" + path + "): " + failure.what() + "\n";
    result.exit_code = 3;
  } catch (const specfold::ValidationError& failure) {
    result.err_text += "error (" + path + "): " + failure.what() + "\n";
    result.exit_code = 2;
  }
  return result;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verdicts on sampling lattices and generator-family range geometry"};
  app.set_version_flag("--version", "specfold-cli 1.0.0");

  std::vector<std::string> files;
  Options options;
  int jobs = 1;
  app.add_option("scenarios", files, "Scenario JSON files to run")->required();
  app.add_option("--assert", options.assert_claim,
                 "Exit 0 iff this claim is certified in every scenario")
      ->check(CLI::IsMember(specfold::cli::known_claims()));
  app.add_option("--report", options.report_path,
                 "Write the JSON report here instead of stdout (single scenario only)");
  app.add_option("--csv", options.csv_path,
                 "Write the command's CSV dump here (single scenario only)");
  app.add_flag("--reproducible", options.reproducible, "Omit timestamps from reports");
  app.add_option("--jobs", jobs, "Process scenario files concurrently")->check(CLI::Range(1, 256));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    int code = app.exit(error);
    return code == 0 ? 0 : 2;
  }

  if (files.size() > 1 && (!options.report_path.empty() || !options.csv_path.empty())) {
    std::cerr << "error: --report/--csv apply to a single scenario file\n";
    return 2;
  }

  std::vector<FileOutput> results(files.size());
  size_t workers = std::min(static_cast<size_t>(jobs), files.size());
  if (workers <= 1) {
    for (size_t i = 0; i < files.size(); ++i) results[i] = process_file(files[i], options);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (size_t i = next++; i < results.size(); i = next++)
          results[i] = process_file(files[i], options);
      });
    }
    for (auto& worker : pool) worker.join();
  }

  int exit_code = 0;
  for (const auto& result : results) {
    std::cout << result.out_text;
    std::cerr << result.err_text;
    exit_code = std::max(exit_code, result.exit_code);
  }
  return exit_code;
}
