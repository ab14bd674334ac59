// asn: analyze, synthesize and validate qualification rounds.
//
//   asn analyze  --applications A --medians M --registry R --out DIR
//                [--format delimited-table|structured-document] [--bin-width W]
//   asn synth    --config CONFIG [--seed N] --out DIR
//   asn validate --applications A --medians M --registry R [--strict]
//
// Exit codes: 0 success, 1 validation errors, 2 I/O errors.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "asn/ingest.hpp"
#include "asn/report.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kIo = 2;

struct Inputs {
  std::string applications;
  std::string medians;
  std::string registry;
};

void add_inputs(CLI::App* cmd, Inputs& in) {
  cmd->add_option("--applications", in.applications, "applications CSV")->required();
  cmd->add_option("--medians", in.medians, "median fixtures CSV")->required();
  cmd->add_option("--registry", in.registry, "discipline registry CSV")->required();
}

void print(const std::vector<asn::Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) std::cerr << d.to_string() << '\n';
}

int exit_code_for(const asn::Error& e) {
  return e.code() == asn::Errc::io_error ? kIo : kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ASN qualification round analysis"};
  app.require_subcommand(1);

  Inputs analyze_in;
  std::string out_dir;
  std::string format = "delimited-table";
  double bin_width = 50.0;
  auto* analyze = app.add_subcommand("analyze", "run the full analysis and emit tables");
  add_inputs(analyze, analyze_in);
  analyze->add_option("--out", out_dir, "output directory")->required();
  analyze->add_option("--format", format, "delimited-table or structured-document")
      ->check(CLI::IsMember({"delimited-table", "structured-document"}));
  analyze->add_option("--bin-width", bin_width, "histogram bin width for applications")
      ->check(CLI::PositiveNumber);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string synth_out;
  auto* synth = app.add_subcommand("synth", "generate a synthetic round");
  synth->add_option("--config", config_path, "JSON configuration")->required();
  synth->add_option("--seed", seed, "overrides the configured seed");
  synth->add_option("--out", synth_out, "output directory")->required();

  Inputs validate_in;
  bool strict = false;
  auto* validate = app.add_subcommand("validate", "check the inputs and report diagnostics");
  add_inputs(validate, validate_in);
  validate->add_flag("--strict", strict, "treat warnings as errors");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) {
      auto loaded = asn::load_round(analyze_in.applications, analyze_in.medians,
                                    analyze_in.registry);
      // Damaged rows were skipped; only dataset-level errors stop the run.
      print(loaded.diagnostics);
      const auto report = asn::analyze_round(loaded.data);
      asn::EmitOptions options;
      options.histogram_bin_width = bin_width;
      const auto files =
          asn::emit(report, asn::parse_output_format(format), out_dir, options);
      std::cout << "wrote " << files.size() << " files to " << out_dir << '\n';
      return kOk;
    }
    if (*synth) {
      const auto config = asn::load_synth_config(config_path);
      const auto data = asn::synthesize_round(config, seed.value_or(config.seed));
      asn::save_round(data, synth_out);
      std::cout << "wrote " << data.applications.size() << " applications, "
                << data.medians.size() << " median sets, " << data.registry.size()
                << " disciplines to " << synth_out << '\n';
      return kOk;
    }
    if (*validate) {
      auto loaded = asn::load_round(validate_in.applications, validate_in.medians,
                                    validate_in.registry);
      print(loaded.diagnostics);
      std::size_t errors = 0, warnings = 0;
      for (const auto& d : loaded.diagnostics) {
        ++(d.severity == asn::Severity::error ? errors : warnings);
      }
      std::cout << loaded.data.applications.size() << " applications, " << errors
                << " errors, " << warnings << " warnings\n";
      return errors > 0 || (strict && warnings > 0) ? kInvalid : kOk;
    }
  } catch (const asn::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  }
  return kOk;
}
