// SPDX-License-Identifier: Apache-2.0
//
// Command-line frontend: dispersions, zero-detuning fields, Hopfield
// polariton sweeps, transfer-matrix transmission maps, and coupling fits,
// all driven by a sectioned key=value config file. Outputs are plot-ready
// CSV with the resolved configuration echoed in a comment header.

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "landau/commands.hpp"
#include "landau/config.hpp"
#include "landau/errors.hpp"
#include "landau/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitSchema = 4;

void print_zerodetune_table(const std::vector<landau::ZeroDetuneRow>& rows) {
  std::cout << std::left << std::setw(6) << "mode" << std::setw(16)
            << "k [1/m]" << "B_zero [T]\n";
  for (const auto& r : rows) {
    std::cout << std::left << std::setw(6) << r.mode << std::setw(16)
              << landau::detail::format_double(r.k_per_m);
    if (r.field_tesla) {
      std::cout << landau::detail::format_double(*r.field_tesla);
    } else {
      std::cout << "no solution (minimum attainable "
                << landau::detail::format_double(*r.min_freq_thz) << " THz)";
    }
    std::cout << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multimode Landau-polariton toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::string pol_name = "active";
  app.add_option("--config", config_path, "configuration file")->required();
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--pol", pol_name, "polarization: active|inactive")
      ->check(CLI::IsMember({"active", "inactive"}));

  auto* zerodetune = app.add_subcommand(
      "zerodetune", "zero-detuning magnetic fields of CR and MP modes");
  auto* dispersion = app.add_subcommand(
      "dispersion", "bare dispersion curves (matter modes vs B, plasmon vs k)");
  auto* polaritons = app.add_subcommand(
      "polaritons", "Hopfield polariton branches over the field sweep");

  auto* transmission = app.add_subcommand(
      "transmission", "transfer-matrix transmittance map over (B, frequency)");
  bool with_peaks = false;
  bool passive = false;
  transmission->add_flag("--peaks", with_peaks,
                         "also extract and write transmission peaks");
  transmission->add_flag("--passive", passive,
                         "zero all couplings (bare cavity)");

  auto* fitcmd = app.add_subcommand(
      "fit", "least-squares coupling extraction from a peak list");
  std::string peaks_path;
  std::uint64_t synthetic_seed = 0;
  bool have_synthetic = false;
  double noise_frac = -1.0;
  bool shared_gn = false;
  fitcmd->add_option("peaks_csv", peaks_path,
                     "peak dataset (B_T,freq_THz[,weight][,label])");
  fitcmd
      ->add_option("--synthetic", synthetic_seed,
                   "generate seeded synthetic peaks from the config instead")
      ->expected(1);
  fitcmd->add_flag("--shared-gn", shared_gn,
                   "fit one shared coupling for all MP modes");
  fitcmd->add_option("--noise", noise_frac,
                     "relative Gaussian noise for --synthetic");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }
  have_synthetic = fitcmd->count("--synthetic") > 0;

  try {
    const landau::Config cfg = landau::load_config(config_path);
    const landau::Polarization pol = pol_name == "active"
                                         ? landau::Polarization::CRActive
                                         : landau::Polarization::CRInactive;

    if (zerodetune->parsed()) {
      const auto rows = landau::cmd_zerodetune(cfg);
      print_zerodetune_table(rows);
      const auto dir = landau::detail::prepare_out_dir(out_dir);
      auto os = landau::detail::open_out(dir / "zerodetune.csv");
      landau::write_zerodetune_csv(os, rows, cfg);
    } else if (dispersion->parsed()) {
      landau::cmd_dispersion(cfg, out_dir);
      std::cout << "wrote dispersion_vs_b.csv and plasmon_vs_k.csv to "
                << out_dir << "\n";
    } else if (polaritons->parsed()) {
      const auto spec = landau::cmd_polaritons(cfg, out_dir);
      std::cout << "wrote polaritons.csv (" << spec.branch_count()
                << " branches x " << spec.field_tesla.size()
                << " fields) to " << out_dir << "\n";
    } else if (transmission->parsed()) {
      const auto out =
          landau::cmd_transmission(cfg, pol, passive, with_peaks, out_dir);
      std::cout << "wrote transmission map ("
                << out.map.field_tesla.size() << " x "
                << out.map.freq_thz.size() << ") to " << out_dir << "\n";
      if (with_peaks) {
        std::cout << "extracted " << out.peaks.size() << " peaks\n";
      }
    } else if (fitcmd->parsed()) {
      landau::FitCommandOptions opts;
      opts.shared_gn = shared_gn;
      if (noise_frac >= 0.0) opts.noise_frac = noise_frac;
      landau::FitCommandResult res;
      if (have_synthetic) {
        opts.synthetic_seed = synthetic_seed;
        res = landau::cmd_fit_synthetic(cfg, opts, out_dir);
      } else {
        if (peaks_path.empty()) {
          std::cerr << "fit: provide a peaks CSV or --synthetic <seed>\n";
          return kExitSchema;
        }
        res = landau::cmd_fit(cfg, landau::read_peaks_csv_file(peaks_path),
                              opts, out_dir);
      }
      landau::print_fit_summary(std::cout, res.result, cfg);
      if (!res.result.converged) return kExitNumerical;
    }
    return kExitOk;
  } catch (const landau::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const landau::schema_error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const landau::numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const landau::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
