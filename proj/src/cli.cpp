#include <CLI11.hpp>

#include <ostream>

#include "seek/commands.hpp"
#include "seek/error.hpp"

namespace seek {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Model-free unicycle source seeking: simulation, comparison and stability checks",
               "seek"};
  app.require_subcommand(1);

  std::string preset;
  std::string config_path;
  std::optional<std::string> out_dir;
  int jobs = 1;

  struct Command {
    const char* name;
    const char* help;
    int (*fn)(const ScenarioConfig&, const CommandOptions&, std::ostream&);
  };
  const Command commands[] = {
      {"simulate", "Integrate the ESC loop; write trajectory.csv and summary.txt", cmd_simulate},
      {"compare", "Run third- and first-order designs on identical settings", cmd_compare},
      {"lbs", "Integrate the Lie bracket system; certificate, V-dot and decay fit", cmd_lbs},
      {"avggap", "Sweep epsilon and record the ESC-to-LBS sup gap", cmd_avggap},
      {"certify", "Check the LBS stability conditions (exit 3 if not certified)", cmd_certify},
  };

  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    auto* p = sub->add_option("--preset", preset, "Built-in preset: table1, table2, table3");
    auto* f = sub->add_option("--config", config_path, "Config file with `key = value` lines");
    p->excludes(f);
    f->excludes(p);
    sub->add_option("--out", out_dir, "Output directory (default: output.dir, $SEEK_OUT, ./seek_out)");
    sub->add_option("--jobs", jobs, "Worker threads for sweeps")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  }

  const Command* chosen = nullptr;
  for (const auto& c : commands) {
    if (app.got_subcommand(c.name)) chosen = &c;
  }

  try {
    const ScenarioConfig cfg = !config_path.empty() ? load_config_file(config_path)
                                                    : load_preset(preset.empty() ? "table1" : preset);
    CommandOptions opt{resolve_output_dir(out_dir, cfg), jobs};
    return chosen->fn(cfg, opt, out);
  } catch (const ParseError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ValidationError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "output error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical abort: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace seek
