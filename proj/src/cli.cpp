#include "elastica/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "elastica/config.hpp"
#include "elastica/energies.hpp"
#include "elastica/imaging.hpp"
#include "elastica/solver.hpp"

namespace elastica::cli {

namespace {

// Usage problems detected after parsing (bad values, conflicting options).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  return f;
}

struct DenoiseArgs {
  std::string in, out, history, config;
  int model = 0;
  std::map<std::string, std::string> overrides;
};

struct NoiseArgs {
  std::string in, out;
  double sd = 0.06;
  std::uint64_t seed = 0;
  bool no_clamp = false;
};

struct EnergyArgs {
  std::string in, json, csv;
  EnergyParams params;
};

struct SweepArgs {
  std::string clean, out, sd = "0,0.1,0.2,0.3,0.4", regularizers = "F0,F1,F2";
  int seeds = 10;
  std::uint64_t seed_base = 0;
  EnergyParams params;
  double beta_f0 = 1e-2;
};

struct MetricsArgs {
  std::string a, b;
  bool psnr = false, ssim = false;
};

int do_denoise(const DenoiseArgs& a, std::ostream& out, std::ostream& err) {
  // defaults(model) < config file < flags
  SolverConfig from_file;
  if (!a.config.empty()) from_file = read_config_file(a.config, SolverConfig{});
  Model model = Model::One;
  if (a.model != 0) {
    model = a.model == 1 ? Model::One : Model::Two;
  } else if (!a.config.empty()) {
    model = from_file.model;
  }
  SolverConfig cfg = SolverConfig::defaults(model);
  if (!a.config.empty()) cfg = read_config_file(a.config, cfg);
  cfg.model = model;
  for (const auto& [k, v] : a.overrides) apply_setting(cfg, k, v);
  cfg.validate();
  err << "# resolved config\n" << to_key_value(cfg);

  const ColorField f = read_png(a.in);
  const DenoiseResult r = denoise(f, cfg, !a.history.empty());
  write_png(a.out, r.u);
  if (!a.history.empty()) {
    std::ofstream h = open_out(a.history);
    h << "iteration,energy,rel_change\n";
    h << 0 << ',' << csv_number(r.history.initial_energy) << ",\n";
    for (std::size_t n = 0; n < r.history.size(); ++n) {
      h << n + 1 << ',' << csv_number(r.history.energy[n]) << ','
        << csv_number(r.history.rel_change[n]) << '\n';
    }
  }
  out << "iterations=" << r.iterations << " converged=" << (r.converged ? 1 : 0) << '\n';
  return kOk;
}

int do_add_noise(const NoiseArgs& a, std::ostream&, std::ostream& err) {
  if (!(a.sd >= 0.0)) throw UsageError("--sd must be >= 0");
  err << "# resolved config\nsd=" << csv_number(a.sd) << "\nseed=" << a.seed
      << "\nclamp=" << (a.no_clamp ? 0 : 1) << '\n';
  const ColorField f = read_png(a.in);
  Rng rng(a.seed);
  write_png(a.out, add_gaussian_noise(f, a.sd, rng, !a.no_clamp));
  return kOk;
}

void print_params(std::ostream& err, const EnergyParams& p) {
  err << "# resolved config\nalpha=" << csv_number(p.alpha) << "\nbeta=" << csv_number(p.beta)
      << "\neps=" << csv_number(p.eps) << "\nm=" << p.m_power << '\n';
}

int do_energy(const EnergyArgs& a, std::ostream& out, std::ostream& err) {
  if (!(a.params.alpha > 0.0) || a.params.m_power < 1) throw UsageError("need alpha > 0, m >= 1");
  print_params(err, a.params);
  const EnergyReport r = energy_report(read_png(a.in), a.params);
  const std::pair<const char*, double> rows[] = {
      {"A0", r.A0}, {"A1", r.A1}, {"E0", r.E0}, {"E1", r.E1}, {"E2", r.E2}, {"F0", r.F0},
      {"F1", r.F1}, {"F2", r.F2}, {"F_PA", r.F_PA}, {"F_CTV", r.F_CTV}, {"F_VTV", r.F_VTV}};
  nlohmann::ordered_json j;
  j["alpha"] = r.alpha;
  j["beta"] = r.beta;
  j["m"] = r.m_power;
  for (const auto& [name, v] : rows) j[name] = v;
  if (!a.csv.empty()) {
    std::ofstream c = open_out(a.csv);
    c << "name,value\n";
    for (const auto& [name, v] : rows) c << name << ',' << csv_number(v) << '\n';
  }
  if (!a.json.empty()) {
    open_out(a.json) << j.dump(2) << '\n';
  }
  if (a.csv.empty() && a.json.empty()) out << j.dump(2) << '\n';
  return kOk;
}

int do_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<double> sds;
  for (const std::string& s : split_list(a.sd)) {
    try {
      std::size_t used = 0;
      sds.push_back(std::stod(s, &used));
      if (used != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      throw UsageError("bad value in --sd: " + s);
    }
    if (!(sds.back() >= 0.0)) throw UsageError("--sd values must be >= 0");
  }
  if (sds.empty()) throw UsageError("--sd list is empty");
  std::vector<Regularizer> regs;
  for (const std::string& s : split_list(a.regularizers)) {
    const auto r = parse_regularizer(s);
    if (!r) throw UsageError("unknown regularizer " + s);
    regs.push_back(*r);
  }
  if (regs.empty()) throw UsageError("--regularizers list is empty");
  if (a.seeds < 1) throw UsageError("--seeds must be >= 1");
  print_params(err, a.params);
  err << "beta_f0=" << csv_number(a.beta_f0) << "\nseeds=" << a.seeds
      << "\nseed_base=" << a.seed_base << '\n';

  auto params_for = [&](Regularizer r) {
    EnergyParams p = a.params;
    if (r == Regularizer::F0 || r == Regularizer::E0) p.beta = a.beta_f0;
    return p;
  };
  const ColorField clean = read_png(a.clean);
  std::vector<double> base;
  for (Regularizer r : regs) base.push_back(evaluate(clean, r, params_for(r)));

  std::ofstream file;
  if (!a.out.empty()) file = open_out(a.out);
  std::ostream& csv = a.out.empty() ? out : file;
  csv << "sd,seed,regularizer,value,relative_value\n";
  for (double sd : sds) {
    for (int s = 0; s < a.seeds; ++s) {
      const std::uint64_t seed = a.seed_base + static_cast<std::uint64_t>(s);
      Rng rng(seed);
      const ColorField noisy = add_gaussian_noise(clean, sd, rng, true);
      for (std::size_t i = 0; i < regs.size(); ++i) {
        const double v = evaluate(noisy, regs[i], params_for(regs[i]));
        if (base[i] == 0.0) throw std::domain_error("clean-image energy is zero");
        csv << csv_number(sd) << ',' << seed << ',' << to_string(regs[i]) << ','
            << csv_number(v) << ',' << csv_number(v / base[i]) << '\n';
      }
    }
  }
  return kOk;
}

int do_metrics(const MetricsArgs& a, std::ostream& out, std::ostream& err) {
  const bool both = !a.psnr && !a.ssim;
  err << "# resolved config\npsnr=" << (both || a.psnr) << "\nssim=" << (both || a.ssim) << '\n';
  const ColorField u = read_png(a.a);
  const ColorField ref = read_png(a.b);
  if (!(u.grid() == ref.grid())) throw UsageError("images differ in size");
  if (both || a.psnr) out << "psnr=" << csv_number(psnr(u, ref)) << '\n';
  if (both || a.ssim) out << "ssim=" << csv_number(ssim(u, ref)) << '\n';
  return kOk;
}

void add_energy_options(CLI::App* cmd, EnergyParams& p) {
  cmd->add_option("--alpha", p.alpha, "metric parameter alpha")->capture_default_str();
  cmd->add_option("--beta", p.beta, "curvature weight")->capture_default_str();
  cmd->add_option("--eps", p.eps, "nu-field regularisation")->capture_default_str();
  cmd->add_option("--m", p.m_power, "power m of the metric weight")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Colour image denoising with curvature-regularised surface models"};
  app.require_subcommand(1);

  DenoiseArgs den;
  auto* c_den = app.add_subcommand("denoise", "denoise a PNG image");
  c_den->add_option("--in", den.in, "noisy input PNG")->required()->check(CLI::ExistingFile);
  c_den->add_option("--out", den.out, "output PNG")->required();
  c_den->add_option("--model", den.model, "1 or 2")->check(CLI::IsMember({1, 2}));
  c_den->add_option("--config", den.config, "key=value file; flags override it")
      ->check(CLI::ExistingFile);
  c_den->add_option("--history", den.history, "CSV of per-iteration energy and change");
  for (const std::string& key : config_keys()) {
    if (key == "model") continue;
    std::string flag = "--" + key;
    std::replace(flag.begin() + 2, flag.end(), '_', '-');
    c_den->add_option_function<std::string>(
        flag, [&den, key](const std::string& v) { den.overrides[key] = v; }, "override " + key);
  }

  NoiseArgs noise;
  auto* c_noise = app.add_subcommand("add-noise", "add Gaussian noise to a PNG image");
  c_noise->add_option("--in", noise.in)->required()->check(CLI::ExistingFile);
  c_noise->add_option("--out", noise.out)->required();
  c_noise->add_option("--sd", noise.sd, "standard deviation")->capture_default_str();
  c_noise->add_option("--seed", noise.seed)->capture_default_str();
  c_noise->add_flag("--no-clamp", noise.no_clamp, "keep values outside [0, 1]");

  EnergyArgs en;
  auto* c_en = app.add_subcommand("energy", "report all regularizer energies of an image");
  c_en->add_option("--in", en.in)->required()->check(CLI::ExistingFile);
  add_energy_options(c_en, en.params);
  c_en->add_option("--json", en.json, "write JSON here");
  c_en->add_option("--csv", en.csv, "write CSV here");

  SweepArgs sw;
  sw.params.beta = 30.0;
  auto* c_sw = app.add_subcommand("sweep", "relative energies of noisy copies of a clean image");
  c_sw->add_option("--clean", sw.clean)->required()->check(CLI::ExistingFile);
  c_sw->add_option("--sd", sw.sd, "comma separated noise levels")->capture_default_str();
  c_sw->add_option("--seeds", sw.seeds, "noise realisations per level")->capture_default_str();
  c_sw->add_option("--seed-base", sw.seed_base)->capture_default_str();
  c_sw->add_option("--regularizers", sw.regularizers)->capture_default_str();
  add_energy_options(c_sw, sw.params);
  c_sw->add_option("--beta-f0", sw.beta_f0, "beta used for E0 and F0")->capture_default_str();
  c_sw->add_option("--out", sw.out, "CSV path (stdout if absent)");

  MetricsArgs me;
  auto* c_me = app.add_subcommand("metrics", "PSNR / SSIM of --a against reference --b");
  c_me->add_option("--a", me.a)->required()->check(CLI::ExistingFile);
  c_me->add_option("--b", me.b)->required()->check(CLI::ExistingFile);
  c_me->add_flag("--psnr", me.psnr);
  c_me->add_flag("--ssim", me.ssim);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      err << sub->help();
    } else {
      err << app.help();
    }
    return kUsage;
  }

  try {
    if (c_den->parsed()) return do_denoise(den, out, err);
    if (c_noise->parsed()) return do_add_noise(noise, out, err);
    if (c_en->parsed()) return do_energy(en, out, err);
    if (c_sw->parsed()) return do_sweep(sw, out, err);
    if (c_me->parsed()) return do_metrics(me, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    // bad config values and malformed config files
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DivergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace elastica::cli
