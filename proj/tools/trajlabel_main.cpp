// trajlabel: label trajectory datasets with alignment-based rewards, inspect
// the results, and run the desk-scale evaluation and timing suites.
//
// Exit codes: 0 success, 1 usage/config error, 2 data error, 3 solver
// error, 4 evaluation threshold not met.

#include "trajlabel/dataset.hpp"
#include "trajlabel/gridworld.hpp"
#include "trajlabel/labeling.hpp"
#include "trajlabel/pointmass.hpp"
#include "trajlabel/stats.hpp"
#include "trajlabel/timing.hpp"
#include "trajlabel/version.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <thread>

namespace {

using namespace trajlabel;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitSolver = 3;
constexpr int kExitThreshold = 4;

int worker_count() {
  if (const char* env = std::getenv("TRAJLABEL_WORKERS")) {
    const int n = std::atoi(env);
    if (n < 1) {
      throw std::invalid_argument(
          "TRAJLABEL_WORKERS must be a positive integer");
    }
    return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
}

// Runs fn(i) for i in [0, count) on the worker pool. Results must be written
// to pre-sized slots so the output does not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t count, const Fn& fn) {
  const int workers = std::min<std::size_t>(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next.fetch_add(1); i < count;
             i = next.fetch_add(1)) {
          fn(i);
        }
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// ---------------------------------------------------------------------------
// Shared option handling
// ---------------------------------------------------------------------------

// Raw CLI/config values for everything in LabelParams. Values become
// meaningful only after resolve() applies defaults, the config file, and
// flag-consistency rules.
struct LabelOptions {
  std::string method = "seg-match";
  std::string metric;  // empty -> dataset manifest metric
  double epsilon = 0.01;
  int max_iterations = 1000;
  double marginal_tolerance = 1e-6;
  int context_len = 3;
  std::int64_t mask_halfwidth = 10;
  bool lenient_lengths = false;
  std::int64_t window_halfwidth = 10;
  std::int64_t window_back = 0;
  std::int64_t window_fwd = 0;
  std::string window_stride = "1/1";
  std::string squash;  // default depends on method
  double alpha = 0.0;  // default depends on method
  double beta = 0.0;
  std::string postprocess = "none";
  double rescale_bias = 0.0;
  double rescale_span = 1000.0;
  double online_factor = 10.0;
  std::uint64_t seed = 0;

  std::map<std::string, CLI::Option*> option_of;
  std::set<std::string> from_config;

  void register_options(CLI::App& cmd) {
    option_of["method"] =
        cmd.add_option("--method", method,
                       "Reward method: ot|temporal-ot|min-dist|seg-match|"
                       "seg-window|unified");
    option_of["metric"] = cmd.add_option(
        "--metric", metric, "Ground metric: cosine|euclidean (default: "
        "the dataset manifest's metric)");
    option_of["epsilon"] = cmd.add_option(
        "--epsilon", epsilon, "Entropic regularization (ot, temporal-ot)");
    option_of["max-iterations"] =
        cmd.add_option("--max-iterations", max_iterations,
                       "Sinkhorn iteration limit (ot, temporal-ot)");
    option_of["marginal-tolerance"] =
        cmd.add_option("--marginal-tolerance", marginal_tolerance,
                       "Sinkhorn marginal residual tolerance (ot, temporal-ot)");
    option_of["context-len"] = cmd.add_option(
        "--context-len", context_len,
        "Aligned steps per cost entry (temporal-ot, seg-window)");
    option_of["mask-halfwidth"] =
        cmd.add_option("--mask-halfwidth", mask_halfwidth,
                       "Coupling band half-width (temporal-ot)");
    option_of["lenient-lengths"] = cmd.add_flag(
        "--lenient-lengths", lenient_lengths,
        "Allow unequal agent/expert lengths by stretching the band "
        "(temporal-ot)");
    option_of["window-halfwidth"] =
        cmd.add_option("--window-halfwidth", window_halfwidth,
                       "Expert window half-width (seg-window)");
    option_of["window-back"] = cmd.add_option(
        "--window-back", window_back, "Window backward extent (unified)");
    option_of["window-fwd"] = cmd.add_option(
        "--window-fwd", window_fwd, "Window forward extent (unified)");
    option_of["window-stride"] = cmd.add_option(
        "--window-stride", window_stride,
        "Window center stride as a rational p/q or integer (unified)");
    option_of["squash"] = cmd.add_option(
        "--squash", squash,
        "Squash: none|exponential|transport (default: exponential; "
        "transport form is for ot/temporal-ot)");
    option_of["alpha"] = cmd.add_option(
        "--alpha", alpha,
        "Squash scale (default 5 for ot/temporal-ot, 1 otherwise)");
    option_of["beta"] = cmd.add_option(
        "--beta", beta,
        "Squash exponent rate (default 5 for ot/temporal-ot, 1 otherwise)");
    option_of["postprocess"] = cmd.add_option(
        "--postprocess", postprocess,
        "Dataset-level scaling: none|offline|online");
    option_of["rescale-bias"] = cmd.add_option(
        "--rescale-bias", rescale_bias, "Per-step bias (offline postprocess)");
    option_of["rescale-span"] =
        cmd.add_option("--rescale-span", rescale_span,
                       "Target return span (offline postprocess)");
    option_of["online-factor"] =
        cmd.add_option("--online-factor", online_factor,
                       "Numerator of the frozen first-episode scale (online "
                       "postprocess)");
    option_of["seed"] =
        cmd.add_option("--seed", seed, "Seed recorded in provenance");
  }

  bool given(const std::string& name) const {
    if (from_config.count(name) > 0) return true;
    auto it = option_of.find(name);
    return it != option_of.end() && it->second->count() > 0;
  }

  bool given_on_cli(const std::string& name) const {
    auto it = option_of.find(name);
    return it != option_of.end() && it->second->count() > 0;
  }

  // Overlays config-file values onto options the user did not pass
  // explicitly. Flags beat the file, the file beats built-in defaults.
  void apply_config_file(const json& config) {
    for (const auto& [key, value] : config.items()) {
      if (option_of.find(key) == option_of.end()) {
        throw std::invalid_argument("config file: unknown key '" + key + "'");
      }
      if (given_on_cli(key)) continue;
      try {
        if (key == "method") method = value.get<std::string>();
        else if (key == "metric") metric = value.get<std::string>();
        else if (key == "epsilon") epsilon = value.get<double>();
        else if (key == "max-iterations") max_iterations = value.get<int>();
        else if (key == "marginal-tolerance")
          marginal_tolerance = value.get<double>();
        else if (key == "context-len") context_len = value.get<int>();
        else if (key == "mask-halfwidth")
          mask_halfwidth = value.get<std::int64_t>();
        else if (key == "lenient-lengths") lenient_lengths = value.get<bool>();
        else if (key == "window-halfwidth")
          window_halfwidth = value.get<std::int64_t>();
        else if (key == "window-back") window_back = value.get<std::int64_t>();
        else if (key == "window-fwd") window_fwd = value.get<std::int64_t>();
        else if (key == "window-stride")
          window_stride = value.get<std::string>();
        else if (key == "squash") squash = value.get<std::string>();
        else if (key == "alpha") alpha = value.get<double>();
        else if (key == "beta") beta = value.get<double>();
        else if (key == "postprocess") postprocess = value.get<std::string>();
        else if (key == "rescale-bias") rescale_bias = value.get<double>();
        else if (key == "rescale-span") rescale_span = value.get<double>();
        else if (key == "online-factor") online_factor = value.get<double>();
        else if (key == "seed") seed = value.get<std::uint64_t>();
      } catch (const json::exception&) {
        throw std::invalid_argument("config file: bad value type for '" + key +
                                    "'");
      }
      from_config.insert(key);
    }
  }

  Rational parse_stride() const {
    const auto slash = window_stride.find('/');
    try {
      Rational r;
      if (slash == std::string::npos) {
        r.num = std::stoll(window_stride);
        r.den = 1;
      } else {
        r.num = std::stoll(window_stride.substr(0, slash));
        r.den = std::stoll(window_stride.substr(slash + 1));
      }
      if (r.den <= 0 || r.num < 0) {
        throw std::invalid_argument("");
      }
      return r;
    } catch (const std::exception&) {
      throw std::invalid_argument(
          "--window-stride must be a nonnegative rational like 7/3");
    }
  }

  // Applies defaults that depend on the method, rejects flags that do not
  // belong to the selected method/postprocess, and produces the final params.
  LabelParams resolve(Metric dataset_metric) {
    LabelParams params;
    params.method = method_from_string(method);
    params.metric = metric.empty() ? dataset_metric : metric_from_string(metric);
    params.seed = seed;

    const bool transport_method =
        params.method == Method::OT || params.method == Method::TemporalOT;

    auto reject = [&](const char* flag, const std::string& why) {
      if (given(flag)) {
        throw std::invalid_argument(std::string("--") + flag + " " + why);
      }
    };
    if (!transport_method) {
      reject("epsilon", "applies to ot/temporal-ot only");
      reject("max-iterations", "applies to ot/temporal-ot only");
      reject("marginal-tolerance", "applies to ot/temporal-ot only");
    }
    if (params.method != Method::TemporalOT) {
      reject("mask-halfwidth", "applies to temporal-ot only");
      reject("lenient-lengths", "applies to temporal-ot only");
    }
    if (params.method != Method::TemporalOT &&
        params.method != Method::SegWindow) {
      reject("context-len", "applies to temporal-ot/seg-window only");
    }
    if (params.method != Method::SegWindow) {
      reject("window-halfwidth", "applies to seg-window only");
    }
    if (params.method != Method::Unified) {
      reject("window-back", "applies to unified only");
      reject("window-fwd", "applies to unified only");
      reject("window-stride", "applies to unified only");
    }

    params.sinkhorn.epsilon = epsilon;
    params.sinkhorn.max_iterations = max_iterations;
    params.sinkhorn.marginal_tolerance = marginal_tolerance;
    params.context_len = context_len;
    params.mask_halfwidth = mask_halfwidth;
    params.lenient_lengths = lenient_lengths;
    params.window_halfwidth = window_halfwidth;
    params.window.back = window_back;
    params.window.fwd = window_fwd;
    params.window.stride = parse_stride();

    if (squash.empty()) squash = "exponential";
    if (squash == "none") {
      params.squash_mode = SquashMode::None;
      reject("alpha", "requires --squash exponential");
      reject("beta", "requires --squash exponential");
    } else if (squash == "exponential") {
      params.squash_mode = SquashMode::Exponential;
      params.squash_params.alpha =
          given("alpha") ? alpha : (transport_method ? 5.0 : 1.0);
      params.squash_params.beta =
          given("beta") ? beta : (transport_method ? 5.0 : 1.0);
    } else if (squash == "transport") {
      if (!transport_method) {
        throw std::invalid_argument(
            "--squash transport applies to ot/temporal-ot only");
      }
      params.squash_mode = SquashMode::Transport;
      reject("alpha", "does not apply to --squash transport");
      reject("beta", "does not apply to --squash transport");
    } else {
      throw std::invalid_argument(
          "--squash must be none|exponential|transport");
    }

    if (postprocess != "none" && squash == "none") {
      throw std::invalid_argument(
          "--postprocess " + postprocess +
          " rescales squashed rewards; it cannot be combined with --squash "
          "none");
    }
    if (postprocess == "none") {
      params.scale_mode = ScaleMode::None;
      reject("rescale-bias", "requires --postprocess offline");
      reject("rescale-span", "requires --postprocess offline");
      reject("online-factor", "requires --postprocess online");
    } else if (postprocess == "offline") {
      params.scale_mode = ScaleMode::Offline;
      params.rescale_bias = rescale_bias;
      params.rescale_span = rescale_span;
      reject("online-factor", "requires --postprocess online");
    } else if (postprocess == "online") {
      params.scale_mode = ScaleMode::Online;
      params.online_factor = online_factor;
      reject("rescale-bias", "requires --postprocess offline");
      reject("rescale-span", "requires --postprocess offline");
    } else {
      throw std::invalid_argument(
          "--postprocess must be none|offline|online");
    }
    return params;
  }
};

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open config file '" + path + "'");
  }
  json config;
  try {
    in >> config;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config file '" + path +
                                "' is not valid JSON: " + e.what());
  }
  if (!config.is_object()) {
    throw std::invalid_argument("config file '" + path +
                                "' must hold a JSON object");
  }
  return config;
}

// ---------------------------------------------------------------------------
// label
// ---------------------------------------------------------------------------

int cmd_label(const std::string& input, const std::string& output,
              LabelOptions& options, const std::string& config_path,
              bool label_experts) {
  if (!config_path.empty()) {
    options.apply_config_file(load_config_file(config_path));
  }

  const Dataset dataset = load_dataset(input);
  if (dataset.trajectories.empty()) {
    throw DataError("dataset '" + input + "' has no trajectories");
  }
  if (dataset.manifest.expert_ids.empty()) {
    throw DataError("dataset '" + input +
                    "' declares no expert_ids to label against");
  }
  LabelParams params = options.resolve(dataset.manifest.distance_metric);

  const std::set<std::string> expert_ids(dataset.manifest.expert_ids.begin(),
                                         dataset.manifest.expert_ids.end());
  std::vector<Trajectory> experts;
  for (const std::string& id : dataset.manifest.expert_ids) {
    for (const Trajectory& t : dataset.trajectories) {
      if (t.id == id) {
        experts.push_back(t);
        break;
      }
    }
  }

  // By default the demonstrations themselves stay out of the labeled output;
  // --label-experts scores them like any other trajectory and keeps them.
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < dataset.trajectories.size(); ++i) {
    if (label_experts || expert_ids.count(dataset.trajectories[i].id) == 0) {
      keep.push_back(i);
    }
  }
  if (keep.empty()) {
    throw DataError("every trajectory in '" + input +
                    "' is an expert demonstration; pass --label-experts to "
                    "label the demonstrations themselves");
  }

  std::cout << "label config: " << params_to_json(params).dump()
            << " config_hash=" << config_hash(params) << "\n";

  std::vector<RewardSeries> series(keep.size());
  parallel_for(keep.size(), [&](std::size_t i) {
    series[i] =
        label_best_expert(dataset.trajectories[keep[i]], experts, params);
  });

  json scale_info;
  switch (params.scale_mode) {
    case ScaleMode::None:
      break;
    case ScaleMode::Offline: {
      auto [rescaled, rescale_params] =
          offline_rescale(series, params.rescale_bias, params.rescale_span);
      series = std::move(rescaled);
      scale_info["scale"] = rescale_params.scale;
      scale_info["bias"] = rescale_params.bias;
      scale_info["max_return"] = rescale_params.max_return;
      scale_info["min_return"] = rescale_params.min_return;
      break;
    }
    case ScaleMode::Online: {
      OnlineScale state;
      state.factor = params.online_factor;
      freeze_online_scale(state, series.front());
      for (RewardSeries& s : series) s = apply_online_scale(state, s);
      scale_info["scale"] = state.scale;
      break;
    }
  }

  Dataset labeled;
  labeled.manifest = dataset.manifest;
  for (std::size_t i : keep) {
    labeled.trajectories.push_back(dataset.trajectories[i]);
  }
  labeled.manifest.trajectory_count =
      static_cast<std::int64_t>(labeled.trajectories.size());
  if (!label_experts) {
    // The demonstrations are not in the output file, so the manifest cannot
    // point at them; the label block below records which experts were used.
    labeled.manifest.expert_ids.clear();
  }
  labeled.rewards = std::move(series);

  json label_info;
  label_info["method"] = to_string(params.method);
  label_info["stage"] = to_string(labeled.rewards.front().stage);
  label_info["params"] = params_to_json(params);
  label_info["expert_ids"] = dataset.manifest.expert_ids;
  label_info["config_hash"] = config_hash(params);
  label_info["tool_version"] = kVersion;
  if (!scale_info.is_null()) label_info["scaling"] = scale_info;
  labeled.manifest.label = label_info;

  save_dataset(labeled, output);
  std::cout << "labeled " << labeled.trajectories.size() << " trajectories ("
            << experts.size() << " expert(s)) -> " << output << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// inspect
// ---------------------------------------------------------------------------

int cmd_inspect(const std::string& input) {
  const Dataset dataset = load_dataset(input);
  const DatasetManifest& m = dataset.manifest;
  std::cout << "name:             " << m.name << "\n"
            << "created_at:       " << m.created_at << "\n"
            << "state_dim:        " << m.state_dim << "\n"
            << "trajectories:     " << m.trajectory_count << "\n"
            << "distance_metric:  " << to_string(m.distance_metric) << "\n";
  std::cout << "expert_ids:       ";
  for (std::size_t i = 0; i < m.expert_ids.size(); ++i) {
    std::cout << (i ? ", " : "") << m.expert_ids[i];
  }
  std::cout << "\n";

  const DatasetStats stats = dataset_stats(dataset);
  std::cout << "lengths:          ";
  bool first = true;
  for (const auto& [length, count] : stats.length_histogram) {
    std::cout << (first ? "" : ", ") << length << "x" << count;
    first = false;
  }
  std::cout << "\n";

  if (dataset.labeled()) {
    std::cout << "label:            " << m.label->dump() << "\n"
              << "return range:     [" << stats.min_return << ", "
              << stats.max_return << "]"
              << (stats.degenerate_returns ? " (degenerate)" : "") << "\n"
              << "step rewards:     mean " << stats.mean_step_reward
              << ", range [" << stats.min_step_reward << ", "
              << stats.max_step_reward << "]\n";
  } else {
    std::cout << "label:            (unlabeled)\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

struct EvalOptions {
  std::string suite = "all";  // pointmass|gridworld|all
  std::vector<std::string> methods{"seg-match"};
  std::string out_dir = ".";
  int suite_count = 20;
  int episodes = 5000;
  double min_fidelity = 0.9;
  double min_success = 0.9;
  double max_control_success = 0.2;
  std::uint64_t seed = 0;
};

LabelParams eval_params_for(const std::string& method) {
  LabelParams params;
  params.method = method_from_string(method);
  params.metric = Metric::Cosine;
  params.squash_mode = SquashMode::Exponential;
  params.squash_params = {1.0, 1.0};
  if (params.method == Method::OT || params.method == Method::TemporalOT) {
    params.squash_params = {5.0, 5.0};
    params.sinkhorn.max_iterations = 20000;
  }
  if (params.method == Method::Unified) {
    // Full-span window: equivalent to min-dist.
    params.window.back = 1 << 20;
    params.window.fwd = 1 << 20;
    params.window.stride = Rational{0, 1};
  }
  return params;
}

int cmd_eval(const EvalOptions& options) {
  namespace fs = std::filesystem;
  fs::create_directories(options.out_dir);
  bool all_ok = true;

  if (options.suite == "pointmass" || options.suite == "all") {
    std::ofstream csv(fs::path(options.out_dir) / "pointmass_fidelity.csv");
    csv << "method,suite_seed,spearman\n";
    for (const std::string& method : options.methods) {
      LabelParams params = eval_params_for(method);
      // The point-mass expert states are collinear, so Euclidean distance is
      // the informative metric; cosine would only see angular deviation.
      params.metric = Metric::Euclidean;
      std::vector<double> rhos(static_cast<std::size_t>(options.suite_count));
      parallel_for(rhos.size(), [&](std::size_t s) {
        PointMassConfig config;
        config.seed = options.seed + s;
        rhos[s] = ranking_fidelity(gen_pointmass_suite(config), params);
      });
      double sum = 0.0;
      for (std::size_t s = 0; s < rhos.size(); ++s) {
        csv << method << "," << options.seed + s << "," << rhos[s] << "\n";
        sum += rhos[s];
      }
      const double mean_rho = sum / static_cast<double>(rhos.size());
      const bool ok = mean_rho >= options.min_fidelity;
      all_ok = all_ok && ok;
      std::cout << "pointmass " << method << ": mean spearman " << mean_rho
                << " over " << options.suite_count << " suites ["
                << (ok ? "ok" : "BELOW THRESHOLD") << "]\n";
    }
  }

  if (options.suite == "gridworld" || options.suite == "all") {
    for (const std::string& method : options.methods) {
      LabelParams params = eval_params_for(method);
      GridworldConfig config;
      config.episodes = options.episodes;
      config.seed = options.seed;

      const ImitationResult labeled =
          gridworld_imitation(config, RewardSource::Labeled, params);
      const ImitationResult control =
          gridworld_imitation(config, RewardSource::Random, params);

      std::ofstream curve(fs::path(options.out_dir) /
                          ("gridworld_curve_" + method + ".csv"));
      curve << "episode,labeled_return,greedy_success\n";
      for (const LearningCurvePoint& p : labeled.curve) {
        curve << p.episode << "," << p.labeled_return << ","
              << p.greedy_success << "\n";
      }

      const bool ok = labeled.success_rate >= options.min_success &&
                      control.success_rate <= options.max_control_success;
      all_ok = all_ok && ok;
      std::cout << "gridworld " << method << ": success "
                << labeled.success_rate << ", random-reward control "
                << control.success_rate << " ["
                << (ok ? "ok" : "BELOW THRESHOLD") << "]\n";
    }
  }

  if (!all_ok) {
    std::cout << "evaluation thresholds not met\n";
    return kExitThreshold;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

struct BenchOptions {
  std::vector<std::string> methods{"seg-match", "ot"};
  std::vector<std::int64_t> sizes{200, 400};
  std::int64_t dim = 4;
  int samples = 5;
  std::uint64_t seed = 0;
  std::string output = "timings.csv";
  std::string run_id;
};

int cmd_bench(const BenchOptions& options) {
  const std::string run_id =
      options.run_id.empty() ? "seed-" + std::to_string(options.seed)
                             : options.run_id;
  for (const std::string& method : options.methods) {
    LabelParams params = eval_params_for(method);
    params.squash_mode = SquashMode::None;  // time the raw labeling
    std::vector<Index> sizes(options.sizes.begin(), options.sizes.end());
    const std::vector<TimingRow> rows =
        run_timing(params, sizes, options.dim, options.samples, options.seed);
    append_timing_csv(options.output, rows, run_id);
    for (const TimingRow& row : rows) {
      std::cout << row.method << " T=" << row.size << " d=" << row.dim
                << ": median " << row.median_seconds << "s\n";
    }
  }
  std::cout << "appended timings -> " << options.output << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trajectory alignment and reward labeling toolkit"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // label
  CLI::App* label = app.add_subcommand(
      "label", "Label a dataset against its expert demonstrations");
  std::string label_input, label_output, label_config;
  bool label_experts = false;
  label->add_option("--input,-i", label_input, "Input dataset (JSONL)")
      ->required();
  label->add_option("--output,-o", label_output, "Output dataset (JSONL)")
      ->required();
  label->add_option("--config", label_config,
                    "JSON config file; explicit flags take precedence");
  label->add_flag("--label-experts", label_experts,
                  "Also label the expert demonstrations and keep them in the "
                  "output (default: only non-expert trajectories are written)");
  LabelOptions label_options;
  label_options.register_options(*label);

  // inspect
  CLI::App* inspect =
      app.add_subcommand("inspect", "Print a dataset's manifest and stats");
  std::string inspect_input;
  inspect->add_option("--input,-i", inspect_input, "Dataset (JSONL)")
      ->required();

  // eval
  CLI::App* eval = app.add_subcommand(
      "eval", "Run the desk-scale evaluation suites and check thresholds");
  EvalOptions eval_options;
  eval->add_option("--suite", eval_options.suite,
                   "Suite: pointmass|gridworld|all");
  eval->add_option("--method,--methods", eval_options.methods,
                   "Methods to evaluate (repeatable or comma-separated)")
      ->delimiter(',');
  eval->add_option("--out-dir", eval_options.out_dir, "CSV output directory");
  eval->add_option("--suites", eval_options.suite_count,
                   "Number of point-mass suites");
  eval->add_option("--episodes", eval_options.episodes,
                   "Gridworld training episodes");
  eval->add_option("--min-fidelity", eval_options.min_fidelity,
                   "Minimum mean Spearman correlation");
  eval->add_option("--min-success", eval_options.min_success,
                   "Minimum gridworld success rate");
  eval->add_option("--max-control-success", eval_options.max_control_success,
                   "Maximum success rate for the random-reward control");
  eval->add_option("--seed", eval_options.seed, "Base seed");

  // bench
  CLI::App* bench =
      app.add_subcommand("bench", "Measure labeling cost across sizes");
  BenchOptions bench_options;
  bench->add_option("--method,--methods", bench_options.methods,
                    "Methods to time (repeatable or comma-separated)")
      ->delimiter(',');
  bench->add_option("--sizes", bench_options.sizes,
                    "Trajectory lengths to time (repeatable or "
                    "comma-separated)")
      ->delimiter(',');
  bench->add_option("--dim", bench_options.dim, "State dimension");
  bench->add_option("--samples", bench_options.samples,
                    "Measurements per size (median is reported)");
  bench->add_option("--seed", bench_options.seed, "Instance seed");
  bench->add_option("--output", bench_options.output, "CSV path (appended)");
  bench->add_option("--run-id", bench_options.run_id,
                    "Run identifier for the CSV (default seed-<seed>)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (label->parsed()) {
      return cmd_label(label_input, label_output, label_options, label_config,
                       label_experts);
    }
    if (inspect->parsed()) {
      return cmd_inspect(inspect_input);
    }
    if (eval->parsed()) {
      return cmd_eval(eval_options);
    }
    if (bench->parsed()) {
      return cmd_bench(bench_options);
    }
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
