// Acceptance gate: every guarantee the toolkit ships with, checked end to
// end at its stated tolerance. Each check prints a single PASS/FAIL line
// with the measured numbers; the binary exits 0 only when all of them pass.
//
// Usage: trajlabel_acceptance <path-to-trajlabel-cli>
// (the CLI binary is needed for the output-determinism check)

#include "trajlabel/dataset.hpp"
#include "trajlabel/gridworld.hpp"
#include "trajlabel/kdtree.hpp"
#include "trajlabel/labeling.hpp"
#include "trajlabel/pointmass.hpp"
#include "trajlabel/postprocess.hpp"
#include "trajlabel/proximity.hpp"
#include "trajlabel/sinkhorn.hpp"
#include "trajlabel/stats.hpp"
#include "trajlabel/timing.hpp"
#include "trajlabel/transport_oracle.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace trajlabel;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string format(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return std::string(buf);
}

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

Matrix random_cost(Index rows, Index cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Matrix cost(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) cost(i, j) = unit(rng);
  }
  return cost;
}

Trajectory random_traj(Index length, Index dim, std::mt19937_64& rng,
                       const std::string& id) {
  std::uniform_real_distribution<double> unit(0.1, 1.1);
  StateMatrix states(length, dim);
  for (Index i = 0; i < length; ++i) {
    for (Index j = 0; j < dim; ++j) states(i, j) = unit(rng);
  }
  return make_trajectory(id, std::move(states));
}

double marginal_residual(const Matrix& plan) {
  const double row_target = 1.0 / static_cast<double>(plan.rows());
  const double col_target = 1.0 / static_cast<double>(plan.cols());
  const double row_resid =
      (plan.rowwise().sum().array() - row_target).abs().maxCoeff();
  const double col_resid =
      (plan.colwise().sum().array() - col_target).abs().maxCoeff();
  return std::max(row_resid, col_resid);
}

bool bitwise_equal(const Vector& a, const Vector& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

// --------------------------------------------------------------------------
// 1. Entropic solve vs the exact optimum
// --------------------------------------------------------------------------

Outcome check_sinkhorn_vs_oracle() {
  const double begin = now_seconds();
  std::mt19937_64 rng(101);
  SinkhornConfig config;
  config.epsilon = 1e-3;
  config.max_iterations = 2000000;
  config.marginal_tolerance = 1e-6;

  double worst_gap = 0.0;
  double worst_resid = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Matrix cost = random_cost(4, 4, rng);
    const Coupling coupling = sinkhorn(cost, config);
    const double objective = transport_cost(cost, coupling.plan);
    const double exact = exact_transport(cost).cost;
    worst_gap = std::max(worst_gap, std::abs(objective - exact));
    worst_resid = std::max(worst_resid, marginal_residual(coupling.plan));
  }
  const double elapsed = now_seconds() - begin;
  const bool pass = worst_gap <= 1e-2 && worst_resid <= 1e-6 && elapsed < 10.0;
  return {pass, format("100 instances: worst objective gap %.2e (<=1e-2), "
                       "worst marginal residual %.2e (<=1e-6), %.2fs (<10s)",
                       worst_gap, worst_resid, elapsed)};
}

// --------------------------------------------------------------------------
// 2. Band-masked solve degeneracies
// --------------------------------------------------------------------------

Outcome check_mask_degeneracies() {
  std::mt19937_64 rng(202);
  SinkhornConfig config;
  config.epsilon = 0.01;
  config.max_iterations = 200000;

  bool diagonal_exact = true;
  double worst_full_band_diff = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Index n = 2 + static_cast<Index>(rng() % 11);
    const Matrix cost = random_cost(n, n, rng);

    const Coupling diag = masked_sinkhorn(cost, MaskMatrix::band(n, 0), config);
    const Matrix expected =
        (Matrix::Identity(n, n) / static_cast<double>(n));
    if (!(diag.plan.array() == expected.array()).all()) diagonal_exact = false;

    const Coupling full = masked_sinkhorn(cost, MaskMatrix::band(n, n), config);
    const Coupling open = sinkhorn(cost, config);
    worst_full_band_diff = std::max(
        worst_full_band_diff, (full.plan - open.plan).cwiseAbs().maxCoeff());
  }
  const bool pass = diagonal_exact && worst_full_band_diff <= 1e-9;
  return {pass, format("20 instances: zero-width band %s diag(1/T), full band "
                       "vs unmasked max diff %.2e (<=1e-9)",
                       diagonal_exact ? "==" : "!=", worst_full_band_diff)};
}

// --------------------------------------------------------------------------
// 3. Segment partition properties
// --------------------------------------------------------------------------

Outcome check_segment_partition() {
  long long shapes = 0;
  for (std::int64_t t_len = 1; t_len <= 50; ++t_len) {
    for (std::int64_t te = t_len; te <= 50; ++te) {
      const std::vector<IndexRange> segs = segment_partition(t_len, te);
      const std::int64_t q = te / t_len;
      const std::int64_t l = te % t_len;
      if (segs.size() != static_cast<std::size_t>(t_len) ||
          segs.front().lo != 1 || segs.back().hi != te) {
        return {false, format("coverage broken at T=%lld, Te=%lld",
                              static_cast<long long>(t_len),
                              static_cast<long long>(te))};
      }
      for (std::size_t i = 0; i < segs.size(); ++i) {
        const std::int64_t size = segs[i].hi - segs[i].lo + 1;
        const std::int64_t expected =
            (static_cast<std::int64_t>(i) < l) ? q + 1 : q;
        const bool contiguous = i == 0 || segs[i].lo == segs[i - 1].hi + 1;
        if (segs[i].empty() || !contiguous || size != expected) {
          return {false, format("segment %zu wrong at T=%lld, Te=%lld", i,
                                static_cast<long long>(t_len),
                                static_cast<long long>(te))};
        }
      }
      ++shapes;
    }
  }

  const std::vector<IndexRange> frozen = segment_partition(3, 7);
  const bool frozen_ok = frozen.size() == 3 && frozen[0].lo == 1 &&
                         frozen[0].hi == 3 && frozen[1].lo == 4 &&
                         frozen[1].hi == 5 && frozen[2].lo == 6 &&
                         frozen[2].hi == 7;
  return {frozen_ok,
          format("all %lld shapes with 1<=T<=Te<=50 contiguous/covering/"
                 "balanced; (3,7) -> [(1,3),(4,5),(6,7)] %s",
                 shapes, frozen_ok ? "ok" : "WRONG")};
}

// --------------------------------------------------------------------------
// 4. Window unification equivalences
// --------------------------------------------------------------------------

Outcome check_window_unification() {
  std::mt19937_64 rng(404);
  int exact_a = 0;
  int exact_b = 0;
  int exact_c = 0;
  const int instances = 50;

  for (int i = 0; i < instances; ++i) {
    const Index t_len = 2 + static_cast<Index>(rng() % 29);
    const Index te = 2 + static_cast<Index>(rng() % 29);
    const Metric metric = (i % 2 == 0) ? Metric::Euclidean : Metric::Cosine;
    const Trajectory agent = random_traj(t_len, 3, rng, "a");
    const Trajectory expert = random_traj(te, 3, rng, "e");

    // (a) zero stride, full span == nearest state over the whole expert.
    WindowSpec full;
    full.back = te;
    full.stride = Rational{0, 1};
    full.fwd = te;
    if (bitwise_equal(unified_window_reward(agent, expert, metric, full).values,
                      min_dist_reward(agent, expert, metric).values)) {
      ++exact_a;
    }

    // (b) unit stride, symmetric extent k == the diagonal window method.
    const std::int64_t k = static_cast<std::int64_t>(rng() % 7);
    WindowSpec diagonal;
    diagonal.back = k;
    diagonal.stride = Rational{1, 1};
    diagonal.fwd = k;
    if (bitwise_equal(
            unified_window_reward(agent, expert, metric, diagonal).values,
            seg_window_reward(agent, expert, metric, k, 1).values)) {
      ++exact_b;
    }

    // (c) stride Te/T with per-step extents spanning each partition segment
    // == segment matching.
    const std::vector<IndexRange> segs = segment_partition(t_len, te);
    const Rational stride{te, t_len};
    std::vector<IndexRange> windows;
    windows.reserve(segs.size());
    for (std::int64_t t = 1; t <= t_len; ++t) {
      const std::int64_t center = floor_scaled(stride, t);
      const IndexRange& seg = segs[static_cast<std::size_t>(t - 1)];
      const std::int64_t back = center - seg.lo;
      const std::int64_t fwd = seg.hi - center;
      windows.push_back(IndexRange{center - back, center + fwd});
    }
    if (bitwise_equal(
            windowed_min_reward(agent, expert, metric, windows).values,
            seg_match_reward(agent, expert, metric).values)) {
      ++exact_c;
    }
  }

  const bool pass =
      exact_a == instances && exact_b == instances && exact_c == instances;
  return {pass, format("elementwise-exact matches out of %d: full-span==min-"
                       "dist %d, unit-stride==seg-window %d, "
                       "segment-windows==seg-match %d",
                       instances, exact_a, exact_b, exact_c)};
}

// --------------------------------------------------------------------------
// 5. kd-tree equivalence at scale
// --------------------------------------------------------------------------

Outcome check_kdtree_equivalence() {
  std::mt19937_64 rng(505);
  const Index dims[] = {2, 4, 8};
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Index d = dims[i % 3];
    const Trajectory agent = random_traj(500, d, rng, "a");
    const Trajectory expert = random_traj(500, d, rng, "e");
    const Vector brute =
        min_dist_reward(agent, expert, Metric::Euclidean).values;
    const Vector fast =
        min_dist_reward_kdtree(agent, expert, Metric::Euclidean).values;
    worst = std::max(worst, (brute - fast).cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-12,
          format("100 instances, T=Te=500, d in {2,4,8}: max |kd - brute| "
                 "%.2e (<=1e-12)",
                 worst)};
}

// --------------------------------------------------------------------------
// 6. Post-processing constants
// --------------------------------------------------------------------------

Outcome check_postprocess_constants() {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> raw_value(-8.0, 0.0);

  // Squash: alpha * exp(beta * r) at the shipped parameter pairs.
  double worst_rel = 0.0;
  for (const SquashParams params : {SquashParams{1.0, 1.0}, SquashParams{5.0, 5.0}}) {
    RewardSeries raw;
    raw.values.resize(200);
    for (Index i = 0; i < raw.values.size(); ++i) {
      raw.values(i) = raw_value(rng);
    }
    raw.stage = Stage::Raw;
    const RewardSeries squashed = squash(raw, params);
    for (Index i = 0; i < raw.values.size(); ++i) {
      const double expected = params.alpha * std::exp(params.beta * raw.values(i));
      worst_rel = std::max(
          worst_rel, std::abs(squashed.values(i) - expected) / expected);
    }
  }
  const bool squash_ok = worst_rel <= 1e-14;

  // Offline rescale: equal-length returns spread to exactly the span, with
  // the -2 bias applied verbatim to every step.
  std::vector<RewardSeries> squashed;
  for (int k = 0; k < 6; ++k) {
    RewardSeries raw;
    raw.values.resize(7);
    for (Index i = 0; i < 7; ++i) raw.values(i) = raw_value(rng);
    raw.stage = Stage::Raw;
    squashed.push_back(squash(raw, {1.0, 1.0}));
  }
  const auto [rescaled, params] = offline_rescale(squashed, -2.0);
  double max_ret = -1e300;
  double min_ret = 1e300;
  double worst_affine = 0.0;
  for (std::size_t k = 0; k < rescaled.size(); ++k) {
    max_ret = std::max(max_ret, rescaled[k].total());
    min_ret = std::min(min_ret, rescaled[k].total());
    for (Index i = 0; i < 7; ++i) {
      worst_affine = std::max(
          worst_affine, std::abs(rescaled[k].values(i) -
                                 (params.scale * squashed[k].values(i) - 2.0)));
    }
  }
  const double span_error = std::abs((max_ret - min_ret) - 1000.0);
  const bool rescale_ok =
      span_error <= 1e-9 && params.bias == -2.0 && worst_affine <= 1e-12;

  // Online scale: factor / sum |r| from the first episode, frozen.
  RewardSeries first;
  first.values.resize(2);
  first.values << 20.0, 30.0;
  first.stage = Stage::Squashed;
  OnlineScale state;
  state.factor = 10.0;
  freeze_online_scale(state, first);
  bool online_ok = (state.scale == 10.0 / 50.0);
  RewardSeries later;
  later.values.resize(3);
  later.values << 5.0, 1.0, 0.25;
  later.stage = Stage::Squashed;
  const RewardSeries scaled = apply_online_scale(state, later);
  online_ok = online_ok && (scaled.values.array() ==
                            (state.scale * later.values).array())
                               .all();
  // A second episode must not move the frozen scale.
  try {
    freeze_online_scale(state, later);
    online_ok = false;
  } catch (const std::logic_error&) {
  }
  online_ok = online_ok && state.scale == 0.2;

  const bool pass = squash_ok && rescale_ok && online_ok;
  return {pass,
          format("squash rel err %.2e (<=1e-14); rescale span err %.2e "
                 "(<=1e-9), bias -2 %s; online scale 10/50 %s frozen",
                 worst_rel, span_error, params.bias == -2.0 ? "verbatim" : "WRONG",
                 online_ok ? "==0.2," : "WRONG,")};
}

// --------------------------------------------------------------------------
// 7. Temporal discrimination
// --------------------------------------------------------------------------

Outcome check_temporal_discrimination() {
  // Expert walks a straight line; both agents hover 0.25 above it, one
  // walking forward, one backward. Nearest-state distances are identical
  // multisets for the two agents, segment matching sees the reversal.
  const Index t_len = 40;
  StateMatrix expert_states(t_len, 2);
  StateMatrix forward_states(t_len, 2);
  for (Index i = 0; i < t_len; ++i) {
    expert_states(i, 0) = 0.1 * static_cast<double>(i);
    expert_states(i, 1) = 0.0;
    forward_states(i, 0) = expert_states(i, 0);
    forward_states(i, 1) = 0.25;
  }
  StateMatrix reversed_states = forward_states.colwise().reverse();

  const Trajectory expert = make_trajectory("expert", expert_states);
  const Trajectory forward = make_trajectory("forward", forward_states);
  const Trajectory reversed = make_trajectory("reversed", reversed_states);

  const double mind_fwd =
      min_dist_reward(forward, expert, Metric::Euclidean).total();
  const double mind_rev =
      min_dist_reward(reversed, expert, Metric::Euclidean).total();
  const double seg_fwd =
      seg_match_reward(forward, expert, Metric::Euclidean).total();
  const double seg_rev =
      seg_match_reward(reversed, expert, Metric::Euclidean).total();

  const bool pass = (mind_fwd == mind_rev) && (seg_fwd > seg_rev);
  return {pass, format("min-dist totals %.6f vs %.6f (equal %s); seg-match "
                       "%.6f vs %.6f (forward preferred %s)",
                       mind_fwd, mind_rev, mind_fwd == mind_rev ? "yes" : "NO",
                       seg_fwd, seg_rev, seg_fwd > seg_rev ? "yes" : "NO")};
}

// --------------------------------------------------------------------------
// 8. Ranking fidelity on seeded point-mass suites
// --------------------------------------------------------------------------

Outcome check_ranking_fidelity() {
  const double begin = now_seconds();
  double worst_rho = 1.0;
  for (Method method : {Method::MinDist, Method::SegMatch}) {
    LabelParams params;
    params.method = method;
    // Euclidean distance tracks the detour magnitude directly; the suite's
    // expert states are collinear, so an angular metric would discard the
    // radial component of each detour.
    params.metric = Metric::Euclidean;
    params.squash_mode = SquashMode::Exponential;
    params.squash_params = {1.0, 1.0};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      PointMassConfig config;  // 10 agents, strictly increasing noise
      config.seed = seed;
      const double rho = ranking_fidelity(gen_pointmass_suite(config), params);
      worst_rho = std::min(worst_rho, rho);
    }
  }
  const double elapsed = now_seconds() - begin;
  const bool pass = worst_rho >= 0.9 && elapsed < 30.0;
  return {pass, format("min-dist & seg-match over 20 suites x 10 agents: "
                       "worst spearman %.3f (>=0.9), %.2fs (<30s)",
                       worst_rho, elapsed)};
}

// --------------------------------------------------------------------------
// 9. Imitation at desk scale
// --------------------------------------------------------------------------

Outcome check_gridworld_imitation() {
  const double begin = now_seconds();
  LabelParams params;
  params.method = Method::SegMatch;
  params.metric = Metric::Cosine;
  params.squash_mode = SquashMode::Exponential;
  params.squash_params = {1.0, 1.0};

  GridworldConfig config;  // 8x8, 5000 episodes, seed 0

  const ImitationResult labeled =
      gridworld_imitation(config, RewardSource::Labeled, params);
  const ImitationResult control =
      gridworld_imitation(config, RewardSource::Random, params);
  const double elapsed = now_seconds() - begin;

  const bool pass = labeled.success_rate >= 0.9 &&
                    control.success_rate <= 0.2 && elapsed < 120.0;
  return {pass, format("8x8 grid, 5000 episodes, seed 0: seg-match success "
                       "%.2f (>=0.9), random-reward control %.2f (<=0.2), "
                       "%.1fs (<120s)",
                       labeled.success_rate, control.success_rate, elapsed)};
}

// --------------------------------------------------------------------------
// 10. Complexity probes
// --------------------------------------------------------------------------

struct RatioProbe {
  double ratio = 0.0;
  double small_ms = 0.0;
  double large_ms = 0.0;
};

RatioProbe time_ratio(Method method, Index small_size, std::uint64_t seed) {
  LabelParams params;
  params.method = method;
  params.metric = Metric::Cosine;
  params.squash_mode = SquashMode::None;
  if (method == Method::OT) {
    params.sinkhorn.max_iterations = 200000;
  }
  const std::vector<TimingRow> rows =
      run_timing(params, {small_size, small_size * 2}, 4, 5, seed);
  RatioProbe probe;
  probe.small_ms = rows[0].median_seconds * 1e3;
  probe.large_ms = rows[1].median_seconds * 1e3;
  probe.ratio = rows[1].median_seconds / rows[0].median_seconds;
  return probe;
}

Outcome check_complexity_probes() {
  // Segment matching is linear in the expert length, the entropic solve is
  // quadratic per sweep; doubling T must separate them. One remeasure is
  // allowed to ride out scheduler noise.
  RatioProbe seg = time_ratio(Method::SegMatch, 1000, 1);
  if (seg.ratio > 2.5) seg = time_ratio(Method::SegMatch, 1000, 2);
  RatioProbe ot = time_ratio(Method::OT, 200, 1);
  if (ot.ratio < 3.0) ot = time_ratio(Method::OT, 200, 2);

  const bool pass = seg.ratio <= 2.5 && ot.ratio >= 3.0;
  return {pass, format("T doubling, median of 5: seg-match %.2fms->%.2fms "
                       "ratio %.2f (<=2.5); sinkhorn %.0fms->%.0fms ratio "
                       "%.2f (>=3.0)",
                       seg.small_ms, seg.large_ms, seg.ratio, ot.small_ms,
                       ot.large_ms, ot.ratio)};
}

// --------------------------------------------------------------------------
// 11. Byte-identical labeling through the CLI
// --------------------------------------------------------------------------

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Outcome check_cli_determinism(const std::string& cli) {
  const fs::path dir =
      fs::temp_directory_path() /
      ("trajlabel_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);

  std::mt19937_64 rng(111);
  Dataset dataset;
  dataset.manifest.name = "determinism";
  dataset.manifest.state_dim = 3;
  dataset.manifest.trajectory_count = 9;
  dataset.manifest.expert_ids = {"expert-0"};
  dataset.manifest.distance_metric = Metric::Euclidean;
  dataset.manifest.created_at = "2024-02-02T00:00:00Z";
  dataset.trajectories.push_back(random_traj(10, 3, rng, "expert-0"));
  for (int k = 0; k < 8; ++k) {
    dataset.trajectories.push_back(
        random_traj(10, 3, rng, "agent-" + std::to_string(k)));
  }
  const fs::path input = dir / "input.jsonl";
  save_dataset(dataset, input);

  auto run_label = [&](const fs::path& output) {
    const std::string cmd =
        "\"" + cli + "\" label -i \"" + input.string() + "\" -o \"" +
        output.string() +
        "\" --method seg-match --postprocess offline --rescale-bias -2 "
        "--seed 7 > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };

  const int rc1 = run_label(dir / "run1.jsonl");
  const int rc2 = run_label(dir / "run2.jsonl");
  const std::string bytes1 = read_bytes(dir / "run1.jsonl");
  const std::string bytes2 = read_bytes(dir / "run2.jsonl");

  std::error_code ec;
  fs::remove_all(dir, ec);

  const bool pass =
      rc1 == 0 && rc2 == 0 && !bytes1.empty() && bytes1 == bytes2;
  return {pass, format("two labeling runs: exit codes %d/%d, %zu bytes, "
                       "outputs %s",
                       rc1, rc2, bytes1.size(),
                       bytes1 == bytes2 && !bytes1.empty() ? "identical"
                                                           : "DIFFER")};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <path-to-trajlabel-cli>\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];

  struct Check {
    const char* name;
    std::function<Outcome()> fn;
  };
  const std::vector<Check> checks = {
      {"sinkhorn objective vs exact oracle", check_sinkhorn_vs_oracle},
      {"band mask degeneracies", check_mask_degeneracies},
      {"segment partition properties", check_segment_partition},
      {"window unification equivalences", check_window_unification},
      {"kd-tree equals brute force", check_kdtree_equivalence},
      {"post-processing constants", check_postprocess_constants},
      {"temporal discrimination", check_temporal_discrimination},
      {"point-mass ranking fidelity", check_ranking_fidelity},
      {"gridworld imitation", check_gridworld_imitation},
      {"complexity probes", check_complexity_probes},
      {"byte-identical CLI labeling", [&] { return check_cli_determinism(cli); }},
  };

  bool all_pass = true;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    Outcome outcome;
    try {
      outcome = checks[i].fn();
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    all_pass = all_pass && outcome.pass;
    std::printf("[%2zu/11] %s  %-36s %s\n", i + 1,
                outcome.pass ? "PASS" : "FAIL", checks[i].name,
                outcome.detail.c_str());
    std::fflush(stdout);
  }

  std::printf("%s\n", all_pass ? "acceptance: all 11 checks passed"
                               : "acceptance: FAILURES above");
  return all_pass ? 0 : 1;
}
