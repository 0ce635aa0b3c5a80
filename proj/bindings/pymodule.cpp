// Python bindings for the main labeling operations. States cross the
// boundary as numpy arrays (rows = steps); reward series come back as 1-D
// arrays on RewardSeries objects.

#include "trajlabel/cost.hpp"
#include "trajlabel/dataset.hpp"
#include "trajlabel/gridworld.hpp"
#include "trajlabel/kdtree.hpp"
#include "trajlabel/labeling.hpp"
#include "trajlabel/ot.hpp"
#include "trajlabel/pointmass.hpp"
#include "trajlabel/postprocess.hpp"
#include "trajlabel/proximity.hpp"
#include "trajlabel/sinkhorn.hpp"
#include "trajlabel/stats.hpp"
#include "trajlabel/transport_oracle.hpp"
#include "trajlabel/version.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace trajlabel;

namespace {

Trajectory make_traj(const std::string& id, const StateMatrix& states) {
  return make_trajectory(id, states);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "trajectory alignment and reward labeling";
  m.attr("__version__") = kVersion;

  py::register_exception<DataError>(m, "DataError");
  py::register_exception<SolverError>(m, "SolverError");

  py::enum_<Metric>(m, "Metric")
      .value("cosine", Metric::Cosine)
      .value("euclidean", Metric::Euclidean);
  py::enum_<Method>(m, "Method")
      .value("ot", Method::OT)
      .value("temporal_ot", Method::TemporalOT)
      .value("min_dist", Method::MinDist)
      .value("seg_match", Method::SegMatch)
      .value("seg_window", Method::SegWindow)
      .value("unified", Method::Unified);
  py::enum_<Stage>(m, "Stage")
      .value("raw", Stage::Raw)
      .value("squashed", Stage::Squashed)
      .value("rescaled", Stage::Rescaled);

  py::class_<Trajectory>(m, "Trajectory")
      .def(py::init(&make_traj), py::arg("id"), py::arg("states"))
      .def_readonly("id", &Trajectory::id)
      .def_readonly("states", &Trajectory::states)
      .def_property_readonly("length", &Trajectory::length)
      .def_property_readonly("dim", &Trajectory::dim)
      .def("__repr__", [](const Trajectory& t) {
        return "Trajectory(id='" + t.id + "', T=" + std::to_string(t.length()) +
               ", d=" + std::to_string(t.dim()) + ")";
      });

  py::class_<RewardSeries>(m, "RewardSeries")
      .def_readonly("values", &RewardSeries::values)
      .def_readonly("stage", &RewardSeries::stage)
      .def_readonly("method", &RewardSeries::method)
      .def_property_readonly("total", &RewardSeries::total);

  py::class_<SinkhornConfig>(m, "SinkhornConfig")
      .def(py::init<>())
      .def_readwrite("epsilon", &SinkhornConfig::epsilon)
      .def_readwrite("max_iterations", &SinkhornConfig::max_iterations)
      .def_readwrite("marginal_tolerance", &SinkhornConfig::marginal_tolerance);

  py::class_<Coupling>(m, "Coupling")
      .def_readonly("plan", &Coupling::plan)
      .def_readonly("epsilon", &Coupling::epsilon)
      .def_readonly("iterations_used", &Coupling::iterations_used);

  m.def(
      "distance",
      [](const Vector& x, const Vector& y, Metric metric) {
        return distance(x, y, metric);
      },
      py::arg("x"), py::arg("y"), py::arg("metric"));
  m.def("pairwise_cost", &pairwise_cost, py::arg("agent"), py::arg("expert"),
        py::arg("metric"));
  m.def("context_cost", &context_cost, py::arg("agent"), py::arg("expert"),
        py::arg("metric"), py::arg("context_len"));

  m.def(
      "sinkhorn",
      [](const Matrix& cost, const SinkhornConfig& config) {
        return sinkhorn(cost, config);
      },
      py::arg("cost"), py::arg("config") = SinkhornConfig{});
  m.def(
      "masked_sinkhorn",
      [](const Matrix& cost, Index half_width, const SinkhornConfig& config) {
        return masked_sinkhorn(cost, MaskMatrix::band(cost.rows(), half_width),
                               config);
      },
      py::arg("cost"), py::arg("half_width"),
      py::arg("config") = SinkhornConfig{});
  m.def(
      "exact_transport",
      [](const Matrix& cost) {
        const ExactTransport result = exact_transport(cost);
        return py::make_tuple(result.plan, result.cost);
      },
      py::arg("cost"), "Exact LP optimum (plan, cost) for small instances");

  m.def("ot_reward", &ot_reward, py::arg("agent"), py::arg("expert"),
        py::arg("metric"), py::arg("config") = SinkhornConfig{});
  m.def("temporal_ot_reward", &temporal_ot_reward, py::arg("agent"),
        py::arg("expert"), py::arg("metric"), py::arg("context_len") = 3,
        py::arg("mask_halfwidth") = 10, py::arg("config") = SinkhornConfig{},
        py::arg("lenient") = false);
  m.def("min_dist_reward", &min_dist_reward, py::arg("agent"),
        py::arg("expert"), py::arg("metric"));
  m.def("min_dist_reward_kdtree", &min_dist_reward_kdtree, py::arg("agent"),
        py::arg("expert"), py::arg("metric") = Metric::Euclidean);
  m.def("seg_match_reward", &seg_match_reward, py::arg("agent"),
        py::arg("expert"), py::arg("metric"));
  m.def("seg_window_reward", &seg_window_reward, py::arg("agent"),
        py::arg("expert"), py::arg("metric"), py::arg("half_width"),
        py::arg("context_len") = 1);
  m.def(
      "unified_window_reward",
      [](const Trajectory& agent, const Trajectory& expert, Metric metric,
         std::int64_t back, std::int64_t stride_num, std::int64_t stride_den,
         std::int64_t fwd) {
        WindowSpec window{back, Rational{stride_num, stride_den}, fwd};
        return unified_window_reward(agent, expert, metric, window);
      },
      py::arg("agent"), py::arg("expert"), py::arg("metric"), py::arg("back"),
      py::arg("stride_num"), py::arg("stride_den"), py::arg("fwd"));
  m.def(
      "segment_partition",
      [](std::int64_t agent_len, std::int64_t expert_len) {
        std::vector<std::pair<std::int64_t, std::int64_t>> out;
        for (const IndexRange& r : segment_partition(agent_len, expert_len)) {
          out.emplace_back(r.lo, r.hi);
        }
        return out;
      },
      py::arg("agent_len"), py::arg("expert_len"),
      "1-based inclusive (lo, hi) segment bounds; lo > hi means empty");

  m.def(
      "squash",
      [](const RewardSeries& raw, double alpha, double beta) {
        return squash(raw, SquashParams{alpha, beta});
      },
      py::arg("raw"), py::arg("alpha") = 1.0, py::arg("beta") = 1.0);
  m.def("squash_transport", &squash_transport, py::arg("raw"),
        py::arg("episode_len"), py::arg("state_dim"));
  m.def(
      "offline_rescale",
      [](const std::vector<RewardSeries>& squashed, double bias, double span) {
        auto [series, params] = offline_rescale(squashed, bias, span);
        py::dict info;
        info["scale"] = params.scale;
        info["bias"] = params.bias;
        info["max_return"] = params.max_return;
        info["min_return"] = params.min_return;
        return py::make_tuple(series, info);
      },
      py::arg("squashed"), py::arg("bias") = 0.0, py::arg("span") = 1000.0);
  m.def("select_best_expert", &select_best_expert, py::arg("candidates"));

  m.def("spearman", &spearman, py::arg("a"), py::arg("b"));

  py::class_<PointMassConfig>(m, "PointMassConfig")
      .def(py::init<>())
      .def_readwrite("horizon", &PointMassConfig::horizon)
      .def_readwrite("dim", &PointMassConfig::dim)
      .def_readwrite("agent_count", &PointMassConfig::agent_count)
      .def_readwrite("noise_step", &PointMassConfig::noise_step)
      .def_readwrite("seed", &PointMassConfig::seed);
  py::class_<PointMassSuite>(m, "PointMassSuite")
      .def_readonly("expert", &PointMassSuite::expert)
      .def_readonly("agents", &PointMassSuite::agents)
      .def_readonly("noise_levels", &PointMassSuite::noise_levels);
  m.def("gen_pointmass_suite", &gen_pointmass_suite, py::arg("config"));

  m.def(
      "save_dataset",
      [](const std::filesystem::path& path, const std::string& name,
         const std::vector<Trajectory>& trajectories,
         const std::vector<std::string>& expert_ids, Metric metric,
         const std::string& created_at) {
        Dataset dataset;
        dataset.manifest.name = name;
        dataset.manifest.state_dim =
            trajectories.empty() ? 1 : trajectories.front().dim();
        dataset.manifest.trajectory_count =
            static_cast<std::int64_t>(trajectories.size());
        dataset.manifest.expert_ids = expert_ids;
        dataset.manifest.distance_metric = metric;
        dataset.manifest.created_at = created_at;
        dataset.trajectories = trajectories;
        save_dataset(dataset, path);
      },
      py::arg("path"), py::arg("name"), py::arg("trajectories"),
      py::arg("expert_ids"), py::arg("metric") = Metric::Cosine,
      py::arg("created_at") = "1970-01-01T00:00:00Z",
      "Write an unlabeled dataset file");
  m.def(
      "load_dataset",
      [](const std::filesystem::path& path) {
        const Dataset dataset = load_dataset(path);
        py::dict out;
        out["name"] = dataset.manifest.name;
        out["state_dim"] = dataset.manifest.state_dim;
        out["expert_ids"] = dataset.manifest.expert_ids;
        out["metric"] = dataset.manifest.distance_metric;
        out["created_at"] = dataset.manifest.created_at;
        out["trajectories"] = dataset.trajectories;
        out["rewards"] = dataset.rewards;
        out["labeled"] = dataset.labeled();
        return out;
      },
      py::arg("path"));
}
