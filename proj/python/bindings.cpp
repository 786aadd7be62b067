#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "dnash/bench.hpp"
#include "dnash/entropy.hpp"
#include "dnash/errors.hpp"
#include "dnash/scenario.hpp"
#include "dnash/simulation.hpp"
#include "dnash/tntp.hpp"

namespace py = pybind11;
using namespace dnash;

namespace {

// Column-wise view of a trace: one numpy array per metric.
py::dict trace_columns(const std::vector<TraceRow>& rows) {
  const auto n = static_cast<py::ssize_t>(rows.size());
  py::array_t<std::int64_t> k(n), staleness(n);
  py::array_t<double> phi(n), gap(n), a(n), sum(n);
  auto kk = k.mutable_unchecked<1>();
  auto ss = staleness.mutable_unchecked<1>();
  auto pp = phi.mutable_unchecked<1>();
  auto gg = gap.mutable_unchecked<1>();
  auto aa = a.mutable_unchecked<1>();
  auto AA = sum.mutable_unchecked<1>();
  for (py::ssize_t j = 0; j < n; ++j) {
    const TraceRow& r = rows[static_cast<std::size_t>(j)];
    kk(j) = r.k;
    pp(j) = r.phi;
    gg(j) = r.gap;
    ss(j) = r.max_staleness;
    aa(j) = r.a_k;
    AA(j) = r.A_k;
  }
  py::dict out;
  out["k"] = k;
  out["phi"] = phi;
  out["gap"] = gap;
  out["max_staleness"] = staleness;
  out["a_k"] = a;
  out["A_k"] = sum;
  return out;
}

std::vector<TraceRow> rows_from(const std::vector<std::int64_t>& k, const std::vector<double>& gap) {
  if (k.size() != gap.size()) throw DomainError("k and gap must have the same length");
  std::vector<TraceRow> rows(k.size());
  for (std::size_t j = 0; j < k.size(); ++j) {
    rows[j].k = k[j];
    rows[j].gap = gap[j];
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Accelerated mirror descent with delayed feedback on routing games";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ScheduleError>(m, "ScheduleError", PyExc_ValueError);
  py::register_exception<NoPathError>(m, "NoPathError");
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<CountMismatchError>(m, "CountMismatchError", PyExc_ValueError);
  py::register_exception<InfeasibleScenarioError>(m, "InfeasibleScenarioError");
  py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);
  py::register_exception<InsufficientDataError>(m, "InsufficientDataError", PyExc_ValueError);

  py::class_<ScaledSimplex>(m, "ScaledSimplex")
      .def(py::init<std::size_t, double>(), py::arg("dimension"), py::arg("scale"))
      .def_property_readonly("dimension", &ScaledSimplex::dimension)
      .def_property_readonly("scale", &ScaledSimplex::scale)
      .def("contains", [](const ScaledSimplex& s, const std::vector<double>& x) { return s.contains(x); })
      .def("uniform_point", &ScaledSimplex::uniform_point);

  m.def("entropy_eval", [](const std::vector<double>& x, const ScaledSimplex& s) { return entropy_eval(x, s); });
  m.def("entropy_gradient", [](const std::vector<double>& x, const ScaledSimplex& s) { return entropy_gradient(x, s); });
  m.def("mirror_map", [](const std::vector<double>& z, const ScaledSimplex& s) { return entropy_mirror_map(z, s); },
        py::arg("z"), py::arg("space"));

  py::class_<StepSchedule>(m, "StepSchedule")
      .def_static("power", &StepSchedule::power, py::arg("a0"), py::arg("beta"))
      .def_static("inverse", &StepSchedule::inverse, py::arg("a0"))
      .def_static("inverse_log", &StepSchedule::inverse_log, py::arg("a0"))
      .def("step", &StepSchedule::step)
      .def("partial_sum", &StepSchedule::partial_sum)
      .def("__repr__", &StepSchedule::describe);

  py::class_<SmoothnessBundle>(m, "SmoothnessBundle")
      .def(py::init<>())
      .def_readwrite("lipschitz", &SmoothnessBundle::lipschitz)
      .def_readwrite("mu_star", &SmoothnessBundle::mu_star)
      .def_readwrite("diameter", &SmoothnessBundle::diameter);
  m.def("validate_schedule", &validate_schedule, py::arg("schedule"), py::arg("bundle"), py::arg("horizon"));
  m.def("default_power_schedule", &default_power_schedule, py::arg("beta"), py::arg("bundle"));

  py::class_<DelayModel>(m, "DelayModel")
      .def_static("none", &DelayModel::none)
      .def_static("deterministic_power", &DelayModel::deterministic_power, py::arg("D"), py::arg("alpha"))
      .def_static("stochastic_uniform", &DelayModel::stochastic_uniform, py::arg("D"), py::arg("alpha"))
      .def("nominal_delay", &DelayModel::nominal_delay)
      .def("as_stochastic", &DelayModel::as_stochastic)
      .def("__repr__", &DelayModel::describe);

  py::class_<BprParams>(m, "BprParams")
      .def(py::init([](double a, double b, double c, double r) { return BprParams{a, b, c, r}; }), py::arg("free_flow"),
           py::arg("coefficient"), py::arg("capacity"), py::arg("power"))
      .def_readonly("free_flow", &BprParams::free_flow)
      .def_readonly("coefficient", &BprParams::coefficient)
      .def_readonly("capacity", &BprParams::capacity)
      .def_readonly("power", &BprParams::power);
  m.def("bpr_cost", &bpr_cost);
  m.def("bpr_integral", &bpr_integral);

  py::class_<RoadNetwork>(m, "RoadNetwork")
      .def_property_readonly("node_count", &RoadNetwork::node_count)
      .def_property_readonly("edge_count", &RoadNetwork::edge_count)
      .def("edges", [](const RoadNetwork& n) {
        std::vector<std::pair<int, int>> out;
        for (const Edge& e : n.edges()) out.emplace_back(e.tail, e.head);
        return out;
      });
  m.def("grid_network", &make_grid_network, py::arg("rows"), py::arg("cols"));
  m.def("enumerate_routes", [](const RoadNetwork& n, int o, int d, std::size_t count) {
    return enumerate_routes(n, o, d, count).routes;
  });

  py::class_<TntpNetwork>(m, "TntpNetwork")
      .def_readonly("zone_count", &TntpNetwork::zone_count)
      .def_readonly("node_count", &TntpNetwork::node_count)
      .def_readonly("first_thru_node", &TntpNetwork::first_thru_node)
      .def_property_readonly("link_count", [](const TntpNetwork& t) { return t.links.size(); })
      .def("to_road_network", &TntpNetwork::to_road_network, py::arg("native_bpr") = false);
  m.def("parse_tntp_text", [](const std::string& text) { return parse_tntp_text(text); });
  m.def("parse_tntp_file", &parse_tntp_file);

  py::class_<RoutingGame>(m, "RoutingGame")
      .def_property_readonly("player_count", &RoutingGame::player_count)
      .def_property_readonly("total_demand", &RoutingGame::total_demand)
      .def_property_readonly("network", &RoutingGame::network)
      .def("demands", [](const RoutingGame& g) {
        std::vector<double> out;
        for (const PlayerSpec& p : g.players()) out.push_back(p.demand);
        return out;
      })
      .def("routes", [](const RoutingGame& g, std::size_t i) { return g.players().at(i).routes; })
      .def("uniform_profile", &RoutingGame::uniform_profile)
      .def("potential", &RoutingGame::potential)
      .def("edge_loads", &RoutingGame::edge_loads)
      .def("partial_gradient", &RoutingGame::partial_gradient, py::arg("profile"), py::arg("player"))
      .def("wardrop_gap", &RoutingGame::wardrop_gap, py::arg("profile"), py::arg("support_tol") = 1e-6)
      .def("frank_wolfe_gap", &RoutingGame::frank_wolfe_gap)
      .def("mean_free_flow_path_cost", &RoutingGame::mean_free_flow_path_cost);

  m.def("desk_fixture", &desk_fixture);
  m.def(
      "sample_scenario",
      [](const RoadNetwork& network, std::size_t players, std::size_t routes, std::uint64_t seed) {
        ScenarioConfig config;
        config.player_count = players;
        config.routes_per_player = routes;
        config.seed = seed;
        return sample_scenario(network, config);
      },
      py::arg("network"), py::arg("players"), py::arg("routes"), py::arg("seed"));
  m.def("save_scenario", &save_scenario);
  m.def("load_scenario", &load_scenario);
  m.def("estimate_smoothness", [](const RoutingGame& g) { return estimate_smoothness(g); });

  py::class_<ReferenceOptimum>(m, "ReferenceOptimum")
      .def_readonly("phi_star", &ReferenceOptimum::phi_star)
      .def_readonly("epsilon_oracle", &ReferenceOptimum::epsilon_oracle)
      .def_readonly("wardrop_gap", &ReferenceOptimum::wardrop_gap)
      .def_readonly("frank_wolfe_gap", &ReferenceOptimum::frank_wolfe_gap)
      .def_readonly("x_star", &ReferenceOptimum::x_star);
  m.def("estimate_reference_optimum",
        py::overload_cast<const RoutingGame&, std::int64_t>(&estimate_reference_optimum), py::arg("game"),
        py::arg("budget"), py::call_guard<py::gil_scoped_release>());

  py::class_<CaseSpec>(m, "CaseSpec")
      .def(py::init([](std::string label, DelayModel delay, StepSchedule schedule, std::int64_t horizon) {
             return CaseSpec{std::move(label), delay, schedule, horizon};
           }),
           py::arg("label"), py::arg("delay"), py::arg("schedule"), py::arg("horizon"))
      .def_readonly("label", &CaseSpec::label)
      .def_readonly("delay", &CaseSpec::delay)
      .def_readonly("schedule", &CaseSpec::schedule)
      .def_readonly("horizon", &CaseSpec::horizon);
  m.def(
      "fig1_suite",
      [](const SmoothnessBundle& b, std::int64_t horizon) {
        SuiteOptions options;
        options.horizon = horizon;
        return fig1_suite(b, options);
      },
      py::arg("bundle"), py::arg("horizon") = 100000);
  m.def(
      "fig2_suite",
      [](const SmoothnessBundle& b, std::int64_t horizon) {
        SuiteOptions options;
        options.horizon = horizon;
        return fig2_suite(b, options);
      },
      py::arg("bundle"), py::arg("horizon") = 100000);

  m.def(
      "run_case",
      [](const RoutingGame& game, const CaseSpec& spec, std::uint64_t seed, double phi_star) {
        std::vector<TraceRow> rows;
        {
          py::gil_scoped_release release;
          rows = run_case(game, spec, seed, phi_star).trace.rows;
        }
        return trace_columns(rows);
      },
      py::arg("game"), py::arg("case"), py::arg("seed"), py::arg("phi_star"));
  m.def(
      "metrics_csv",
      [](const RoutingGame& game, const CaseSpec& spec, std::uint64_t seed, double phi_star) {
        return metrics_csv(run_case(game, spec, seed, phi_star).trace.rows);
      },
      py::arg("game"), py::arg("case"), py::arg("seed"), py::arg("phi_star"));
  m.def(
      "fit_loglog_slope",
      [](const std::vector<std::int64_t>& k, const std::vector<double>& gap, std::int64_t k_min, std::int64_t k_max,
         double epsilon) { return fit_loglog_slope(rows_from(k, gap), k_min, k_max, epsilon); },
      py::arg("k"), py::arg("gap"), py::arg("k_min"), py::arg("k_max"), py::arg("epsilon") = 0.0);
}
