#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rssmeet/harness.hpp"

namespace py = pybind11;
using namespace rssmeet;

namespace {

ConfigMap to_config(const py::dict& values) {
  ConfigMap cfg;
  for (const auto& [k, v] : values) {
    std::string text;
    if (py::isinstance<py::list>(v) || py::isinstance<py::tuple>(v)) {
      for (const auto& item : v) {
        if (!text.empty()) text += ',';
        text += py::str(item).cast<std::string>();
      }
    } else if (py::isinstance<py::bool_>(v)) {
      text = v.cast<bool>() ? "1" : "0";
    } else {
      text = py::str(v).cast<std::string>();
    }
    cfg.set(py::str(k).cast<std::string>(), text);
  }
  return cfg;
}

Mode parse_mode(const std::string& name) {
  for (Mode m : {Mode::TwoPlayer, Mode::Multiplayer, Mode::SweepDelta, Mode::SweepPlayers,
                 Mode::Bounds, Mode::Figure1, Mode::ClosestPlayer}) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown mode '" + name + "'");
}

py::dict stats_dict(const AggregateStats& s) {
  py::dict d;
  d["config"] = s.config_index;
  d["policy"] = std::string(to_string(s.policy));
  d["num_players"] = s.num_players;
  d["delta"] = s.channel.delta;
  d["sigma"] = s.channel.sigma;
  d["n_p"] = s.channel.n_p;
  d["trials"] = s.trials;
  d["met"] = s.met;
  d["meeting_rate"] = s.meeting_rate;
  d["mean_turns"] = s.mean_turns;
  d["stderr_turns"] = s.stderr_turns;
  d["mean_m"] = s.mean_m ? py::object(py::float_(*s.mean_m)) : py::object(py::none());
  d["mean_traversed"] = s.mean_traversed;
  return d;
}

analysis::Scenario scenario(double x, double y, const ChannelParams& c) { return {x, y, c}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "RSS-guided rendezvous: channel, policies, engine, analysis and harness";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::enum_<Arm>(m, "Arm")
      .value("PLUS_Y", Arm::PlusY)
      .value("MINUS_Y", Arm::MinusY)
      .value("PLUS_X", Arm::PlusX)
      .value("MINUS_X", Arm::MinusX);
  py::enum_<LogBase>(m, "LogBase").value("NATURAL", LogBase::Natural).value("BASE10", LogBase::Base10);
  py::enum_<PolicyKind>(m, "PolicyKind")
      .value("GREEDY", PolicyKind::Greedy)
      .value("REXP3", PolicyKind::RExp3)
      .value("RTHOMPSON", PolicyKind::RThompson)
      .value("ROPTIMAL", PolicyKind::ROptimal);
  py::enum_<analysis::TaylorForm>(m, "TaylorForm")
      .value("BOUND", analysis::TaylorForm::Bound)
      .value("CONSISTENT", analysis::TaylorForm::Consistent);

  py::class_<ChannelParams>(m, "ChannelParams")
      .def(py::init([](double p_i, double d_0, double n_p, double sigma, double x_c, double delta,
                       LogBase log_base) {
             ChannelParams c{p_i, d_0, n_p, sigma, x_c, delta, log_base};
             c.validate();
             return c;
           }),
           py::arg("p_i") = 0.0, py::arg("d_0") = 1.0, py::arg("n_p") = 4.0, py::arg("sigma") = 4.0,
           py::arg("x_c") = 75.0, py::arg("delta") = 0.1, py::arg("log_base") = LogBase::Natural)
      .def_readwrite("p_i", &ChannelParams::p_i)
      .def_readwrite("d_0", &ChannelParams::d_0)
      .def_readwrite("n_p", &ChannelParams::n_p)
      .def_readwrite("sigma", &ChannelParams::sigma)
      .def_readwrite("x_c", &ChannelParams::x_c)
      .def_readwrite("delta", &ChannelParams::delta)
      .def_readwrite("log_base", &ChannelParams::log_base)
      .def("rho", &ChannelParams::rho)
      .def("sigma_tilde_sq", &ChannelParams::sigma_tilde_sq);

  m.def("q_function", &analysis::q_function, py::arg("x"));
  m.def(
      "reward_distribution",
      [](Arm arm, double x, double y, const ChannelParams& c) {
        const auto g = analysis::reward_distribution(arm, scenario(x, y, c));
        return py::make_tuple(g.mean, g.variance);
      },
      py::arg("arm"), py::arg("x"), py::arg("y"), py::arg("channel") = ChannelParams{},
      "(mean, variance) of the reward of `arm` with the opponent at (x, y).");
  m.def(
      "prob_positive",
      [](Arm arm, double x, double y, const ChannelParams& c, long long n) {
        return analysis::prob_positive(arm, scenario(x, y, c), n);
      },
      py::arg("arm"), py::arg("x"), py::arg("y"), py::arg("channel") = ChannelParams{},
      py::arg("n_avg") = 1);
  m.def(
      "drift_parameter",
      [](double x, double y, const ChannelParams& c, bool x_axis, analysis::TaylorForm form) {
        return analysis::drift_parameter(scenario(x, y, c), x_axis ? Axis::X : Axis::Y, form);
      },
      py::arg("x"), py::arg("y"), py::arg("channel") = ChannelParams{}, py::arg("x_axis") = true,
      py::arg("form") = analysis::TaylorForm::Bound);
  m.def(
      "greedy_meeting_bound",
      [](double x, double y, const ChannelParams& c) {
        return analysis::greedy_meeting_bound(scenario(x, y, c));
      },
      py::arg("x"), py::arg("y"), py::arg("channel") = ChannelParams{});
  m.def(
      "roptimal_meeting_bound",
      [](double x, double y, const ChannelParams& c, double z) {
        return analysis::roptimal_meeting_bound(scenario(x, y, c), z);
      },
      py::arg("x"), py::arg("y"), py::arg("channel") = ChannelParams{},
      py::arg("z") = analysis::kDefaultZ);
  m.def("closest_player_prob", &analysis::closest_player_prob, py::arg("d12"), py::arg("d13"),
        py::arg("d23"), py::arg("channel") = ChannelParams{}, py::arg("n_avg") = 1);
  m.def("closest_player_prob_bound", &analysis::closest_player_prob_bound, py::arg("d12"),
        py::arg("d23"), py::arg("channel") = ChannelParams{}, py::arg("n_avg") = 1);
  m.def("metric_m", &metric_m, py::arg("mean_turns"), py::arg("delta"), py::arg("x"), py::arg("y"));

  m.def(
      "run_experiment",
      [](const std::string& mode, const py::dict& config) {
        const auto spec = spec_from_config(to_config(config), parse_mode(mode));
        std::vector<AggregateStats> rows;
        {
          py::gil_scoped_release release;
          rows = run_experiment(spec);
        }
        py::list out;
        for (const auto& r : rows) out.append(stats_dict(r));
        return out;
      },
      py::arg("mode"), py::arg("config") = py::dict(),
      "Runs a simulation mode (two_player, multiplayer, sweep_delta, sweep_players) and returns "
      "one dict per configuration and policy. Config keys match the CLI configuration files.");
  m.def(
      "run_trial",
      [](const py::dict& config, std::int64_t trial, std::size_t point) {
        const auto cfg = to_config(config);
        const Mode mode = cfg.has("num_players") && cfg.get_int("num_players") != 2
                              ? Mode::Multiplayer
                              : Mode::TwoPlayer;
        const auto spec = spec_from_config(cfg, mode);
        const auto points = expand_points(spec);
        if (point >= points.size()) throw py::index_error("point index out of range");
        const auto r = run_point_trial(points[point], spec.master_seed, trial);
        py::dict d;
        d["met"] = r.met;
        d["turns"] = r.turns;
        d["traversed"] = r.traversed_distance_total;
        py::list init;
        for (const auto& p : r.initial_positions) init.append(py::make_tuple(p.x, p.y));
        d["initial_positions"] = init;
        return d;
      },
      py::arg("config") = py::dict(), py::arg("trial") = 0, py::arg("point") = 0);
  m.def(
      "bounds_table",
      [](const py::dict& config) {
        const auto rows = bounds_table(spec_from_config(to_config(config), Mode::Bounds));
        py::list out;
        for (const auto& r : rows) {
          py::dict d;
          d["x"] = r.x;
          d["y"] = r.y;
          d["delta"] = r.channel.delta;
          d["greedy_bound"] = r.greedy_bound;
          d["roptimal_bound"] = r.roptimal_bound;
          d["drift_x"] = r.drift_x;
          d["drift_y"] = r.drift_y;
          out.append(d);
        }
        return out;
      },
      py::arg("config") = py::dict());
  m.def(
      "figure1_table",
      [](const py::dict& config) {
        const auto t = figure1_table(spec_from_config(to_config(config), Mode::Figure1));
        py::dict d;
        py::list scen;
        for (const auto& s : t.scenarios) scen.append(py::make_tuple(s.x, s.y));
        d["scenarios"] = scen;
        d["n_values"] = t.n_values;
        d["prob"] = t.prob;
        return d;
      },
      py::arg("config") = py::dict());
}
