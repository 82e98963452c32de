#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "irops/cli/app.hpp"
#include "irops/core/error.hpp"
#include "irops/dimred/pca.hpp"
#include "irops/dimred/tsne.hpp"
#include "irops/features/engineer.hpp"
#include "irops/features/geodesy.hpp"
#include "irops/features/yeo_johnson.hpp"
#include "irops/featsel/gpr.hpp"
#include "irops/featsel/mutual_info.hpp"
#include "irops/featsel/qq.hpp"
#include "irops/flight_data/disruption_report.hpp"
#include "irops/flight_data/flight_csv.hpp"
#include "irops/synth/synth.hpp"

namespace py = pybind11;
using namespace irops;

namespace {

FlightDataset parse_text(const std::string& csv) {
  std::istringstream in(csv);
  auto parsed = parse_flight_csv(in);
  if (!parsed.errors.empty()) {
    throw SchemaError("line " + std::to_string(parsed.errors.front().line) + ": " + parsed.errors.front().message);
  }
  return std::move(parsed.records);
}

py::dict report_dict(const DisruptionReport& r) {
  py::dict cells;
  for (std::size_t d = 0; d < kDomainCount; ++d) {
    const auto dom = static_cast<FunctionalDomain>(d);
    for (const auto e : {DisruptionEffect::Delayed, DisruptionEffect::Cancelled, DisruptionEffect::Diverted}) {
      cells[py::make_tuple(std::string(to_string(dom)), std::string(to_string(e)))] = r.count(dom, e);
    }
  }
  py::dict out;
  out["cells"] = cells;
  out["non_disrupted"] = r.non_disrupted();
  out["disrupted"] = r.disrupted_total();
  out["total"] = r.total();
  out["delayed_share_of_disrupted_pct"] = r.delayed_share_of_disrupted_pct();
  out["disrupted_share_of_total_pct"] = r.disrupted_share_of_total_pct();
  return out;
}

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Flight disruption feature engineering, embedding and feature selection";

  auto base = py::register_exception<Error>(m, "IropsError", PyExc_RuntimeError);
  py::register_exception<SchemaError>(m, "SchemaError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<EmptyInputError>(m, "EmptyInputError", base.ptr());
  py::register_exception<LookupError>(m, "NotFoundError", base.ptr());
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<ConditioningError>(m, "ConditioningError", base.ptr());

  m.def(
      "synth_csv",
      [](std::uint64_t n, std::uint64_t seed) {
        return flight_csv_string(synth::generate(synth::default_table1_config(n, seed)));
      },
      py::arg("n"), py::arg("seed") = 42, "Synthetic flight schedule as CSV text.");
  m.def(
      "report", [](const std::string& csv) { return report_dict(macroscopic_report(parse_text(csv))); },
      py::arg("csv"), "Domain by effect counts and headline shares of flight CSV text.");
  m.def(
      "engineer",
      [](const std::string& csv, std::uint64_t seed) {
        features::EngineerOptions o;
        o.seat_map = synth::default_table1_config(1, seed).seat_map;
        auto fm = features::engineer_features(parse_text(csv), o).matrix;
        std::vector<std::string> names;
        for (const auto& d : fm.descriptors) names.push_back(d.name);
        return py::make_tuple(names, fm.values);
      },
      py::arg("csv"), py::arg("seed") = 42,
      "Engineered feature names and matrix, with the synthetic fleet's seat map.");

  m.def(
      "vincenty",
      [](double lat1, double lon1, double lat2, double lon2, bool fallback) {
        features::VincentyOptions o;
        o.haversine_fallback = fallback;
        return features::vincenty_distance({lat1, lon1}, {lat2, lon2}, o);
      },
      py::arg("lat1"), py::arg("lon1"), py::arg("lat2"), py::arg("lon2"), py::arg("fallback") = false,
      "WGS-84 inverse geodesic distance in metres.");
  m.def("yeo_johnson", &features::yeo_johnson, py::arg("x"), py::arg("lam"));
  m.def("yeo_johnson_inverse", &features::yeo_johnson_inverse, py::arg("y"), py::arg("lam"));
  m.def(
      "fit_yeo_johnson_lambda", [](const std::vector<double>& x) { return features::fit_yeo_johnson_lambda(x); },
      py::arg("x"));

  m.def(
      "pca",
      [](const Eigen::MatrixXd& x, Eigen::Index d) {
        const auto model = dimred::pca_fit(x, d);
        py::dict out;
        out["mean"] = model.mean;
        out["components"] = model.components;
        out["eigenvalues"] = model.eigenvalues;
        out["explained_variance_ratio"] = model.explained_variance_ratio;
        out["scores"] = dimred::pca_transform(model, x);
        return out;
      },
      py::arg("x"), py::arg("d"));
  m.def(
      "tsne",
      [](const Eigen::MatrixXd& x, double perplexity, int n_iter, std::uint64_t seed) {
        dimred::TsneParams p;
        p.perplexity = perplexity;
        p.n_iter = n_iter;
        p.seed = seed;
        dimred::TsneResult r;
        {
          py::gil_scoped_release release;
          r = dimred::tsne_embed(x, p);
        }
        std::vector<std::pair<int, double>> trace;
        for (const auto& s : r.kl_trace) trace.emplace_back(s.iteration, s.kl);
        return py::make_tuple(r.embedding, trace);
      },
      py::arg("x"), py::arg("perplexity") = 30.0, py::arg("n_iter") = 1000, py::arg("seed") = 0,
      "Exact t-SNE embedding and its (iteration, KL) trace.");

  m.def(
      "mi_ksg",
      [](const std::vector<double>& x, const std::vector<double>& y, int k, std::uint64_t seed) {
        return featsel::mi_ksg(x, y, k, seed);
      },
      py::arg("x"), py::arg("y"), py::arg("k") = featsel::kDefaultNeighbours, py::arg("seed") = 0,
      "KSG mutual information estimate in nats.");
  m.def("matern32", &featsel::matern32, py::arg("r"), py::arg("lengthscale") = 1.0);

  py::class_<featsel::GprModel>(m, "GprModel")
      .def_property_readonly("lengthscales", [](const featsel::GprModel& g) { return to_vector(g.hp.lengthscales); })
      .def_property_readonly("signal_variance", [](const featsel::GprModel& g) { return g.hp.signal_variance; })
      .def_property_readonly("noise_variance", [](const featsel::GprModel& g) { return g.hp.noise_variance; })
      .def_property_readonly("lml", [](const featsel::GprModel& g) { return g.lml; })
      .def(
          "predict",
          [](const featsel::GprModel& g, const Eigen::MatrixXd& xs) {
            const auto p = featsel::gpr_predict(g, xs);
            return py::make_tuple(p.mean, p.variance);
          },
          py::arg("x"), "Posterior mean and latent variance.");
  m.def(
      "gpr_fit",
      [](const Eigen::MatrixXd& x, const Eigen::VectorXd& y, int restarts, std::uint64_t seed) {
        featsel::GprFitOptions o;
        o.restarts = restarts;
        o.seed = seed;
        py::gil_scoped_release release;
        return featsel::gpr_fit(x, y, o);
      },
      py::arg("x"), py::arg("y"), py::arg("restarts") = 5, py::arg("seed") = 0,
      "ARD Matern-3/2 GP with hyperparameters at the best of several LML ascents.");
  m.def(
      "sme_qq",
      [](const std::vector<double>& mean, const std::vector<double>& var, const std::vector<double>& y,
         double noise) {
        std::vector<std::tuple<double, double, double>> out;
        for (const auto& p : featsel::sme_qq(mean, var, y, noise)) out.emplace_back(p.position, p.theoretical, p.observed);
        return out;
      },
      py::arg("mean"), py::arg("var"), py::arg("y"), py::arg("noise_variance") = 0.0,
      "(position, normal quantile, sorted standardized error) triples.");

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run_subcommand(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs one irops subcommand; returns (exit code, stdout, stderr).");
}
