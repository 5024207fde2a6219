#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <string>
#include <vector>

#include "cumdiff/cumdiff.hpp"

namespace py = pybind11;
using namespace cumdiff;

namespace {

PairedDataset make_dataset(const std::vector<double>& scores, const std::vector<double>& q,
                           const std::vector<double>& r,
                           const std::optional<std::vector<double>>& weights) {
  if (q.size() != scores.size() || r.size() != scores.size() ||
      (weights && weights->size() != scores.size())) {
    throw Error(ErrorKind::InvalidRecord, "input columns differ in length");
  }
  PairedDataset ds;
  ds.records.reserve(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    ds.records.push_back({scores[i], q[i], r[i], weights ? (*weights)[i] : 1.0});
  }
  return ds;
}

hilbert::Config hilbert_config(std::size_t dims, std::optional<unsigned> bits) {
  auto c = hilbert::Config::for_dims(dims);
  if (bits) c.bits_per_dim = *bits;
  return c;
}

std::vector<BinStrategy> strategies_from(const std::string& name) {
  std::vector<BinStrategy> out;
  if (name != "equivariance") out.push_back(BinStrategy::equispaced);
  if (name != "equispaced") out.push_back(BinStrategy::equivariance);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cumulative differences, Kuiper/Kolmogorov-Smirnov metrics and Hilbert-curve scores "
            "for paired populations.";

  // Raised with `kind` (the ErrorKind name) and, for bad records, `record`.
  static PyObject* error_type = [&] {
    py::exception<Error> type(m, "CumdiffError", PyExc_ValueError);
    return type.inc_ref().ptr();
  }();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object cls = py::reinterpret_borrow<py::object>(error_type);
      py::object exc = cls(e.what());
      exc.attr("kind") = std::string(to_string(e.kind()));
      exc.attr("record") = e.record() ? py::cast(*e.record()) : py::none();
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  py::class_<AggregatedSamples>(m, "AggregatedSamples")
      .def_property_readonly("scores", [](const AggregatedSamples& a) {
        return std::vector<double>(a.scores().begin(), a.scores().end());
      })
      .def_property_readonly("q_mean", [](const AggregatedSamples& a) {
        return std::vector<double>(a.q_mean().begin(), a.q_mean().end());
      })
      .def_property_readonly("r_mean", [](const AggregatedSamples& a) {
        return std::vector<double>(a.r_mean().begin(), a.r_mean().end());
      })
      .def_property_readonly("weight_total", [](const AggregatedSamples& a) {
        return std::vector<double>(a.weight_total().begin(), a.weight_total().end());
      })
      .def_property_readonly("grand_weight", &AggregatedSamples::grand_weight)
      .def("__len__", &AggregatedSamples::size);

  py::class_<CumulativeCurve>(m, "CumulativeCurve")
      .def_readonly("abscissae", &CumulativeCurve::abscissae)
      .def_readonly("ordinates", &CumulativeCurve::ordinates)
      .def("__len__", &CumulativeCurve::size);

  py::class_<CurveMetrics>(m, "CurveMetrics")
      .def_readonly("kuiper", &CurveMetrics::kuiper)
      .def_readonly("kolmogorov_smirnov", &CurveMetrics::kolmogorov_smirnov)
      .def_readonly("average_difference", &CurveMetrics::average_difference)
      .def_readonly("sigma", &CurveMetrics::sigma)
      .def_readonly("kuiper_over_sigma", &CurveMetrics::kuiper_over_sigma)
      .def_readonly("ks_over_sigma", &CurveMetrics::ks_over_sigma);

  py::class_<ReliabilityDiagram>(m, "ReliabilityDiagram")
      .def_property_readonly("boundaries", [](const ReliabilityDiagram& d) { return d.boundaries.interior; })
      .def_readonly("s_mean", &ReliabilityDiagram::s_mean)
      .def_readonly("q_mean", &ReliabilityDiagram::q_mean)
      .def_readonly("r_mean", &ReliabilityDiagram::r_mean)
      .def_readonly("bin_weight", &ReliabilityDiagram::bin_weight);

  m.def("aggregate",
        [](const std::vector<double>& scores, const std::vector<double>& q,
           const std::vector<double>& r, const std::optional<std::vector<double>>& weights) {
          return aggregate(make_dataset(scores, q, r, weights));
        },
        py::arg("scores"), py::arg("q"), py::arg("r"), py::arg("weights") = py::none(),
        "Collapse tied scores into per-score weighted means.");

  m.def("cumulative_curve", &cumulative_curve, py::arg("agg"));
  m.def("secant_slope", &secant_slope, py::arg("curve"), py::arg("j_lo"), py::arg("j_hi"));
  m.def("kuiper", &kuiper, py::arg("curve"));
  m.def("kolmogorov_smirnov", &kolmogorov_smirnov, py::arg("curve"));
  m.def("sigma_estimate", &sigma_estimate, py::arg("agg"));
  m.def("metrics", py::overload_cast<const AggregatedSamples&>(&metrics), py::arg("agg"));

  m.def("bins_equispaced",
        [](const AggregatedSamples& agg, std::size_t l) { return bins_equispaced(agg, l).interior; },
        py::arg("agg"), py::arg("bins"));
  m.def("bins_equivariance",
        [](const AggregatedSamples& agg, std::size_t l) { return bins_equivariance(agg, l).interior; },
        py::arg("agg"), py::arg("bins"));
  m.def("diagram",
        [](const std::vector<double>& scores, const std::vector<double>& q,
           const std::vector<double>& r, const std::optional<std::vector<double>>& weights,
           std::vector<double> boundaries) {
          return diagram(canonicalize(make_dataset(scores, q, r, weights)),
                         BinBoundaries{std::move(boundaries)});
        },
        py::arg("scores"), py::arg("q"), py::arg("r"), py::arg("weights"), py::arg("boundaries"));

  m.def("hilbert_encode",
        [](const std::vector<std::uint64_t>& point, std::optional<unsigned> bits) {
          return hilbert::encode(point, hilbert_config(point.size(), bits));
        },
        py::arg("point"), py::arg("bits") = py::none());
  m.def("hilbert_decode",
        [](std::uint64_t index, std::size_t dims, std::optional<unsigned> bits) {
          return hilbert::decode(index, hilbert_config(dims, bits));
        },
        py::arg("index"), py::arg("dims"), py::arg("bits") = py::none());
  m.def("hilbert_score",
        [](const std::vector<double>& covariates, std::optional<unsigned> bits) {
          return hilbert::score(covariates, hilbert_config(covariates.size(), bits));
        },
        py::arg("covariates"), py::arg("bits") = py::none());
  m.def("normalize_scores",
        [](const std::vector<double>& s) { return hilbert::normalize_scores(s); }, py::arg("scores"));
  m.def("break_ties",
        [](const std::vector<double>& s, std::uint64_t seed, double scale) {
          auto c = hilbert::Config::for_dims(1);
          c.tie_mode = hilbert::TieMode::perturb;
          c.seed = seed;
          c.perturb_scale = scale;
          return hilbert::break_ties(s, c);
        },
        py::arg("scores"), py::arg("seed") = 0, py::arg("perturb_scale") = 1e-8);

  m.def("synth",
        [](std::size_t n, std::size_t m_unique, const std::string& profile, const std::string& noise,
           double sigma_noise, std::uint64_t seed) {
          synth::Spec spec;
          spec.n = n;
          spec.m = m_unique;
          spec.profile = synth::parse_profile(profile);
          spec.noise = synth::parse_noise(noise);
          spec.sigma_noise = sigma_noise;
          spec.seed = seed;
          auto sample = synth::generate(spec);
          py::dict data;
          std::vector<double> s, q, r, w;
          for (const auto& rec : sample.dataset.records) {
            s.push_back(rec.score);
            q.push_back(rec.q);
            r.push_back(rec.r);
            w.push_back(rec.weight);
          }
          data["scores"] = s;
          data["q"] = q;
          data["r"] = r;
          data["weights"] = w;
          return py::make_tuple(data, std::move(sample.expected));
        },
        py::arg("n") = 4000, py::arg("m") = 1000, py::arg("profile") = "jump",
        py::arg("noise") = "gaussian", py::arg("sigma_noise") = 0.1, py::arg("seed") = 0);

  m.def("coverage",
        [](std::size_t trials, std::size_t n, std::size_t m_unique, double sigma_noise,
           const std::string& noise, std::uint64_t seed, unsigned threads) {
          synth::Spec spec;
          spec.n = n;
          spec.m = m_unique;
          spec.noise = synth::parse_noise(noise);
          spec.sigma_noise = sigma_noise;
          py::gil_scoped_release release;
          return coverage(trials, spec, seed, threads).fraction;
        },
        py::arg("trials") = 20000, py::arg("n") = 1000, py::arg("m") = 100,
        py::arg("sigma_noise") = 0.1, py::arg("noise") = "gaussian", py::arg("seed") = 0,
        py::arg("threads") = 0);

  m.def("analyze_csv",
        [](const std::filesystem::path& path, const std::vector<std::string>& covariates,
           const std::string& q, const std::string& r, const std::optional<std::string>& weight,
           const std::string& tie_mode, std::uint64_t seed, const std::vector<std::size_t>& bins,
           const std::string& bin_strategy) {
          ColumnMap map{covariates, q, r, weight};
          const auto in = ingest_csv(path, map);
          AnalysisConfig config;
          config.covariate_names = covariates;
          config.tie_mode = tie_mode == "perturb" ? hilbert::TieMode::perturb : hilbert::TieMode::aggregate;
          config.seed = seed;
          config.bins = bins;
          config.strategies = strategies_from(bin_strategy);
          return bundle_json(analyze(in.dataset, in.covariates, config, in.dropped));
        },
        py::arg("path"), py::arg("covariates"), py::arg("q"), py::arg("r"),
        py::arg("weight") = py::none(), py::arg("tie_mode") = "aggregate", py::arg("seed") = 0,
        py::arg("bins") = std::vector<std::size_t>{10, 100}, py::arg("bin_strategy") = "both",
        "Run the full pipeline on a CSV file and return the analysis JSON text.");
}
