#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tensorclt/bounds.hpp"
#include "tensorclt/decomposition.hpp"
#include "tensorclt/empirics.hpp"
#include "tensorclt/io.hpp"
#include "tensorclt/models.hpp"

namespace py = pybind11;
namespace tc = tensorclt;

namespace {

tc::DoubleTensor make_double(int s, int n, std::vector<double> values) {
    return tc::DoubleTensor(s, n, std::move(values));
}

tc::DenseTensor make_dense(int s, int n, std::vector<double> values) {
    return tc::DenseTensor(s, n, std::move(values));
}

py::dict report_dict(const tc::BoundReport& r) {
    py::dict d;
    if (r.sigma2) d["sigma2"] = *r.sigma2;
    if (r.sigma1_2) d["sigma1_2"] = *r.sigma1_2;
    d["terms"] = r.terms;
    d["total"] = r.total;
    d["clamped"] = r.clamped;
    d["feasible"] = r.feasible;
    d["binding"] = r.binding;
    d["constants"] = r.constants;
    d["flags"] = r.flags;
    d["extras"] = r.extras;
    d["warnings"] = r.warnings;
    return d;
}

py::dict params_dict(const tc::TensorParams& p) {
    py::dict d;
    d["n"] = p.n;
    d["d"] = p.d;
    d["delta"] = p.delta.delta;
    d["sigma"] = p.sigma.sigma;
    d["osc"] = p.osc;
    d["pc"] = p.pc;
    d["B"] = p.B;
    d["K3"] = p.K3;
    if (p.K4) d["K4"] = *p.K4;
    d["exact"] = p.exact;
    d["stderr"] = p.stderr_map;
    d["warnings"] = p.warnings;
    return d;
}

tc::TensorParams params_from_dict(const py::dict& d) {
    tc::TensorParams p;
    p.n = d["n"].cast<int>();
    p.d = d["d"].cast<int>();
    p.delta = tc::DeltaVector(p.d, d["delta"].cast<std::vector<double>>());
    p.sigma = d.contains("sigma")
                  ? tc::SigmaVector{p.d, d["sigma"].cast<std::vector<double>>()}
                  : tc::sigma_from_delta(p.delta);
    if (d.contains("osc")) p.osc = d["osc"].cast<double>();
    if (d.contains("pc")) p.pc = d["pc"].cast<double>();
    if (d.contains("B")) p.B = d["B"].cast<double>();
    if (d.contains("K3")) p.K3 = d["K3"].cast<double>();
    if (d.contains("K4")) p.K4 = d["K4"].cast<double>();
    return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Normal-approximation bounds for exchangeable random tensors "
              "and tensor permutation statistics";

    py::register_exception<tc::Error>(m, "TensorCltError");

    py::class_<tc::DenseTensor>(m, "DenseTensor")
        .def(py::init(&make_dense), py::arg("s"), py::arg("n"), py::arg("values"))
        .def_readonly("s", &tc::DenseTensor::s)
        .def_readonly("n", &tc::DenseTensor::n)
        .def_readonly("values", &tc::DenseTensor::values);

    py::class_<tc::DoubleTensor>(m, "DoubleTensor")
        .def(py::init(&make_double), py::arg("s"), py::arg("n"), py::arg("values"))
        .def_readonly("s", &tc::DoubleTensor::s)
        .def_readonly("n", &tc::DoubleTensor::n)
        .def_readonly("values", &tc::DoubleTensor::values);

    py::class_<tc::SymmetricCoefficients>(m, "SymmetricCoefficients")
        .def(py::init<int, int>(), py::arg("d"), py::arg("n"))
        .def("set", &tc::SymmetricCoefficients::set, py::arg("subset"), py::arg("value"))
        .def("get", &tc::SymmetricCoefficients::get, py::arg("sorted_subset"))
        .def_readonly("d", &tc::SymmetricCoefficients::d)
        .def_readonly("n", &tc::SymmetricCoefficients::n);

    // tensor-core / hoeffding operations
    m.def("expand_symmetric",
          [](const tc::SymmetricCoefficients& c, std::vector<int> idx) {
              return tc::expand_symmetric(c, tc::MultiIndex(std::move(idx), c.n));
          });
    m.def("pair_equivalent", [](std::vector<int> i, std::vector<int> j, std::vector<int> p,
                                std::vector<int> q, int n) {
        return tc::pair_equivalent(tc::MultiIndex(std::move(i), n), tc::MultiIndex(std::move(j), n),
                                   tc::MultiIndex(std::move(p), n), tc::MultiIndex(std::move(q), n));
    });
    m.def("hoeffding_single", &tc::hoeffding_single);
    m.def("hoeffding_double", &tc::hoeffding_double);
    m.def("is_hoeffding", &tc::is_hoeffding, py::arg("xi"), py::arg("tol"));
    m.def("default_hoeffding_tol", &tc::default_hoeffding_tol);

    // coefficients
    m.def("seminorm", &tc::seminorm);
    m.def("set_seminorm", &tc::set_seminorm);
    m.def("gamma", [](int s, int r, const std::string& method) {
        return tc::gamma_const(s, r, method == "recursive" ? tc::GammaMethod::recursive
                                                           : tc::GammaMethod::closed);
    }, py::arg("s"), py::arg("r"), py::arg("method") = "closed");
    m.def("sigma_from_delta", [](int d, std::vector<double> delta) {
        return tc::sigma_from_delta(tc::DeltaVector(d, std::move(delta))).sigma;
    });
    m.def("variance_formula", [](const tc::SymmetricCoefficients& c, std::vector<double> delta) {
        return tc::variance_formula(c, tc::DeltaVector(c.d, std::move(delta)));
    });
    m.def("variance_direct", [](const tc::SymmetricCoefficients& c, std::vector<double> delta,
                                std::size_t budget) {
        return tc::variance_direct(c, tc::DeltaVector(c.d, std::move(delta)), budget);
    }, py::arg("c"), py::arg("delta"), py::arg("budget") = 100000000);

    // decomposition
    m.def("mu_weight", &tc::mu_weight);
    m.def("w_weight", &tc::w_weight);
    m.def("evaluate_z", &tc::evaluate_z);
    m.def("decompose_z", [](const tc::DoubleTensor& z) {
        auto res = tc::decompose_z(z);
        py::dict d;
        d["r"] = res.r;
        d["n"] = res.n;
        d["constant"] = res.constant;
        d["zeta0"] = res.zeta0;
        d["w"] = res.w;
        py::list comps;
        for (const auto& c : res.components) {
            py::dict cd;
            cd["weight"] = c.weight;
            cd["xi"] = c.xi;
            comps.append(cd);
        }
        d["components"] = comps;
        return d;
    });
    m.def("evaluate_w",
          [](const std::vector<std::pair<double, tc::DoubleTensor>>& comps,
             const std::vector<int>& pi) {
              std::vector<tc::WeightedComponent> ws;
              for (const auto& [w, xi] : comps) ws.push_back({w, xi});
              return tc::evaluate_w(ws, pi);
          });
    m.def("finite_population_transform", &tc::finite_population_transform);

    // models
    m.def("sample_permutation", [](int n, std::uint64_t seed) {
        tc::Rng rng(seed);
        return tc::sample_permutation(n, rng);
    });
    m.def("exact_slice_params", [](int n, int k, int d) {
        return params_dict(tc::exact_slice_params(n, k, d));
    });
    m.def("estimate_params", [](const std::string& model_json, std::uint64_t samples,
                                std::uint64_t seed) {
        const auto spec = tc::io::model_from_json(tc::io::Json::parse(model_json));
        return params_dict(tc::estimate_params(spec, samples, seed));
    }, py::arg("model_json"), py::arg("samples"), py::arg("seed"));

    // empirics
    m.def("normal_cdf", &tc::normal_cdf);
    m.def("kolmogorov_distance_samples", [](std::vector<double> samples, double mu, double s2) {
        return tc::kolmogorov_distance(tc::EmpiricalDistribution::from_samples(std::move(samples)),
                                       mu, s2);
    });
    m.def("levy_concentration_samples", [](std::vector<double> samples, double eps) {
        return tc::levy_concentration(tc::EmpiricalDistribution::from_samples(std::move(samples)),
                                      eps);
    });
    m.def("exact_wstat_distribution",
          [](const std::vector<std::pair<double, tc::DoubleTensor>>& comps, int n) {
              std::vector<tc::WeightedComponent> ws;
              for (const auto& [w, xi] : comps) ws.push_back({w, xi});
              auto law = tc::exact_wstat_distribution(ws, n);
              return std::make_pair(law.support, law.prob);
          });
    m.def("exact_slice_distribution", [](const tc::SymmetricCoefficients& c, int k) {
        auto law = tc::exact_slice_distribution(c, k);
        return std::make_pair(law.support, law.prob);
    });
    m.def("verify_identities", [](const std::vector<tc::DoubleTensor>& comps, int n) {
        auto rep = tc::verify_identities(comps, n);
        py::list out;
        for (const auto& c : rep.checks) {
            py::dict cd;
            cd["name"] = c.name;
            cd["lhs"] = c.lhs;
            cd["rhs"] = c.rhs;
            cd["inequality"] = c.is_inequality;
            cd["ok"] = c.ok;
            out.append(cd);
        }
        return out;
    });

    // bounds
    m.def("kappa", &tc::kappa);
    m.def("const_Cd", &tc::const_Cd);
    m.def("const_C1", &tc::const_C1);
    m.def("gaussian_comparison", &tc::gaussian_comparison);
    m.def("mixture_comparison", &tc::mixture_comparison);
    m.def("wstat_clt_bound", [](const std::vector<tc::DoubleTensor>& comps, int n) {
        return report_dict(tc::wstat_clt_bound(comps, n));
    });
    m.def("tensor_bound",
          [](const py::dict& params, const std::vector<double>& seminorms, double row_cubic,
             double alpha) {
              tc::SeminormProfile profile;
              profile.d = static_cast<int>(seminorms.size()) - 1;
              profile.values = seminorms;
              profile.row_cubic = row_cubic;
              return report_dict(tc::tensor_bound(params_from_dict(params), profile, alpha));
          });
    m.def("slice_poly_bound", [](const tc::SymmetricCoefficients& c, int k, double eps) {
        std::optional<double> sigma2;
        if (tc::binom_i64(c.n, k) <= 200000)
            sigma2 = tc::exact_slice_distribution(c, k).variance();
        return report_dict(tc::slice_poly_bound(c, k, eps, sigma2));
    });
}
