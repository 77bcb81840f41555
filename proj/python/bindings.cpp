// Python bindings for the addsvm core: kernels, losses, measures,
// training/prediction, and the robustness checks.

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "addsvm/csv.hpp"
#include "addsvm/kernel.hpp"
#include "addsvm/loss.hpp"
#include "addsvm/measure.hpp"
#include "addsvm/robustness.hpp"
#include "addsvm/serialize.hpp"
#include "addsvm/simlab.hpp"
#include "addsvm/svm.hpp"

namespace py = pybind11;
using namespace addsvm;

namespace {

DiscreteMeasure measure_from_arrays(const Eigen::MatrixXd& X,
                                    const Eigen::VectorXd& y,
                                    const std::optional<Eigen::VectorXd>& w) {
  if (X.rows() != y.size())
    throw std::invalid_argument("X and y disagree in length");
  std::vector<Atom> atoms(static_cast<std::size_t>(X.rows()));
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    atoms[static_cast<std::size_t>(i)] =
        Atom{X.row(i).transpose(), y[i],
             w ? (*w)[i] : 1.0 / static_cast<double>(X.rows())};
  }
  return DiscreteMeasure::from_atoms(std::move(atoms));
}

Eigen::VectorXd predict_many(const SvmModel& m, const Eigen::MatrixXd& X) {
  Eigen::VectorXd out(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    out[i] = m.predict(X.row(i).transpose());
  return out;
}

}  // namespace

PYBIND11_MODULE(_addsvm, mod) {
  mod.doc() = "SVMs for additive models: composable sum kernels, "
              "Lipschitz-loss training, robustness checks";

  py::class_<KernelBlock>(mod, "KernelBlock")
      .def(py::init([](int lo, int hi, const KernelSpec& k) {
             return KernelBlock{{lo, hi}, k};
           }),
           py::arg("lo"), py::arg("hi"), py::arg("kernel"))
      .def_property_readonly("lo", [](const KernelBlock& b) { return b.range.lo; })
      .def_property_readonly("hi", [](const KernelBlock& b) { return b.range.hi; })
      .def_readonly("kernel", &KernelBlock::kernel);

  py::class_<KernelSpec>(mod, "KernelSpec")
      .def_static("gaussian", &KernelSpec::gaussian, py::arg("gamma"),
                  py::arg("input_dim"))
      .def_static("polynomial", &KernelSpec::polynomial, py::arg("degree"),
                  py::arg("offset"), py::arg("input_dim"))
      .def_static("dot", &KernelSpec::dot, py::arg("input_dim"))
      .def_static("sum", &KernelSpec::sum, py::arg("blocks"))
      .def_static("product", &KernelSpec::product, py::arg("blocks"))
      .def_property_readonly("input_dim", &KernelSpec::input_dim)
      .def("__eq__", &KernelSpec::operator==)
      .def("to_json", [](const KernelSpec& k) { return kernel_to_json(k).dump(); })
      .def_static("from_json", [](const std::string& s) {
        return kernel_from_json(nlohmann::json::parse(s));
      });

  mod.def("eval_kernel", &eval, py::arg("kernel"), py::arg("x"), py::arg("xp"));
  mod.def("gram", &gram, py::arg("kernel"), py::arg("points"));
  mod.def(
      "sup_norm_bound",
      [](const KernelSpec& k, const std::optional<Eigen::VectorXd>& lo,
         const std::optional<Eigen::VectorXd>& hi) {
        std::optional<Box> box;
        if (lo && hi) box = Box{*lo, *hi};
        return sup_norm_bound(k, box).sup_norm;
      },
      py::arg("kernel"), py::arg("box_lo") = py::none(),
      py::arg("box_hi") = py::none());

  py::class_<LossSpec>(mod, "LossSpec")
      .def_static("pinball", &LossSpec::pinball, py::arg("tau"))
      .def_static("eps_insensitive", &LossSpec::eps_insensitive, py::arg("eps"))
      .def_static("hinge", &LossSpec::hinge)
      .def("eval", &LossSpec::eval, py::arg("y"), py::arg("t"))
      .def("shifted", &LossSpec::shifted, py::arg("y"), py::arg("t"))
      .def("lipschitz", &LossSpec::lipschitz)
      .def("tag", &loss_to_tag)
      .def_static("from_tag", &loss_from_tag, py::arg("tag"));

  py::class_<DiscreteMeasure>(mod, "DiscreteMeasure")
      .def_static("from_arrays", &measure_from_arrays, py::arg("X"),
                  py::arg("y"), py::arg("w") = py::none())
      .def_static("mix", &DiscreteMeasure::mix, py::arg("p"), py::arg("q"),
                  py::arg("eps"))
      .def_property_readonly("input_dim", &DiscreteMeasure::input_dim)
      .def("__len__", &DiscreteMeasure::size)
      .def("cond_cdf", &DiscreteMeasure::cond_cdf, py::arg("x"), py::arg("t"))
      .def("atoms", [](const DiscreteMeasure& m) {
        py::list out;
        for (const auto& a : m.atoms())
          out.append(py::make_tuple(a.x, a.y, a.w));
        return out;
      });

  mod.def("tv_norm_diff", &tv_norm_diff, py::arg("p"), py::arg("q"));

  py::class_<TrainReport>(mod, "TrainReport")
      .def_readonly("sweeps", &TrainReport::sweeps)
      .def_readonly("final_objective", &TrainReport::final_objective)
      .def_readonly("kkt_residual", &TrainReport::kkt_residual)
      .def_readonly("converged", &TrainReport::converged);

  py::class_<SvmModel>(mod, "SvmModel")
      .def("predict", [](const SvmModel& m, const Eigen::VectorXd& x) {
        return m.predict(x);
      }, py::arg("x"))
      .def("predict_many", &predict_many, py::arg("X"))
      .def("additive_components", &SvmModel::additive_components, py::arg("x"))
      .def("rkhs_norm", &SvmModel::rkhs_norm)
      .def_property_readonly("objective", &SvmModel::objective)
      .def_property_readonly("alpha", &SvmModel::alpha)
      .def_property_readonly("lambda_", &SvmModel::lambda)
      .def_property_readonly("kernel", &SvmModel::kernel)
      .def_property_readonly("loss", &SvmModel::loss)
      .def_property_readonly("support", &SvmModel::support)
      .def("save", &save_model, py::arg("path"));

  mod.def("load_model", &load_model, py::arg("path"));

  mod.def(
      "train",
      [](const KernelSpec& k, const LossSpec& L, const DiscreteMeasure& P,
         double lambda, double tol, int max_sweeps, bool shifted) {
        SolverOptions opts;
        opts.tol = tol;
        opts.max_sweeps = max_sweeps;
        opts.shifted = shifted;
        return train(k, L, P, lambda, opts);
      },
      py::arg("kernel"), py::arg("loss"), py::arg("measure"), py::arg("lambda_"),
      py::arg("tol") = 1e-10, py::arg("max_sweeps") = 100000,
      py::arg("shifted") = true);

  mod.def("kkt_residual", &kkt_residual, py::arg("model"), py::arg("measure"),
          py::arg("kink_tol") = 1e-6);

  py::class_<HElement>(mod, "HElement")
      .def("norm", &HElement::norm)
      .def("eval", &HElement::eval, py::arg("x"))
      .def_readonly("points", &HElement::points)
      .def_readonly("coeffs", &HElement::coeffs);

  py::class_<BiasRow>(mod, "BiasRow")
      .def_readonly("eps", &BiasRow::eps)
      .def_readonly("h_norm_diff", &BiasRow::h_norm_diff)
      .def_readonly("sup_norm_estimate", &BiasRow::sup_norm_estimate)
      .def_readonly("bound_h", &BiasRow::bound_h)
      .def_readonly("bound_sup", &BiasRow::bound_sup)
      .def_readonly("converged", &BiasRow::converged)
      .def_readonly("pass_", &BiasRow::pass);

  py::class_<BiasCurve>(mod, "BiasCurve")
      .def_readonly("rows", &BiasCurve::rows)
      .def("all_pass", &BiasCurve::all_pass);

  mod.def("bias_check", &bias_check, py::arg("kernel"), py::arg("loss"),
          py::arg("lambda_"), py::arg("P"), py::arg("Q"), py::arg("eps_grid"),
          py::arg("probe_lo") = 0.0, py::arg("probe_hi") = 1.0);

  py::class_<BifResult>(mod, "BifResult")
      .def_readonly("element", &BifResult::element)
      .def_readonly("flagged_atoms", &BifResult::flagged_atoms)
      .def("atom_flags", &BifResult::atom_flags);

  mod.def("bif_pinball_closed", &bif_pinball_closed, py::arg("P"), py::arg("Q"),
          py::arg("model_P"), py::arg("tau"), py::arg("lambda_"));
  mod.def(
      "bif_finite_diff",
      [](const KernelSpec& k, const LossSpec& L, double lambda,
         const DiscreteMeasure& P, const DiscreteMeasure& Q, double eps) {
        return bif_finite_diff(k, L, lambda, P, Q, eps);
      },
      py::arg("kernel"), py::arg("loss"), py::arg("lambda_"), py::arg("P"),
      py::arg("Q"), py::arg("eps"));
  mod.def("h_subtract", &h_subtract, py::arg("a"), py::arg("b"));

  mod.def("true_f", &true_f, py::arg("x1"), py::arg("x2"));
  mod.def("lambda_schedule", &lambda_schedule, py::arg("n"),
          py::arg("a") = 0.05, py::arg("b") = 0.45);
  mod.def(
      "gen_sim",
      [](int n, std::uint64_t seed, double noise_scale) {
        SimDataset ds = gen_sim(n, seed, noise_scale);
        Eigen::MatrixXd X(static_cast<Eigen::Index>(ds.x.size()), 2);
        Eigen::VectorXd y(static_cast<Eigen::Index>(ds.y.size()));
        for (std::size_t i = 0; i < ds.x.size(); ++i) {
          X.row(static_cast<Eigen::Index>(i)) = ds.x[i].transpose();
          y[static_cast<Eigen::Index>(i)] = ds.y[i];
        }
        return py::make_tuple(X, y);
      },
      py::arg("n"), py::arg("seed"), py::arg("noise_scale") = 1.0);
}
