#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "wavervfl/adam.hpp"
#include "wavervfl/closed_form.hpp"
#include "wavervfl/dataset.hpp"
#include "wavervfl/eval.hpp"
#include "wavervfl/losses.hpp"
#include "wavervfl/model.hpp"

namespace py = pybind11;
using namespace wavervfl;

namespace {

Dataset make_dataset(const Eigen::MatrixXd& X, const Eigen::VectorXd& Y) {
  if (X.rows() != Y.size())
    throw std::invalid_argument("X and Y row counts differ");
  Dataset data;
  data.name = "py";
  data.X = X;
  data.Y = Y;
  return data;
}

ResultTable table_from_matrix(const Eigen::MatrixXd& acc) {
  ResultTable table;
  table.acc = acc;
  table.stddev = Eigen::MatrixXd::Zero(acc.rows(), acc.cols());
  for (Eigen::Index i = 0; i < acc.rows(); ++i)
    table.datasets.push_back("d" + std::to_string(i));
  for (Eigen::Index j = 0; j < acc.cols(); ++j)
    table.models.push_back("m" + std::to_string(j));
  return table;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Wave-RVFL core: random feature maps, wave loss, closed-form ridge, Adam training";

  py::class_<RandomFeatureMap>(m, "FeatureMap")
      .def_readonly("input_dim", &RandomFeatureMap::input_dim)
      .def_readonly("hidden_dim", &RandomFeatureMap::hidden_dim)
      .def_readonly("weights", &RandomFeatureMap::weights)
      .def_readonly("bias", &RandomFeatureMap::bias)
      .def_readonly("seed", &RandomFeatureMap::seed)
      .def_property_readonly(
          "activation",
          [](const RandomFeatureMap& map) { return activation_name(map.activation); })
      .def("hidden", [](const RandomFeatureMap& map, const Eigen::MatrixXd& X) {
        return hidden_features(X, map);
      })
      .def("enhance", [](const RandomFeatureMap& map, const Eigen::MatrixXd& X) {
        return enhance(X, map);
      });

  m.def(
      "init_feature_map",
      [](int input_dim, int hidden_dim, int activation_id, std::uint64_t seed) {
        return init_feature_map(input_dim, hidden_dim, activation_from_id(activation_id), seed);
      },
      py::arg("input_dim"), py::arg("hidden_dim"), py::arg("activation_id") = 1,
      py::arg("seed") = 0);

  m.def(
      "apply_activation",
      [](int activation_id, const Eigen::MatrixXd& X) {
        const Activation act = activation_from_id(activation_id);
        Eigen::MatrixXd out = X;
        for (Eigen::Index i = 0; i < out.rows(); ++i)
          for (Eigen::Index j = 0; j < out.cols(); ++j)
            out(i, j) = apply_activation(act, out(i, j));
        return out;
      },
      py::arg("activation_id"), py::arg("values"));

  m.def(
      "wave_loss",
      [](double v, double eta, double gamma) { return wave_loss(v, {eta, gamma}); },
      py::arg("v"), py::arg("eta") = 1.0, py::arg("gamma") = 1.0);
  m.def(
      "wave_loss_dv",
      [](double v, double eta, double gamma) { return wave_loss_dv(v, {eta, gamma}); },
      py::arg("v"), py::arg("eta") = 1.0, py::arg("gamma") = 1.0);
  m.def("square_loss", &square_loss, py::arg("residuals"));

  m.def(
      "objective",
      [](const Eigen::VectorXd& beta, const Eigen::MatrixXd& Z, const Eigen::VectorXd& Y,
         double C, double eta, double gamma) {
        return objective(beta, Z, Y, {C, {eta, gamma}});
      },
      py::arg("beta"), py::arg("Z"), py::arg("Y"), py::arg("C") = 1.0, py::arg("eta") = 1.0,
      py::arg("gamma") = 1.0);
  m.def(
      "objective_gradient",
      [](const Eigen::VectorXd& beta, const Eigen::MatrixXd& Z, const Eigen::VectorXd& Y,
         double C, double eta, double gamma) {
        return objective_gradient(beta, Z, Y, {C, {eta, gamma}});
      },
      py::arg("beta"), py::arg("Z"), py::arg("Y"), py::arg("C") = 1.0, py::arg("eta") = 1.0,
      py::arg("gamma") = 1.0);

  m.def("solve_ridge", &solve_ridge, py::arg("Z"), py::arg("Y"), py::arg("C"));

  py::class_<ModelWeights>(m, "Model")
      .def_property_readonly(
          "variant", [](const ModelWeights& model) { return variant_name(model.variant); })
      .def_readonly("beta", &ModelWeights::beta)
      .def_readonly("C", &ModelWeights::C)
      .def_readonly("feature_map", &ModelWeights::feature_map)
      .def_property_readonly("eta",
                             [](const ModelWeights& model) { return model.eta; })
      .def_property_readonly("gamma",
                             [](const ModelWeights& model) { return model.gamma; })
      .def("decision_scores",
           [](const ModelWeights& model, const Eigen::MatrixXd& X) {
             return decision_scores(model, X);
           })
      .def("predict",
           [](const ModelWeights& model, const Eigen::MatrixXd& X) { return predict(model, X); })
      .def("save",
           [](const ModelWeights& model, const std::filesystem::path& path) {
             save_model(model, path);
           })
      .def_static("load", [](const std::filesystem::path& path) { return load_model(path); });

  m.def(
      "fit_rvfl",
      [](const Eigen::MatrixXd& X, const Eigen::VectorXd& Y, double C, int hidden_dim,
         int activation_id, std::uint64_t seed) {
        const auto map = init_feature_map(static_cast<int>(X.cols()), hidden_dim,
                                          activation_from_id(activation_id), seed);
        return fit_rvfl(make_dataset(X, Y), C, map);
      },
      py::arg("X"), py::arg("Y"), py::arg("C") = 1.0, py::arg("hidden_dim") = 23,
      py::arg("activation_id") = 1, py::arg("seed") = 0);
  m.def(
      "fit_elm",
      [](const Eigen::MatrixXd& X, const Eigen::VectorXd& Y, double C, int hidden_dim,
         int activation_id, std::uint64_t seed) {
        const auto map = init_feature_map(static_cast<int>(X.cols()), hidden_dim,
                                          activation_from_id(activation_id), seed);
        return fit_elm(make_dataset(X, Y), C, map);
      },
      py::arg("X"), py::arg("Y"), py::arg("C") = 1.0, py::arg("hidden_dim") = 23,
      py::arg("activation_id") = 1, py::arg("seed") = 0);

  py::class_<TrainResult>(m, "TrainResult")
      .def_readonly("model", &TrainResult::model)
      .def_readonly("iterations", &TrainResult::iterations)
      .def_readonly("final_objective", &TrainResult::final_objective)
      .def_readonly("converged", &TrainResult::converged);

  m.def(
      "train_wave_rvfl",
      [](const Eigen::MatrixXd& X, const Eigen::VectorXd& Y, double C, double eta, double gamma,
         int hidden_dim, int activation_id, double alpha, double delta, int max_iters,
         int batch_size, std::uint64_t seed) {
        TrainConfig cfg;
        cfg.C = C;
        cfg.eta = eta;
        cfg.gamma = gamma;
        cfg.hidden_dim = hidden_dim;
        cfg.activation = activation_from_id(activation_id);
        cfg.alpha = alpha;
        cfg.delta = delta;
        cfg.max_iters = max_iters;
        cfg.batch_size = batch_size;
        cfg.seed = seed;
        return train_wave_rvfl(make_dataset(X, Y), cfg);
      },
      py::arg("X"), py::arg("Y"), py::arg("C") = 1.0, py::arg("eta") = 1.0,
      py::arg("gamma") = 1.0, py::arg("hidden_dim") = 23, py::arg("activation_id") = 1,
      py::arg("alpha") = 0.01, py::arg("delta") = 1e-5, py::arg("max_iters") = 1000,
      py::arg("batch_size") = 0, py::arg("seed") = 0);

  m.def("accuracy", &accuracy, py::arg("predictions"), py::arg("truth"));

  m.def(
      "average_ranks",
      [](const Eigen::MatrixXd& acc) { return average_ranks(table_from_matrix(acc)); },
      py::arg("acc"));
  m.def(
      "friedman_test",
      [](const std::vector<double>& ranks, int P, int q) {
        const auto result = friedman_test(ranks, P, q);
        return py::make_tuple(result.chi2_F, result.F_F);
      },
      py::arg("avg_ranks"), py::arg("P"), py::arg("q"));
  m.def(
      "win_tie_loss",
      [](const Eigen::MatrixXd& acc) {
        const auto counts = win_tie_loss(table_from_matrix(acc));
        py::list rows;
        for (const auto& row : counts) {
          py::list cells;
          for (const auto& c : row) cells.append(py::make_tuple(c.wins, c.ties, c.losses));
          rows.append(cells);
        }
        return rows;
      },
      py::arg("acc"));

  m.def(
      "kfold_assignments",
      [](int n, int k, std::uint64_t seed) { return kfold_split(n, k, seed).assignments; },
      py::arg("n"), py::arg("k"), py::arg("seed") = 0);

  m.def(
      "label_flip",
      [](const Eigen::MatrixXd& X, const Eigen::VectorXd& Y, double fraction,
         std::uint64_t seed) {
        const auto noisy = inject_label_noise(make_dataset(X, Y), fraction, seed);
        return py::make_tuple(noisy.X, noisy.Y);
      },
      py::arg("X"), py::arg("Y"), py::arg("fraction"), py::arg("seed") = 0);
  m.def(
      "gaussian_noise",
      [](const Eigen::MatrixXd& X, const Eigen::VectorXd& Y, double fraction, double sigma_scale,
         std::uint64_t seed) {
        const auto noisy = inject_gaussian_noise(make_dataset(X, Y), fraction, sigma_scale, seed);
        return py::make_tuple(noisy.X, noisy.Y);
      },
      py::arg("X"), py::arg("Y"), py::arg("fraction"), py::arg("sigma_scale") = 1.0,
      py::arg("seed") = 0);
}
