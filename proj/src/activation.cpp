#include "wavervfl/activation.hpp"

#include <cmath>
#include <stdexcept>

namespace wavervfl {

Activation activation_from_id(int id) {
  if (id < 1 || id > 6)
    throw std::invalid_argument("unknown activation id " + std::to_string(id) +
                                " (valid: 1..6)");
  return static_cast<Activation>(id);
}

int activation_id(Activation a) { return static_cast<int>(a); }

const char* activation_name(Activation a) {
  switch (a) {
    case Activation::Sigmoid: return "sigmoid";
    case Activation::Sine: return "sine";
    case Activation::Tribas: return "tribas";
    case Activation::Radbas: return "radbas";
    case Activation::Tansig: return "tansig";
    case Activation::Relu: return "relu";
  }
  throw std::invalid_argument("unknown activation");
}

Activation activation_from_name(std::string_view name) {
  if (name == "sigmoid") return Activation::Sigmoid;
  if (name == "sine") return Activation::Sine;
  if (name == "tribas") return Activation::Tribas;
  if (name == "radbas") return Activation::Radbas;
  if (name == "tansig") return Activation::Tansig;
  if (name == "relu") return Activation::Relu;
  if (name.size() == 1 && name[0] >= '1' && name[0] <= '6')
    return activation_from_id(name[0] - '0');
  throw std::invalid_argument("unknown activation '" + std::string(name) + "'");
}

double apply_activation(Activation a, double x) {
  switch (a) {
    case Activation::Sigmoid: return 1.0 / (1.0 + std::exp(-x));
    case Activation::Sine: return std::sin(x);
    case Activation::Tribas: return std::max(0.0, 1.0 - std::fabs(x));
    case Activation::Radbas: return std::exp(-x * x);
    case Activation::Tansig: return 2.0 / (1.0 + std::exp(-2.0 * x)) - 1.0;
    case Activation::Relu: return std::max(0.0, x);
  }
  throw std::invalid_argument("unknown activation");
}

}  // namespace wavervfl
