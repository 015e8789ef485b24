#pragma once

#include <string>
#include <string_view>

namespace wavervfl {

// Hidden-layer activations, numbered as selected by the search grid.
enum class Activation : int {
  Sigmoid = 1,
  Sine = 2,
  Tribas = 3,
  Radbas = 4,
  Tansig = 5,
  Relu = 6,
};

Activation activation_from_id(int id);  // throws std::invalid_argument on unknown id
int activation_id(Activation a);
const char* activation_name(Activation a);
Activation activation_from_name(std::string_view name);  // accepts names or numeric ids

// Applies the activation elementwise; x must be finite.
double apply_activation(Activation a, double x);

}  // namespace wavervfl
