#pragma once
// A semi-discrete PDE in the canonical shape  du/dt = S * grad H(u),
// with S a constant matrix that is either skew (conservative problems) or
// negative semidefinite (dissipative ones).  Extra monitors carry additional
// invariants of the same flow (mass, probability, a second Hamiltonian
// formulation) that the outputs track alongside the driver.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "avf/energy.hpp"
#include "avf/layout.hpp"
#include "avf/structure.hpp"
#include "avf/vec.hpp"

namespace avf {

struct SemiDiscreteSystem {
  std::string name;
  StructureOperator op;
  EnergyMonitor driver;
  std::vector<EnergyMonitor> aux;
  StateLayout layout;

  std::size_t dim() const { return driver.dim(); }
  bool conservative() const { return op.cls == MatrixClass::Skew; }

  // f = S * grad H, reusing the caller's scratch for the gradient.
  void eval_vector_field(const Vec& u, Vec& grad_scratch, Vec& f) const;
  Vec eval_vector_field(const Vec& u) const;

  // Driver first, then aux, as outputs report them.
  std::vector<const EnergyMonitor*> monitors() const;
  const EnergyMonitor* monitor(std::string_view name) const;  // null if absent
};

}  // namespace avf
