#include "avf/system.hpp"

#include <stdexcept>

namespace avf {

void SemiDiscreteSystem::eval_vector_field(const Vec& u, Vec& grad_scratch, Vec& f) const {
  if (u.size() != dim())
    throw std::invalid_argument("state size " + std::to_string(u.size()) + " does not match system '" +
                                name + "' dimension " + std::to_string(dim()));
  if (op.matrix->cols() != dim())
    throw std::invalid_argument("structure operator shape does not match system dimension");
  driver.gradient(u, grad_scratch);
  f.resize(dim());
  op.matrix->apply(grad_scratch, f);
}

Vec SemiDiscreteSystem::eval_vector_field(const Vec& u) const {
  Vec g, f;
  eval_vector_field(u, g, f);
  return f;
}

std::vector<const EnergyMonitor*> SemiDiscreteSystem::monitors() const {
  std::vector<const EnergyMonitor*> all;
  all.push_back(&driver);
  for (const auto& m : aux) all.push_back(&m);
  return all;
}

const EnergyMonitor* SemiDiscreteSystem::monitor(std::string_view want) const {
  for (const EnergyMonitor* m : monitors())
    if (m->name() == want) return m;
  return nullptr;
}

}  // namespace avf
