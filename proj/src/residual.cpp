#include "pcflow/residual.hpp"

#include "pcflow/kernels.hpp"

namespace pcflow {

double ResidualField::sup() const { return kernels::sup_norm(values, mask); }
double ResidualField::min() const { return kernels::extrema(values, mask).min; }
double ResidualField::max() const { return kernels::extrema(values, mask).max; }

bool ResidualField::mask_empty() const {
  if (mask.empty()) return values.empty();
  for (unsigned char m : mask)
    if (m) return false;
  return true;
}

}  // namespace pcflow
