#pragma once

#include <vector>

namespace pcflow {

/// Pointwise left-minus-right values of an identity. An empty mask means
/// every node participates.
struct ResidualField {
  std::vector<double> values;
  std::vector<unsigned char> mask;

  double sup() const;
  double min() const;
  double max() const;
  bool mask_empty() const;
};

}  // namespace pcflow
