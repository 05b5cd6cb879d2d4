#pragma once

#include <vector>

#include "lstmboost/numerics.hpp"

namespace lstmboost {

/// A numeric feature vector with its {0,1} class label.
struct EncodedExample {
  Vector features;
  int label = 0;

  friend bool operator==(const EncodedExample&, const EncodedExample&) = default;
};

}  // namespace lstmboost
