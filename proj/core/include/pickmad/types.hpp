// Copyright 2026 The pickmad Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace pickmad {

/// One bivariate observation, block maximum, or pseudo-observation.
struct BivariatePoint {
  double x1 = 0.0;
  double x2 = 0.0;

  friend bool operator==(const BivariatePoint&, const BivariatePoint&) = default;
};

}  // namespace pickmad
