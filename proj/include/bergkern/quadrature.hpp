#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace bergkern {

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
   std::vector<double> nodes;
   std::vector<double> weights;
};

// Nodes and weights of the n-point Gauss-Legendre rule. Rules are cached,
// the returned reference stays valid for the lifetime of the program.
const GaussRule& gauss_legendre(std::size_t n);

struct QuadratureResult {
   double value = 0.0;
   double error = 0.0;  // estimated absolute error
   std::size_t panels = 0;
};

struct AdaptiveOptions {
   double rel_tol = 1e-12;
   std::size_t order = 20;
   std::size_t max_panels = 20000;
};

// Globally adaptive Gauss-Legendre quadrature of f over the union of the
// intervals [breaks[i], breaks[i+1]]. Breakpoints are never straddled by a
// panel. The panel with the largest error estimate is bisected until the
// total estimate drops below rel_tol * |value|.
//
// Throws convergence_error (carrying the achieved relative bound) when the
// panel budget runs out.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const double> breaks,
                                    const AdaptiveOptions& options = {});

} // namespace bergkern
