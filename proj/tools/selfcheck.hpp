// SPDX-License-Identifier: Apache-2.0
#ifndef HGW_TOOLS_SELFCHECK_HPP
#define HGW_TOOLS_SELFCHECK_HPP

#include "hgw/graph.hpp"
#include "hgw/metric.hpp"

namespace hgw::selfcheck {

/// Runs the cross-module invariant suite against one graph: Laplacian
/// structure, spectral residuals, heat-kernel laws, wavelet and frame
/// identities, metric axioms, both localization sweeps, and the
/// diffusion-centrality consistency checks.  Prints one line per check
/// to standard output and returns the number of failed checks.
int run(const Graph& g, MetricVariant variant);

}  // namespace hgw::selfcheck

#endif  // HGW_TOOLS_SELFCHECK_HPP
