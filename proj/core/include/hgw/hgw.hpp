// SPDX-License-Identifier: Apache-2.0
#ifndef HGW_HGW_HPP
#define HGW_HGW_HPP

#include "hgw/centrality.hpp"
#include "hgw/errors.hpp"
#include "hgw/graph.hpp"
#include "hgw/localization.hpp"
#include "hgw/metric.hpp"
#include "hgw/spectral.hpp"
#include "hgw/wavelet.hpp"

#endif  // HGW_HGW_HPP
