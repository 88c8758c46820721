#ifndef SWNET_SWNET_HPP
#define SWNET_SWNET_HPP

#include "swnet/rng.hpp"
#include "swnet/linkgen.hpp"
#include "swnet/overlay.hpp"
#include "swnet/routing.hpp"
#include "swnet/dynamics.hpp"
#include "swnet/analysis.hpp"
#include "swnet/harness.hpp"

#endif  // SWNET_SWNET_HPP
