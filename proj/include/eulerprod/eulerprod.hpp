#pragma once

#include "boundary_scan.hpp"
#include "character_ring.hpp"
#include "chebyshev_gate.hpp"
#include "euler_products.hpp"
#include "polynomial.hpp"
#include "primes.hpp"
#include "satotate.hpp"
#include "tau_series.hpp"
