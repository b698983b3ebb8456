#ifndef BORNOCONV_HPP
#define BORNOCONV_HPP

#include "bornoconv/bit_set.hpp"
#include "bornoconv/bornology.hpp"
#include "bornoconv/convergence.hpp"
#include "bornoconv/error.hpp"
#include "bornoconv/harness.hpp"
#include "bornoconv/instance_io.hpp"
#include "bornoconv/metric_space.hpp"
#include "bornoconv/order_ideals.hpp"
#include "bornoconv/partial_map.hpp"
#include "bornoconv/rational.hpp"

#endif
