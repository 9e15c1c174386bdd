#pragma once

#include "gridpoly/bins.hpp"
#include "gridpoly/bounds.hpp"
#include "gridpoly/codes.hpp"
#include "gridpoly/common.hpp"
#include "gridpoly/format.hpp"
#include "gridpoly/geometry.hpp"
#include "gridpoly/oracle.hpp"
#include "gridpoly/poly.hpp"
#include "gridpoly/ring.hpp"
