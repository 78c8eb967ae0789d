#pragma once

#include "homstat/errors.hpp"
#include "homstat/rational.hpp"
#include "homstat/sparse_matrix.hpp"
#include "homstat/exactla.hpp"
#include "homstat/complex.hpp"
#include "homstat/planar.hpp"
#include "homstat/dual.hpp"
#include "homstat/chain.hpp"
#include "homstat/cosheaf.hpp"
#include "homstat/homology.hpp"
#include "homstat/statics.hpp"
#include "homstat/duality.hpp"
#include "homstat/io.hpp"
#include "homstat/report.hpp"
#include "homstat/svg.hpp"
