#ifndef MINCYC_HPP
#define MINCYC_HPP

#include "mincyc/complex.hpp"
#include "mincyc/covering.hpp"
#include "mincyc/error.hpp"
#include "mincyc/generators.hpp"
#include "mincyc/homology.hpp"
#include "mincyc/index_function.hpp"
#include "mincyc/mincycle.hpp"
#include "mincyc/oracle.hpp"
#include "mincyc/weights.hpp"
#include "mincyc/z2_algebra.hpp"

#endif
