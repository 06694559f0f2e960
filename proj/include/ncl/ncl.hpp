#ifndef NCL_NCL_HPP
#define NCL_NCL_HPP

#include "ncl/artin.hpp"
#include "ncl/common.hpp"
#include "ncl/counting.hpp"
#include "ncl/elliptic.hpp"
#include "ncl/fq.hpp"
#include "ncl/intops.hpp"
#include "ncl/io.hpp"
#include "ncl/lfunction.hpp"
#include "ncl/motive.hpp"
#include "ncl/poly.hpp"
#include "ncl/riemann.hpp"
#include "ncl/series.hpp"
#include "ncl/verify.hpp"
#include "ncl/zeta.hpp"

#endif
