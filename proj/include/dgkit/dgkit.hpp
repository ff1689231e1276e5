#pragma once

#include "dgkit/error.hpp"
#include "dgkit/zlinalg.hpp"
#include "dgkit/signs.hpp"
#include "dgkit/complexes.hpp"
#include "dgkit/random.hpp"
#include "dgkit/monoidal.hpp"
#include "dgkit/cones.hpp"
#include "dgkit/ell.hpp"
#include "dgkit/dgcat.hpp"
#include "dgkit/totals.hpp"
#include "dgkit/io.hpp"
#include "dgkit/acceptance.hpp"
