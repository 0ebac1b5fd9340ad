#pragma once

#include "erodist/category.hpp"
#include "erodist/erosion.hpp"
#include "erodist/error.hpp"
#include "erodist/filtration.hpp"
#include "erodist/int_matrix.hpp"
#include "erodist/io.hpp"
#include "erodist/module.hpp"
#include "erodist/onedim.hpp"
#include "erodist/oracles.hpp"
#include "erodist/poset.hpp"
#include "erodist/quotient.hpp"
#include "erodist/rank_invariant.hpp"
#include "erodist/rational.hpp"
#include "erodist/smith.hpp"
