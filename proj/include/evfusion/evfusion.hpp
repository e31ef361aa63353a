#pragma once

// Umbrella header for the evfusion library: belief fusion by referee
// functions over minterm-bitset lattices.

#include "evfusion/bba.hpp"
#include "evfusion/bitvec.hpp"
#include "evfusion/errors.hpp"
#include "evfusion/expr.hpp"
#include "evfusion/frame.hpp"
#include "evfusion/fusion.hpp"
#include "evfusion/lattice.hpp"
#include "evfusion/random.hpp"
#include "evfusion/referee.hpp"
#include "evfusion/scenario.hpp"
