#pragma once

// Everything in one include.

#include "rz/bracket.hpp"
#include "rz/errors.hpp"
#include "rz/mpreal.hpp"
#include "rz/polynomial.hpp"
#include "rz/polyseq.hpp"
#include "rz/rootfinder.hpp"
#include "rz/scalar.hpp"
#include "rz/scan.hpp"
#include "rz/thetasolver.hpp"
#include "rz/witness.hpp"
#include "rz/io.hpp"
