#pragma once

#include "binsum/bernoulli.hpp"
#include "binsum/binomial.hpp"
#include "binsum/checks.hpp"
#include "binsum/galois_ring.hpp"
#include "binsum/integers.hpp"
#include "binsum/multisection.hpp"
#include "binsum/residue_poly.hpp"
#include "binsum/version.hpp"
