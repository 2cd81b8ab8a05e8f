#ifndef OCRP_OCRP_HPP
#define OCRP_OCRP_HPP

#include "chains.hpp"
#include "composition.hpp"
#include "matrix.hpp"
#include "montecarlo.hpp"
#include "polynomial.hpp"
#include "report.hpp"
#include "rng.hpp"
#include "scalar.hpp"
#include "semigroup.hpp"
#include "spectral.hpp"

#endif
