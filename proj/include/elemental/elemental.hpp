#pragma once

#include "elemental/baselines.hpp"
#include "elemental/certificate.hpp"
#include "elemental/digamma.hpp"
#include "elemental/errors.hpp"
#include "elemental/estimators.hpp"
#include "elemental/gpd.hpp"
#include "elemental/ordered_sample.hpp"
#include "elemental/random.hpp"
#include "elemental/simulation.hpp"
#include "elemental/triangular.hpp"
#include "elemental/weights.hpp"
