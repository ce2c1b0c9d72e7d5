#pragma once

#include "affq/errors.hpp"
#include "affq/rational.hpp"
#include "affq/symbol.hpp"
#include "affq/lie_aff.hpp"
#include "affq/fourier.hpp"
#include "affq/grid.hpp"
#include "affq/quantize.hpp"
#include "affq/representation.hpp"
#include "affq/io.hpp"
#include "affq/verify.hpp"
