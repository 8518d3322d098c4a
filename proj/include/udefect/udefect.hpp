#pragma once

/// Umbrella header for the unitary-defect library.

#include "udefect/abelian.hpp"
#include "udefect/berezin.hpp"
#include "udefect/complexmat.hpp"
#include "udefect/defectcalc.hpp"
#include "udefect/errors.hpp"
#include "udefect/fourier.hpp"
#include "udefect/tables.hpp"
