#pragma once

#include "eigbound/fem/assembly.hpp"
#include "eigbound/fem/kappa.hpp"
