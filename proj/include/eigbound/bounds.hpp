#pragma once

#include "eigbound/bounds/enclosure.hpp"
#include "eigbound/bounds/report.hpp"
