#pragma once

#include "eigbound/framework/hilbert_triple.hpp"
#include "eigbound/framework/theorem.hpp"
